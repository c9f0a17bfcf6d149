#pragma once

#include <optional>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

/// Cayley graph on (F_q^d, +): x ~ x + u for u in the connection set,
/// which must be symmetric and exclude 0.
struct CayleySpec {
  VectorSpace space;
  PointSet connection;

  CayleySpec(const VectorSpace& sp, PointSet conn);
};

/// Distance graph for a single color: connection set S_c, c != 0.
CayleySpec connection_sphere(const VectorSpace& sp, Elem c);

struct BfsProfile {
  std::vector<std::uint64_t> layer_sizes;      // layer 0 is {origin}
  std::optional<std::uint32_t> eccentricity;   // nullopt when disconnected
  std::uint64_t reached = 0;
};

/// Layered sumset expansion from the origin; by vertex transitivity the
/// eccentricity of the origin is the diameter.
BfsProfile bfs_from_origin(const CayleySpec& spec);

/// Diameter per color; nullopt = infinite (disconnected).
std::optional<std::uint32_t> diameter(const CayleySpec& spec);

struct NuResult {
  std::uint64_t count = 0;    // |{(x,y) in E x F : x - y in U}|
  double main_term = 0;       // |E||F||U| q^{-d}
  double error_bound = 0;     // K(U) (|U||E||F|)^{1/2}
};

/// Exact pair count with the spectral main term / error budget attached.
NuResult nu_count(const VectorSpace& sp, const PointSet& e, const PointSet& f,
                  const PointSet& u);

/// Independent route: sum_{u in U} |E cap (F + u)|.
std::uint64_t nu_count_translates(const VectorSpace& sp, const PointSet& e, const PointSet& f,
                                  const PointSet& u);

struct DiameterRow {
  std::uint32_t q = 0;
  Elem color = 0;
  std::optional<std::uint32_t> diam;
  std::uint64_t connection_size = 0;
  double salem = 0;                 // Salem constant of the connection sphere
  double salem_size_threshold = 0;  // q^{2d/3}
  bool claims_pass = true;          // sharp-diameter claims for this (d, q)
};

/// Per-(q, color) diameters with Salem diagnostics and claim flags.
std::vector<DiameterRow> diameter_report(std::uint32_t d, const std::vector<std::uint32_t>& qs);

/// The sharp-diameter claims at one cell; exploratory cells return true.
bool diameter_claim_holds(std::uint32_t d, std::uint32_t q, std::optional<std::uint32_t> diam);

}  // namespace ffdist
