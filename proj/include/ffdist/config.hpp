#pragma once

#include <optional>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

struct EdgeConstraint {
  std::uint32_t i = 0, j = 0;  // 1-based point indices, i < j
  Elem color = 0;              // a_{ij} in F_q^*
};

/// A k-point configuration template: prescribed nonzero distances on a
/// pair set J.
struct ConfigSpec {
  std::uint32_t k = 0;
  std::vector<EdgeConstraint> edges;

  ConfigSpec(std::uint32_t k_, std::vector<EdgeConstraint> edges_);
  std::uint32_t n() const { return static_cast<std::uint32_t>(edges.size()); }
};

/// Ordered k-tuples (x^1, ..., x^k) in E^k meeting every constraint;
/// `distinct` additionally requires pairwise-distinct points.
/// Depth-first with candidate generation from translated spheres.
std::uint64_t count_configs(const VectorSpace& sp, const PointSet& e, const ConfigSpec& spec,
                            bool distinct = false, std::uint64_t guard = 1000000000ull);

/// Same search, returning tuples (up to max_out; 0 = unlimited).
std::vector<std::vector<std::uint64_t>> list_configs(const VectorSpace& sp, const PointSet& e,
                                                     const ConfigSpec& spec, bool distinct,
                                                     std::size_t max_out);

/// |E|^k q^{-n}, the predicted count.
double predicted_count(const ConfigSpec& spec, std::uint64_t e_size, std::uint64_t q);

/// q^{d(k-1)/k + n/k}; requires 1 <= k-1 <= n <= d.
double threshold_size(std::uint32_t d, std::uint64_t q, std::uint32_t k, std::uint32_t n);

/// Full-J configuration with a_{ij} = (j-i)^2; rejects p <= k-1 where a
/// gap color would vanish.
ConfigSpec pseudo_ap_spec(const FieldCtx& f, std::uint32_t d, std::uint32_t k);

std::vector<std::vector<std::uint64_t>> find_pseudo_ap(const VectorSpace& sp, const PointSet& e,
                                                       std::uint32_t k, std::size_t max_out);

/// A nonzero z with ||z|| = 0 in F_q^dim, if one exists
/// (dim >= 3 always, dim = 2 iff q = 1 mod 4).
std::optional<std::uint64_t> null_vector(const FieldCtx& f, std::uint32_t dim);

struct PseudoRandomReport {
  std::uint64_t vertex_count = 0;
  std::vector<std::uint64_t> edge_counts;  // per color c = 1..q-1: q^d |S_c| / 2
  double uniformity_ratio = 0;             // max/min of the per-color edge counts
  double non_edge_fraction = 0;            // zero-distance pairs over all pairs
};

PseudoRandomReport pseudo_random_report(const VectorSpace& sp);

}  // namespace ffdist
