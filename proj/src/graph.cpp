#include "ffdist/graph.hpp"

#include <cmath>

#include "ffdist/spectral.hpp"

namespace ffdist {

CayleySpec::CayleySpec(const VectorSpace& sp, PointSet conn)
    : space(sp), connection(std::move(conn)) {
  if (connection.universe() != space.size()) throw std::invalid_argument("universe mismatch");
  if (connection.contains(0)) throw std::invalid_argument("connection set contains 0");
  for (std::uint64_t r : connection.to_list())
    if (!connection.contains(space.neg(r)))
      throw std::invalid_argument("connection set is not symmetric");
}

CayleySpec connection_sphere(const VectorSpace& sp, Elem c) {
  if (c == 0) throw std::invalid_argument("color must be nonzero");
  return CayleySpec(sp, sphere(sp, c));
}

BfsProfile bfs_from_origin(const CayleySpec& spec) {
  const VectorSpace& sp = spec.space;
  const std::uint64_t n = sp.size();
  const std::vector<std::uint64_t> conn = spec.connection.to_list();

  PointSet visited(n);
  visited.insert(0);
  std::vector<std::uint64_t> layer{0};

  BfsProfile prof;
  prof.layer_sizes.push_back(1);
  prof.reached = 1;

  while (!layer.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t v : layer) {
      for (std::uint64_t u : conn) {
        std::uint64_t w = sp.add(v, u);
        if (!visited.contains(w)) {
          visited.insert(w);
          next.push_back(w);
        }
      }
    }
    if (next.empty()) break;
    prof.layer_sizes.push_back(next.size());
    prof.reached += next.size();
    layer = std::move(next);
  }

  if (prof.reached == n)
    prof.eccentricity = static_cast<std::uint32_t>(prof.layer_sizes.size() - 1);
  return prof;
}

std::optional<std::uint32_t> diameter(const CayleySpec& spec) {
  return bfs_from_origin(spec).eccentricity;
}

NuResult nu_count(const VectorSpace& sp, const PointSet& e, const PointSet& f,
                  const PointSet& u) {
  if (e.universe() != sp.size() || f.universe() != sp.size() || u.universe() != sp.size())
    throw std::invalid_argument("dimension mismatch");

  NuResult res;
  const std::vector<std::uint64_t> fe = e.to_list();
  const std::vector<std::uint64_t> ff = f.to_list();
  for (std::uint64_t x : fe)
    for (std::uint64_t y : ff)
      if (u.contains(sp.sub(x, y))) ++res.count;

  res.main_term = static_cast<double>(e.size()) * static_cast<double>(f.size()) *
                  static_cast<double>(u.size()) / static_cast<double>(sp.size());
  double k = salem_constant(sp, u);
  res.error_bound = k * std::sqrt(static_cast<double>(u.size()) * e.size() * f.size());
  return res;
}

std::uint64_t nu_count_translates(const VectorSpace& sp, const PointSet& e, const PointSet& f,
                                  const PointSet& u) {
  std::uint64_t total = 0;
  for (std::uint64_t t : u.to_list()) total += e.intersect_count(f.translated(sp, t));
  return total;
}

bool diameter_claim_holds(std::uint32_t d, std::uint32_t q, std::optional<std::uint32_t> diam) {
  if (d >= 4) return diam == 2u;
  if (d == 3) return diam == 2u || diam == 3u;
  if (d == 2) {
    if (q >= 5 && diam == 2u) return false;
    if (q != 3 && q != 5 && q != 9 && q != 13) return diam == 3u;
    return true;  // q in {3,5,9,13}: exploratory, no sharp claim
  }
  return true;
}

std::vector<DiameterRow> diameter_report(std::uint32_t d, const std::vector<std::uint32_t>& qs) {
  std::vector<DiameterRow> rows;
  for (std::uint32_t qv : qs) {
    FieldCtx f = FieldCtx::from_q(qv);
    VectorSpace sp(f, d);
    for (Elem c = 1; c < f.q(); ++c) {
      CayleySpec spec = connection_sphere(sp, c);
      DiameterRow row;
      row.q = qv;
      row.color = c;
      row.connection_size = spec.connection.size();
      row.diam = diameter(spec);
      row.salem = salem_constant(sp, spec.connection);
      row.salem_size_threshold = std::pow(static_cast<double>(qv), 2.0 * d / 3.0);
      row.claims_pass = diameter_claim_holds(d, qv, row.diam);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ffdist
