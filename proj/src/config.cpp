#include "ffdist/config.hpp"

#include <algorithm>
#include <cmath>

namespace ffdist {

ConfigSpec::ConfigSpec(std::uint32_t k_, std::vector<EdgeConstraint> edges_)
    : k(k_), edges(std::move(edges_)) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (edges.size() > static_cast<std::size_t>(k) * (k - 1) / 2)
    throw std::invalid_argument("more constraints than point pairs");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto& ec : edges) {
    if (ec.i >= ec.j) std::swap(ec.i, ec.j);
    if (ec.i == ec.j) throw std::invalid_argument("diagonal pair in J");
    if (ec.i < 1 || ec.j > k) throw std::invalid_argument("pair index out of range");
    if (ec.color == 0) throw std::invalid_argument("edge color must be nonzero");
    auto key = std::make_pair(ec.i, ec.j);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw std::invalid_argument("duplicate pair in J");
    seen.push_back(key);
  }
}

namespace {

struct Search {
  const VectorSpace& sp;
  const PointSet& e;
  const ConfigSpec& spec;
  bool distinct;
  std::uint64_t guard;

  std::vector<std::uint64_t> e_list;
  // constraints[m] = (earlier index i-1, color) pairs binding point m (0-based).
  std::vector<std::vector<std::pair<std::uint32_t, Elem>>> constraints;
  // Sphere point lists per color actually used.
  std::vector<std::vector<std::uint64_t>> sphere_pts;  // indexed by color rank
  std::vector<bool> sphere_built;

  std::vector<std::uint64_t> chosen;
  std::uint64_t count = 0;
  std::uint64_t visited = 0;
  std::vector<std::vector<std::uint64_t>>* out = nullptr;
  std::size_t max_out = 0;

  Search(const VectorSpace& s, const PointSet& ee, const ConfigSpec& cs, bool dist,
         std::uint64_t g)
      : sp(s), e(ee), spec(cs), distinct(dist), guard(g) {
    e_list = e.to_list();
    constraints.resize(spec.k);
    for (const auto& ec : spec.edges)
      constraints[ec.j - 1].push_back({ec.i - 1, ec.color});
    sphere_pts.resize(sp.q());
    sphere_built.assign(sp.q(), false);
  }

  const std::vector<std::uint64_t>& sphere_list(Elem c) {
    if (!sphere_built[c]) {
      sphere_pts[c] = sphere(sp, c).to_list();
      sphere_built[c] = true;
    }
    return sphere_pts[c];
  }

  bool satisfies(std::uint32_t m, std::uint64_t x) const {
    if (distinct) {
      for (std::uint64_t prev : chosen)
        if (prev == x) return false;
    }
    for (const auto& [i, color] : constraints[m])
      if (sp.norm(sp.sub(chosen[i], x)) != color) return false;
    return true;
  }

  void dfs(std::uint32_t m) {
    if (m == spec.k) {
      ++count;
      if (out && (max_out == 0 || out->size() < max_out)) out->push_back(chosen);
      return;
    }
    if (out && max_out != 0 && out->size() >= max_out) return;

    const auto& cons = constraints[m];
    if (cons.empty()) {
      for (std::uint64_t x : e_list) {
        if (++visited > guard) throw GuardError("configuration search guard exceeded");
        if (!satisfies(m, x)) continue;
        chosen.push_back(x);
        dfs(m + 1);
        chosen.pop_back();
      }
      return;
    }
    // Generate candidates from the tightest translated sphere, then filter.
    std::size_t best = 0;
    for (std::size_t c = 1; c < cons.size(); ++c)
      if (sphere_list(cons[c].second).size() < sphere_list(cons[best].second).size()) best = c;
    std::uint64_t center = chosen[cons[best].first];
    for (std::uint64_t u : sphere_list(cons[best].second)) {
      if (++visited > guard) throw GuardError("configuration search guard exceeded");
      std::uint64_t x = sp.add(center, u);
      if (!e.contains(x) || !satisfies(m, x)) continue;
      chosen.push_back(x);
      dfs(m + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::uint64_t count_configs(const VectorSpace& sp, const PointSet& e, const ConfigSpec& spec,
                            bool distinct, std::uint64_t guard) {
  if (e.universe() != sp.size()) throw std::invalid_argument("universe mismatch");
  Search s(sp, e, spec, distinct, guard);
  s.dfs(0);
  return s.count;
}

std::vector<std::vector<std::uint64_t>> list_configs(const VectorSpace& sp, const PointSet& e,
                                                     const ConfigSpec& spec, bool distinct,
                                                     std::size_t max_out) {
  if (e.universe() != sp.size()) throw std::invalid_argument("universe mismatch");
  std::vector<std::vector<std::uint64_t>> out;
  Search s(sp, e, spec, distinct, 1000000000ull);
  s.out = &out;
  s.max_out = max_out;
  s.dfs(0);
  return out;
}

double predicted_count(const ConfigSpec& spec, std::uint64_t e_size, std::uint64_t q) {
  return std::pow(static_cast<double>(e_size), spec.k) *
         std::pow(static_cast<double>(q), -static_cast<double>(spec.n()));
}

double threshold_size(std::uint32_t d, std::uint64_t q, std::uint32_t k, std::uint32_t n) {
  if (!(k >= 2 && k - 1 <= n && n <= d))
    throw std::invalid_argument("requires 1 <= k-1 <= n <= d");
  double exponent = static_cast<double>(d) * (k - 1) / k + static_cast<double>(n) / k;
  return std::pow(static_cast<double>(q), exponent);
}

ConfigSpec pseudo_ap_spec(const FieldCtx& f, std::uint32_t /*d*/, std::uint32_t k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (f.p() <= k - 1)
    throw std::invalid_argument(
        "p <= k-1: some gap (j-i)^2 vanishes mod p and leaves the color set");
  std::vector<EdgeConstraint> edges;
  for (std::uint32_t i = 1; i <= k; ++i)
    for (std::uint32_t j = i + 1; j <= k; ++j) {
      std::uint32_t gap = j - i;
      edges.push_back({i, j, f.from_int(static_cast<std::int64_t>(gap) * gap)});
    }
  return ConfigSpec(k, std::move(edges));
}

std::vector<std::vector<std::uint64_t>> find_pseudo_ap(const VectorSpace& sp, const PointSet& e,
                                                       std::uint32_t k, std::size_t max_out) {
  ConfigSpec spec = pseudo_ap_spec(*sp.field, sp.dim, k);
  return list_configs(sp, e, spec, /*distinct=*/true, max_out);
}

std::optional<std::uint64_t> null_vector(const FieldCtx& f, std::uint32_t dim) {
  VectorSpace sp(f, dim);
  for (std::uint64_t r = 1; r < sp.size(); ++r)
    if (sp.norm(r) == 0) return r;
  return std::nullopt;
}

PseudoRandomReport pseudo_random_report(const VectorSpace& sp) {
  const FieldCtx& f = *sp.field;
  PseudoRandomReport rep;
  rep.vertex_count = sp.size();
  rep.edge_counts.reserve(f.q() - 1);
  for (Elem c = 1; c < f.q(); ++c)
    rep.edge_counts.push_back(sp.size() * sphere_size_formula(sp, c) / 2);
  auto [mn, mx] = std::minmax_element(rep.edge_counts.begin(), rep.edge_counts.end());
  rep.uniformity_ratio = static_cast<double>(*mx) / static_cast<double>(*mn);

  double v = static_cast<double>(sp.size());
  double zero_pairs = v * static_cast<double>(sphere_size_formula(sp, 0) - 1) / 2.0;
  rep.non_edge_fraction = zero_pairs / (v * (v - 1) / 2.0);
  return rep;
}

}  // namespace ffdist
