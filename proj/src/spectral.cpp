#include "ffdist/spectral.hpp"

#include <cmath>
#include <random>

#include "ffdist/charsum.hpp"

namespace ffdist {

namespace {

// Applies the 1-d kernel K[k][m] = chi(sign * m k) along every axis.
void factored_passes(const VectorSpace& sp, CVec& data, bool conjugate) {
  const FieldCtx& f = *sp.field;
  const std::uint32_t q = f.q();
  const std::uint64_t n = sp.size();

  // One q x q kernel serves every axis.
  CVec kernel(static_cast<std::size_t>(q) * q);
  for (Elem k = 0; k < q; ++k)
    for (Elem m = 0; m < q; ++m) {
      Elem prod = f.mul(k, m);
      kernel[static_cast<std::size_t>(k) * q + m] = conjugate ? f.chi(f.neg(prod)) : f.chi(prod);
    }

  CVec fiber(q), out(q);
  std::uint64_t stride = 1;
  for (std::uint32_t axis = 0; axis < sp.dim; ++axis) {
    const std::uint64_t block = stride * q;
    for (std::uint64_t base = 0; base < n; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint32_t m = 0; m < q; ++m) fiber[m] = data[base + off + m * stride];
        for (std::uint32_t k = 0; k < q; ++k) {
          std::complex<double> acc = 0;
          const std::complex<double>* row = &kernel[static_cast<std::size_t>(k) * q];
          for (std::uint32_t m = 0; m < q; ++m) acc += row[m] * fiber[m];
          out[k] = acc;
        }
        for (std::uint32_t k = 0; k < q; ++k) data[base + off + k * stride] = out[k];
      }
    }
    stride = block;
  }
}

}  // namespace

Spectrum dft(const VectorSpace& sp, const CVec& f) {
  if (f.size() != sp.size()) throw std::invalid_argument("array length must be q^d");
  Spectrum s;
  s.q = sp.q();
  s.d = sp.dim;
  s.values = f;
  s.n_terms = sp.size();
  factored_passes(sp, s.values, /*conjugate=*/true);
  const double scale = 1.0 / static_cast<double>(sp.size());
  for (auto& v : s.values) v *= scale;
  return s;
}

Spectrum dft(const VectorSpace& sp, const PointSet& indicator) {
  if (indicator.universe() != sp.size()) throw std::invalid_argument("universe mismatch");
  CVec f(sp.size(), 0.0);
  for (std::uint64_t r : indicator.to_list()) f[r] = 1.0;
  return dft(sp, f);
}

CVec idft(const VectorSpace& sp, const Spectrum& F) {
  if (F.values.size() != sp.size()) throw std::invalid_argument("spectrum length must be q^d");
  CVec data = F.values;
  factored_passes(sp, data, /*conjugate=*/false);
  return data;
}

double plancherel_gap(const VectorSpace& sp, const CVec& f) {
  Spectrum F = dft(sp, f);
  double lhs = 0, rhs = 0;
  for (const auto& v : F.values) lhs += std::norm(v);
  for (const auto& v : f) rhs += std::norm(v);
  rhs /= static_cast<double>(sp.size());
  return std::abs(lhs - rhs);
}

double salem_constant(const VectorSpace& sp, const PointSet& u) {
  if (u.empty()) throw std::invalid_argument("U must be nonempty");
  Spectrum F = dft(sp, u);
  double maxv = 0;
  for (std::uint64_t r = 1; r < sp.size(); ++r) maxv = std::max(maxv, std::abs(F.values[r]));
  return static_cast<double>(sp.size()) * maxv / std::sqrt(static_cast<double>(u.size()));
}

std::complex<double> sphere_dft_reduced(const VectorSpace& sp, Elem t, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  const FieldCtx& f = *sp.field;
  const Elem nm = sp.norm(m);
  std::complex<double> g = gauss_explicit(f);
  std::complex<double> gd = 1;
  for (std::uint32_t i = 0; i < sp.dim; ++i) gd *= g;

  std::complex<double> sum = 0;
  const bool odd = sp.dim % 2 == 1;
  for (Elem s = 1; s < f.q(); ++s) {
    Elem arg = f.sub(f.div(nm, f.neg(f.mul(4 % f.p(), s))), f.mul(s, t));
    double w = odd ? static_cast<double>(f.psi(s)) : 1.0;
    sum += w * f.chi(arg);
  }
  double scale = 1.0 / (static_cast<double>(sp.size()) * f.q());
  return scale * gd * sum;
}

SphereDecayReport sphere_decay_report(const VectorSpace& sp, Elem t, std::uint32_t n_probe,
                                      std::uint64_t seed) {
  const FieldCtx& f = *sp.field;
  const std::uint64_t n = sp.size();

  // Transforms of every sphere at once; spheres partition the space.
  std::vector<Spectrum> hats(f.q());
  for (Elem c = 0; c < f.q(); ++c) hats[c] = dft(sp, sphere(sp, c));

  SphereDecayReport rep;
  rep.t = t;
  rep.decay_bound = 2.0 * std::pow(static_cast<double>(f.q()), -(sp.dim + 1) / 2.0);
  rep.zero_term = hats[t].values[0].real();

  for (std::uint64_t xi = 1; xi < n; ++xi)
    rep.max_nonzero_freq = std::max(rep.max_nonzero_freq, std::abs(hats[t].values[xi]));

  for (Elem a = 0; a < f.q(); ++a) {
    for (std::uint64_t xi = 1; xi < n; ++xi) {
      std::complex<double> s = 0;
      for (Elem c = 0; c < f.q(); ++c)
        if (c != a) s += hats[c].values[xi];
      rep.max_average_sum = std::max(rep.max_average_sum, std::abs(s));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
  for (std::uint32_t i = 0; i < n_probe; ++i) {
    std::uint64_t m = pick(rng);
    double diff = std::abs(hats[t].values[m] - sphere_dft_reduced(sp, t, m));
    rep.max_reduction_discrepancy = std::max(rep.max_reduction_discrepancy, diff);
  }

  double tol = tolerance(n);
  rep.decay_pass = t == 0 || rep.max_nonzero_freq <= rep.decay_bound + tol;
  rep.average_pass = rep.max_average_sum <= rep.decay_bound + tol;
  return rep;
}

}  // namespace ffdist
