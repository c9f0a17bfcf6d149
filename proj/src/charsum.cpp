#include "ffdist/charsum.hpp"

#include <cmath>

namespace ffdist {

CharSumResult gauss_sum(const FieldCtx& f, Elem a) {
  std::complex<double> v = 0;
  for (Elem s = 1; s < f.q(); ++s) v += static_cast<double>(f.psi(s)) * f.chi(f.mul(a, s));
  CharSumResult r;
  r.value = v;
  r.n_terms = f.q() - 1;
  if (a == 0)
    r.closed_form = 0.0;
  else
    r.closed_form = static_cast<double>(f.psi(a)) * gauss_explicit(f);
  r.bound = std::sqrt(static_cast<double>(f.q()));
  return r;
}

std::complex<double> gauss_explicit(const FieldCtx& f) {
  double root = std::sqrt(static_cast<double>(f.q()));
  double sign = f.l() % 2 == 0 ? -1.0 : 1.0;  // (-1)^{l-1}
  if (f.p() % 4 == 1) return {sign * root, 0.0};
  // i^l cycles 1, i, -1, -i.
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return sign * ipow[f.l() % 4] * root;
}

CharSumResult square_char_sum(const FieldCtx& f, Elem a) {
  if (a == 0) throw std::invalid_argument("a must be nonzero");
  std::complex<double> v = 0;
  for (Elem s = 0; s < f.q(); ++s) v += f.chi(f.mul(a, f.mul(s, s)));
  CharSumResult r;
  r.value = v;
  r.n_terms = f.q();
  r.closed_form = static_cast<double>(f.psi(a)) * gauss_explicit(f);
  return r;
}

CharSumResult quadratic_vector_sum(const FieldCtx& f, Elem t, const std::vector<Elem>& beta) {
  if (t == 0) throw std::invalid_argument("t must be nonzero");
  const std::size_t k = beta.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= f.q();

  std::complex<double> v = 0;
  std::vector<Elem> alpha(k, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    Elem arg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      Elem aj = static_cast<Elem>(r % f.q());
      r /= f.q();
      arg = f.add(arg, f.add(f.mul(t, f.mul(aj, aj)), f.mul(beta[j], aj)));
    }
    v += f.chi(arg);
  }

  Elem nb = 0;
  for (Elem b : beta) nb = f.add(nb, f.mul(b, b));
  Elem arg = f.div(nb, f.neg(f.mul(4 % f.p(), t)));
  double psik = (f.psi(t) == -1 && k % 2 == 1) ? -1.0 : 1.0;
  std::complex<double> g = gauss_explicit(f);
  std::complex<double> gk = 1;
  for (std::size_t i = 0; i < k; ++i) gk *= g;

  CharSumResult res;
  res.value = v;
  res.n_terms = total;
  res.closed_form = f.chi(arg) * psik * gk;
  return res;
}

CharSumResult kloosterman(const FieldCtx& f, Elem a, Twist twist) {
  std::complex<double> v = 0;
  for (Elem s = 1; s < f.q(); ++s) {
    double phi = twist == Twist::Quadratic ? static_cast<double>(f.psi(s)) : 1.0;
    v += phi * f.chi(f.add(f.mul(a, f.inv(s)), s));
  }
  CharSumResult r;
  r.value = v;
  r.n_terms = f.q() - 1;
  r.bound = 2.0 * std::sqrt(static_cast<double>(f.q()));
  return r;
}

Elem poly_eval(const FieldCtx& f, const std::vector<Elem>& g, Elem t) {
  Elem v = 0;
  for (std::size_t i = g.size(); i-- > 0;) v = f.add(f.mul(v, t), g[i]);
  return v;
}

bool is_square_poly(const FieldCtx& f, const std::vector<Elem>& g) {
  std::size_t deg = g.size() - 1;
  if (deg % 2 == 1) return false;
  if (deg == 0) return f.psi(g[0]) >= 0;
  Elem half = f.inv(2 % f.p());
  if (deg == 2) {
    // (u + b)^2 with 2b = g[1].
    Elem b = f.mul(g[1], half);
    return g[0] == f.mul(b, b);
  }
  if (deg == 4) {
    // (u^2 + b u + c)^2: 2b = g[3], b^2 + 2c = g[2], 2bc = g[1], c^2 = g[0].
    Elem b = f.mul(g[3], half);
    Elem c = f.mul(f.sub(g[2], f.mul(b, b)), half);
    return g[1] == f.mul(2 % f.p(), f.mul(b, c)) && g[0] == f.mul(c, c);
  }
  throw std::invalid_argument("square detection implemented only for deg <= 4");
}

CharSumResult poly_char_sum(const FieldCtx& f, const std::vector<Elem>& g, Elem s) {
  if (g.size() < 2) throw std::invalid_argument("g must have positive degree");
  if (g.back() != 1) throw std::invalid_argument("g must be monic");
  std::size_t deg = g.size() - 1;
  if (deg <= 4 && is_square_poly(f, g))
    throw std::invalid_argument("g must not be a perfect square");

  std::complex<double> v = 0;
  for (Elem t = 0; t < f.q(); ++t) v += static_cast<double>(f.psi(f.mul(s, poly_eval(f, g, t))));
  CharSumResult r;
  r.value = v;
  r.n_terms = f.q();
  // e defaults to deg g; the true splitting-field root count only tightens this.
  r.bound = static_cast<double>(deg - 1) * std::sqrt(static_cast<double>(f.q()));
  return r;
}

}  // namespace ffdist
