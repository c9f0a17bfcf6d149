#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ffdist/field.hpp"

namespace ffdist {

enum class Twist { Trivial, Quadratic };

struct CharSumResult {
  std::complex<double> value;
  std::optional<std::complex<double>> closed_form;
  std::optional<double> bound;
  std::uint64_t n_terms = 0;

  double tol() const { return tolerance(n_terms); }
  bool consistent() const {
    if (closed_form && std::abs(value - *closed_form) > tol()) return false;
    if (bound && std::abs(value) > *bound + tol()) return false;
    return true;
  }
};

/// G_a(psi, chi) = sum_{s != 0} psi(s) chi(a s), by direct summation.
CharSumResult gauss_sum(const FieldCtx& f, Elem a);

/// Closed form of G_1: (-1)^{l-1} sqrt(q) for p = 1 mod 4,
/// (-1)^{l-1} i^l sqrt(q) for p = 3 mod 4.
std::complex<double> gauss_explicit(const FieldCtx& f);

/// sum_s chi(a s^2) = psi(a) G_1 for a != 0.
CharSumResult square_char_sum(const FieldCtx& f, Elem a);

/// sum over alpha in F_q^k of chi(t alpha.alpha + beta.alpha); closed form
/// chi(||beta|| / (-4t)) psi(t)^k G_1^k. Requires t != 0.
CharSumResult quadratic_vector_sum(const FieldCtx& f, Elem t, const std::vector<Elem>& beta);

/// K(a) = sum_{s != 0} chi(a s^{-1} + s) phi(s); Weil bound 2 sqrt(q).
CharSumResult kloosterman(const FieldCtx& f, Elem a, Twist twist);

/// sum_t psi(s g(t)) for monic g given low-to-high; reported bound
/// (deg g - 1) sqrt(q). g must not be a perfect square (checked for
/// deg <= 4, trusted above that).
CharSumResult poly_char_sum(const FieldCtx& f, const std::vector<Elem>& g, Elem s);

/// Perfect-square test by coefficient matching, degrees up to 4.
bool is_square_poly(const FieldCtx& f, const std::vector<Elem>& g);

Elem poly_eval(const FieldCtx& f, const std::vector<Elem>& g, Elem t);

}  // namespace ffdist
