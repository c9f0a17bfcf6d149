#pragma once

#include <complex>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

using CVec = std::vector<std::complex<double>>;

/// Fourier transform of a function on F_q^d, indexed by frequency rank.
/// Normalization: forward carries q^{-d}, inverse carries no factor, so
/// f_hat(xi) = q^{-d} sum_x f(x) chi(-x.xi) and f(x) = sum_xi chi(x.xi) f_hat(xi).
struct Spectrum {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  CVec values;
  std::uint64_t n_terms = 0;  // tolerance budget of the computation
};

/// Factored transform: d passes of the one-dimensional q x q character
/// matrix, O(d q^{d+1}).
Spectrum dft(const VectorSpace& sp, const CVec& f);
Spectrum dft(const VectorSpace& sp, const PointSet& indicator);

CVec idft(const VectorSpace& sp, const Spectrum& F);

/// |sum_xi |f_hat|^2 - q^{-d} sum_x |f|^2|.
double plancherel_gap(const VectorSpace& sp, const CVec& f);

/// K(U) = q^d max_{xi != 0} |U_hat(xi)| / |U|^{1/2}, the least admissible
/// Salem constant for U.
double salem_constant(const VectorSpace& sp, const PointSet& u);

/// One-dimensional reduction of the sphere transform: for m != 0,
/// S_t_hat(m) = q^{-d-1} G_1^d sum_{s != 0} chi(||m||/(-4s) - s t) psi^d(s).
std::complex<double> sphere_dft_reduced(const VectorSpace& sp, Elem t, std::uint64_t m);

struct SphereDecayReport {
  Elem t = 0;
  double max_nonzero_freq = 0;      // max_{xi != 0} |S_t_hat(xi)|
  double decay_bound = 0;           // 2 q^{-(d+1)/2}
  double max_average_sum = 0;       // max over excluded a, xi != 0 of |sum_{t != a} S_t_hat(xi)|
  double zero_term = 0;             // S_t_hat(0) = q^{-d} |S_t|
  double max_reduction_discrepancy = 0;  // DFT vs one-dimensional reduction
  bool decay_pass = false;
  bool average_pass = false;
};

/// Checks eq-decay / averaged-decay bounds and cross-checks the reduced
/// evaluation against the full DFT at n_probe seeded frequencies.
SphereDecayReport sphere_decay_report(const VectorSpace& sp, Elem t, std::uint32_t n_probe = 20,
                                      std::uint64_t seed = 1);

}  // namespace ffdist
