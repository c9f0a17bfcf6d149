#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffdist {

/// Element of F_q, identified by its rank in [0, q).
/// rank(a) = sum_j c_j p^j where a = sum_j c_j t^j in Z_p[t]/(modulus).
using Elem = std::uint32_t;

/// Immutable description of the finite field F_q, q = p^l with p an odd
/// prime. All arithmetic is exposed as pure functions of (ctx, ranks).
/// Character and trace values are precomputed into rank-indexed tables.
class FieldCtx {
 public:
  /// Builds F_{p^l}. If no modulus is given the lexicographically smallest
  /// monic irreducible of degree l is chosen (low-degree coefficients
  /// compared first). Modulus coefficients run low-to-high and must be
  /// monic of degree l.
  static FieldCtx make(std::uint32_t p, std::uint32_t l,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Factors q = p^l and builds the field with the default modulus.
  static FieldCtx from_q(std::uint64_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t l() const { return l_; }
  std::uint32_t q() const { return q_; }
  /// Modulus coefficients, length l+1, low-to-high (empty for l = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws on a = 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Embeds an integer through the prime subfield (value mod p).
  Elem from_int(std::int64_t n) const;

  /// Tr(a) = sum_{j<l} a^{p^j}, landing in {0, ..., p-1}.
  std::uint32_t trace(Elem a) const { return trace_[check(a)]; }

  /// Canonical additive character chi(a) = exp(2 pi i trace(a) / p).
  std::complex<double> chi(Elem a) const { return chi_[check(a)]; }

  /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at 0.
  int psi(Elem a) const { return psi_[check(a)]; }

  Elem element_at(std::uint64_t rank) const;
  std::uint64_t index_of(Elem a) const { return check(a); }

  /// Coefficient vector of a over Z_p, length l, low-to-high.
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;

  std::string describe() const;

 private:
  FieldCtx() = default;
  void build_tables();
  Elem mul_poly(Elem a, Elem b) const;
  Elem check(Elem a) const {
    if (a >= q_) throw std::out_of_range("element rank out of range");
    return a;
  }

  std::uint32_t p_ = 0, l_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;       // length l+1, monic; empty for l=1
  std::vector<std::uint32_t> reduction_;     // t^{l+j} mod modulus, j in [0, l-1), each as rank
  std::vector<Elem> mul_table_;              // q*q when q <= kMulTableLimit
  std::vector<Elem> inv_table_;              // size q when q <= kInvTableLimit
  std::vector<std::uint32_t> trace_;
  std::vector<int> psi_;
  std::vector<std::complex<double>> chi_;

  static constexpr std::uint32_t kMulTableLimit = 1024;
  static constexpr std::uint32_t kInvTableLimit = 1u << 16;
};

bool is_prime(std::uint64_t n);

/// Error comparison budget for sums of n unit-modulus terms.
inline double tolerance(std::uint64_t n_terms) {
  double eps = static_cast<double>(n_terms) * 3.5527136788005009e-15;  // n * 2^-48
  return eps > 1e-6 ? eps : 1e-6;
}

/// Resource guards exceeded without override.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ffdist
