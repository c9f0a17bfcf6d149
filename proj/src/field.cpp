#include "ffdist/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ffdist {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low-to-high, over Z_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g monic nonconstant.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dg; ++i) {
        std::uint64_t sub = static_cast<std::uint64_t>(lead) * g[i] % p;
        std::uint64_t cur = f[shift + i];
        f[shift + i] = static_cast<std::uint32_t>((cur + p - sub) % p);
      }
    }
    f.pop_back();
    trim(f);
    if (f.size() <= dg) break;
  }
  trim(f);
  return f;
}

// Irreducibility over Z_p by trial division with all monic polys of
// degree <= deg/2. Fine at the field sizes this tool supports.
bool irreducible(const Poly& g, std::uint32_t p) {
  const std::size_t deg = g.size() - 1;
  if (deg < 1) return false;
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly div(dd + 1, 0);
      div[dd] = 1;
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < dd; ++i) {
        div[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      Poly r = poly_mod(g, div, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t l,
                        std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (p == 2) throw std::invalid_argument("p must be odd");
  if (l < 1) throw std::invalid_argument("l must be positive");

  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < l; ++i) {
    q *= p;
    if (q > (1ull << 30)) throw std::invalid_argument("field too large");
  }

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.l_ = l;
  ctx.q_ = static_cast<std::uint32_t>(q);

  if (l == 1) {
    if (modulus && !(modulus->size() == 2 && (*modulus)[1] % p == 1))
      throw std::invalid_argument("modulus for l=1 must be monic linear");
  } else if (modulus) {
    Poly m = *modulus;
    if (m.size() != l + 1) throw std::invalid_argument("modulus must have degree l");
    for (auto& c : m) {
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (m.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!irreducible(m, p)) throw std::invalid_argument("modulus is reducible over Z_p");
    ctx.modulus_ = m;
  } else {
    // Lexicographically smallest monic irreducible of degree l,
    // coefficients compared low-degree-first.
    bool found = false;
    std::uint64_t count = q;  // p^l candidates for the low coefficients
    for (std::uint64_t idx = 0; idx < count && !found; ++idx) {
      Poly m(l + 1, 0);
      m[l] = 1;
      std::uint64_t v = idx;
      for (std::uint32_t j = 0; j < l; ++j) {
        // c_0 is the most significant digit of idx: lex order, c_0 first.
        m[l - 1 - j] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (irreducible(m, p)) {
        ctx.modulus_ = m;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");
  }

  ctx.build_tables();
  return ctx;
}

FieldCtx FieldCtx::from_q(std::uint64_t q) {
  if (q < 3) throw std::invalid_argument("q must be an odd prime power >= 3");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  std::uint32_t l = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++l;
  }
  if (r != 1) throw std::invalid_argument("q is not a prime power");
  return make(static_cast<std::uint32_t>(p), l);
}

Elem FieldCtx::add(Elem a, Elem b) const {
  check(a);
  check(b);
  if (l_ == 1) return (a + b) % p_;
  Elem out = 0, scale = 1;
  for (std::uint32_t j = 0; j < l_; ++j) {
    std::uint32_t ca = a % p_, cb = b % p_;
    out += (ca + cb) % p_ * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem FieldCtx::neg(Elem a) const {
  check(a);
  if (l_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, scale = 1;
  for (std::uint32_t j = 0; j < l_; ++j) {
    std::uint32_t c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::mul_poly(Elem a, Elem b) const {
  if (l_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  std::uint32_t ca[16], cb[16];
  std::uint64_t prod[32] = {0};
  for (std::uint32_t j = 0; j < l_; ++j) {
    ca[j] = a % p_;
    a /= p_;
    cb[j] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < l_; ++i)
    for (std::uint32_t j = 0; j < l_; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
  // Fold t^{l+j} down using the precomputed reductions.
  Elem out = 0;
  std::uint64_t acc[16] = {0};
  for (std::uint32_t j = 0; j < l_; ++j) acc[j] = prod[j] % p_;
  for (std::uint32_t j = 0; j + 1 < l_; ++j) {
    std::uint64_t hi = prod[l_ + j] % p_;
    if (hi == 0) continue;
    Elem red = reduction_[j];
    for (std::uint32_t i = 0; i < l_; ++i) {
      acc[i] += hi * (red % p_);
      red /= p_;
    }
  }
  Elem scale = 1;
  for (std::uint32_t j = 0; j < l_; ++j) {
    out += static_cast<Elem>(acc[j] % p_) * scale;
    scale *= p_;
  }
  return out;
}

Elem FieldCtx::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  return mul_poly(a, b);
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  check(a);
  Elem r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Elem FieldCtx::inv(Elem a) const {
  check(a);
  if (a == 0) throw std::domain_error("inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

Elem FieldCtx::from_int(std::int64_t n) const {
  std::int64_t m = n % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<Elem>(m);
}

Elem FieldCtx::element_at(std::uint64_t rank) const {
  if (rank >= q_) throw std::out_of_range("element rank out of range");
  return static_cast<Elem>(rank);
}

std::vector<std::uint32_t> FieldCtx::coeffs(Elem a) const {
  check(a);
  std::vector<std::uint32_t> c(l_);
  for (std::uint32_t j = 0; j < l_; ++j) {
    c[j] = a % p_;
    a /= p_;
  }
  return c;
}

Elem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > l_) throw std::invalid_argument("too many coefficients");
  Elem out = 0, scale = 1;
  for (std::uint32_t j = 0; j < l_; ++j) {
    std::uint32_t cj = j < c.size() ? c[j] : 0;
    if (cj >= p_) throw std::invalid_argument("coefficient out of range");
    out += cj * scale;
    scale *= p_;
  }
  return out;
}

void FieldCtx::build_tables() {
  // t^{l+j} mod modulus for j in [0, l-1), as ranks.
  if (l_ > 1) {
    reduction_.resize(l_ - 1);
    Poly m = modulus_;
    for (std::uint32_t j = 0; j + 1 < l_; ++j) {
      Poly f(l_ + j + 1, 0);
      f[l_ + j] = 1;
      Poly r = poly_mod(f, m, p_);
      Elem rank = 0, scale = 1;
      for (std::uint32_t i = 0; i < l_; ++i) {
        rank += (i < r.size() ? r[i] : 0) * scale;
        scale *= p_;
      }
      reduction_[j] = rank;
    }
  }

  if (q_ <= kMulTableLimit) {
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = a; b < q_; ++b) {
        Elem v = mul_poly(a, b);
        mul_table_[static_cast<std::size_t>(a) * q_ + b] = v;
        mul_table_[static_cast<std::size_t>(b) * q_ + a] = v;
      }
  }
  if (q_ <= kInvTableLimit) {
    inv_table_.assign(q_, 0);
    for (Elem a = 1; a < q_; ++a) inv_table_[a] = pow(a, q_ - 2);
  }

  trace_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    Elem t = 0, x = a;
    std::uint64_t pe = 1;
    for (std::uint32_t j = 0; j < l_; ++j) {
      t = add(t, pow(x, pe));
      pe *= p_;
    }
    trace_[a] = t;  // lands in the prime subfield, rank < p
  }

  psi_.assign(q_, -1);
  psi_[0] = 0;
  for (Elem b = 1; b < q_; ++b) psi_[mul(b, b)] = 1;

  chi_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    double ang = 2.0 * std::numbers::pi * trace_[a] / p_;
    chi_[a] = {std::cos(ang), std::sin(ang)};
  }
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " (p=" << p_ << ", l=" << l_;
  if (l_ > 1) {
    os << ", modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
      if (i) os << ",";
      os << modulus_[i];
    }
  }
  os << ")";
  return os.str();
}

}  // namespace ffdist
