#include "ffdist/geometry.hpp"

#include <bit>
#include <cmath>

namespace ffdist {

std::uint64_t VectorSpace::rank(const std::vector<Elem>& c) const {
  if (c.size() != dim) throw std::invalid_argument("coordinate count mismatch");
  std::uint64_t r = 0;
  for (std::uint32_t j = dim; j-- > 0;) {
    if (c[j] >= q()) throw std::out_of_range("coordinate out of range");
    r = r * q() + c[j];
  }
  return r;
}

std::vector<Elem> VectorSpace::coords(std::uint64_t r) const {
  std::vector<Elem> c(dim);
  coords_into(r, c.data());
  return c;
}

void VectorSpace::coords_into(std::uint64_t r, Elem* out) const {
  for (std::uint32_t j = 0; j < dim; ++j) {
    out[j] = static_cast<Elem>(r % q());
    r /= q();
  }
}

std::uint64_t VectorSpace::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0, scale = 1;
  for (std::uint32_t j = 0; j < dim; ++j) {
    r += static_cast<std::uint64_t>(field->add(static_cast<Elem>(a % q()),
                                               static_cast<Elem>(b % q()))) *
         scale;
    a /= q();
    b /= q();
    scale *= q();
  }
  return r;
}

std::uint64_t VectorSpace::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t VectorSpace::neg(std::uint64_t a) const {
  std::uint64_t r = 0, scale = 1;
  for (std::uint32_t j = 0; j < dim; ++j) {
    r += static_cast<std::uint64_t>(field->neg(static_cast<Elem>(a % q()))) * scale;
    a /= q();
    scale *= q();
  }
  return r;
}

Elem VectorSpace::norm(std::uint64_t r) const {
  Elem n = 0;
  for (std::uint32_t j = 0; j < dim; ++j) {
    Elem c = static_cast<Elem>(r % q());
    n = field->add(n, field->mul(c, c));
    r /= q();
  }
  return n;
}

Elem VectorSpace::dot(std::uint64_t a, std::uint64_t b) const {
  Elem n = 0;
  for (std::uint32_t j = 0; j < dim; ++j) {
    n = field->add(n, field->mul(static_cast<Elem>(a % q()), static_cast<Elem>(b % q())));
    a /= q();
    b /= q();
  }
  return n;
}

PointSet PointSet::full(std::uint64_t universe) {
  PointSet s(universe);
  for (std::uint64_t r = 0; r < universe; ++r) s.insert(r);
  return s;
}

std::vector<std::uint64_t> PointSet::to_list() const {
  std::vector<std::uint64_t> out;
  out.reserve(card_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      int b = std::countr_zero(word);
      out.push_back((static_cast<std::uint64_t>(w) << 6) + b);
      word &= word - 1;
    }
  }
  return out;
}

std::uint64_t PointSet::intersect_count(const PointSet& other) const {
  if (universe_ != other.universe_) throw std::invalid_argument("universe mismatch");
  std::uint64_t n = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) n += std::popcount(bits_[w] & other.bits_[w]);
  return n;
}

PointSet PointSet::translated(const VectorSpace& sp, std::uint64_t u) const {
  if (universe_ != sp.size()) throw std::invalid_argument("universe mismatch");
  PointSet out(universe_);
  for (std::uint64_t r : to_list()) out.insert(sp.add(r, u));
  return out;
}

PointSet sphere(const VectorSpace& sp, Elem t) {
  PointSet s(sp.size());
  for (std::uint64_t r = 0; r < sp.size(); ++r)
    if (sp.norm(r) == t) s.insert(r);
  return s;
}

std::uint64_t sphere_size_formula(const VectorSpace& sp, Elem t) {
  const FieldCtx& f = *sp.field;
  const std::uint64_t q = f.q();
  const std::uint32_t d = sp.dim;
  auto qpow = [&](std::uint32_t e) {
    std::uint64_t v = 1;
    while (e--) v *= q;
    return v;
  };
  const Elem minus_one = f.neg(1);
  std::int64_t out;
  if (d % 2 == 0) {
    // psi((-1)^{d/2}) and, at t = 0, the real value of G_1^d = q^{d/2} psi((-1)^{d/2}).
    std::int64_t sign = (d / 2) % 2 == 0 ? 1 : f.psi(minus_one);
    if (t != 0)
      out = static_cast<std::int64_t>(qpow(d - 1)) -
            static_cast<std::int64_t>(qpow((d - 2) / 2)) * sign;
    else
      out = static_cast<std::int64_t>(qpow(d - 1)) +
            static_cast<std::int64_t>(q - 1) * static_cast<std::int64_t>(qpow(d / 2 - 1)) * sign;
  } else if (t == 0) {
    out = static_cast<std::int64_t>(qpow(d - 1));
  } else {
    Elem arg = ((d - 1) / 2) % 2 == 0 ? t : f.mul(minus_one, t);
    out = static_cast<std::int64_t>(qpow(d - 1)) +
          static_cast<std::int64_t>(qpow((d - 1) / 2)) * f.psi(arg);
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t sphere_size_convolution(const VectorSpace& sp, Elem t) {
  const FieldCtx& f = *sp.field;
  const std::uint32_t q = f.q();
  // counts[a] = #{x in F_q : x^2 = a} = 1 + psi(a).
  std::vector<std::uint64_t> cur(q, 0);
  for (Elem a = 0; a < q; ++a) cur[a] = 1 + f.psi(a);
  for (std::uint32_t step = 1; step < sp.dim; ++step) {
    std::vector<std::uint64_t> next(q, 0);
    for (Elem a = 0; a < q; ++a) {
      if (cur[a] == 0) continue;
      for (Elem b = 0; b < q; ++b) {
        std::uint64_t nb = 1 + f.psi(b);
        if (nb) next[f.add(a, b)] += cur[a] * nb;
      }
    }
    cur = std::move(next);
  }
  return cur[t];
}

std::uint64_t pair_count(const VectorSpace& sp, Elem t) {
  return sp.size() * sphere_size_formula(sp, t);
}

std::uint64_t sphere_intersection(const VectorSpace& sp, Elem t, std::uint64_t x) {
  if (t == 0) throw std::invalid_argument("t must be nonzero");
  if (x == 0) throw std::invalid_argument("x must be nonzero");
  PointSet s = sphere(sp, t);
  return s.intersect_count(s.translated(sp, x));
}

double sphere_intersection_formula(const VectorSpace& sp, Elem t, std::uint64_t x) {
  if (t == 0) throw std::invalid_argument("t must be nonzero");
  if (x == 0) throw std::invalid_argument("x must be nonzero");
  const FieldCtx& f = *sp.field;
  const double q = f.q();
  const std::uint32_t d = sp.dim;
  const Elem minus_one = f.neg(1);
  const double st = static_cast<double>(sphere_size_formula(sp, t));
  const Elem nx = sp.norm(x);

  // r runs over F_q \ {0,1}; classify t(1-r)^2 + r||x||.
  double psi_sum = 0;       // odd d: sum of psi over nonzero values
  std::uint64_t roots = 0;  // even d: count of zero values
  for (Elem r = 0; r < f.q(); ++r) {
    if (r == 0 || r == 1) continue;
    Elem one_minus_r = f.sub(1, r);
    Elem val = f.add(f.mul(t, f.mul(one_minus_r, one_minus_r)), f.mul(r, nx));
    if (val == 0)
      ++roots;
    else
      psi_sum += f.psi(val);
  }

  if (d % 2 == 1) {
    // G_1^{d+1} = q^{(d+1)/2} psi((-1)^{(d+1)/2}) is real for odd d.
    int sg = ((d + 1) / 2) % 2 == 0 ? 1 : f.psi(minus_one);
    double gpow = std::pow(q, (d + 1) / 2.0) * sg;
    return st * st / std::pow(q, d) - 1.0 / q + gpow * f.psi(minus_one) / (q * q) * psi_sum;
  }
  int sg = (d / 2) % 2 == 0 ? 1 : f.psi(minus_one);
  double gpow = std::pow(q, d / 2.0) * sg;
  return st * st / std::pow(q, d) - 1.0 / (q * q) - (q - 2.0) * gpow / (q * q) +
         gpow / q * static_cast<double>(roots);
}

std::uint64_t three_sphere_chain_count(const VectorSpace& sp, Elem r, std::uint64_t a,
                                       std::uint64_t b) {
  if (r == 0) throw std::invalid_argument("r must be nonzero");
  if (a == b) throw std::invalid_argument("a and b must differ");
  std::vector<std::uint64_t> s = sphere(sp, r).to_list();
  std::uint64_t count = 0;
  // x = u + a, y = v + b with u, v on S_r; need ||x - y|| = r.
  for (std::uint64_t u : s) {
    std::uint64_t xa = sp.add(u, a);
    for (std::uint64_t v : s) {
      std::uint64_t yb = sp.add(v, b);
      if (sp.norm(sp.sub(xa, yb)) == r) ++count;
    }
  }
  return count;
}

}  // namespace ffdist
