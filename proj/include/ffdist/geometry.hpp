#pragma once

#include <cstdint>
#include <vector>

#include "ffdist/field.hpp"

namespace ffdist {

/// F_q^d with points identified by rank in [0, q^d): base-q digits of
/// coordinate ranks, coordinate 0 least significant.
struct VectorSpace {
  const FieldCtx* field;
  std::uint32_t dim;

  VectorSpace(const FieldCtx& f, std::uint32_t d) : field(&f), dim(d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  }

  std::uint32_t q() const { return field->q(); }
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < dim; ++i) s *= q();
    return s;
  }

  std::uint64_t rank(const std::vector<Elem>& coords) const;
  std::vector<Elem> coords(std::uint64_t r) const;
  void coords_into(std::uint64_t r, Elem* out) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;

  /// ||x|| = x_1^2 + ... + x_d^2.
  Elem norm(std::uint64_t r) const;
  Elem dot(std::uint64_t a, std::uint64_t b) const;
};

/// Subset of F_q^d as a dense bitset over point ranks.
class PointSet {
 public:
  explicit PointSet(std::uint64_t universe)
      : universe_(universe), bits_((universe + 63) / 64, 0), card_(0) {}

  static PointSet full(std::uint64_t universe);

  std::uint64_t universe() const { return universe_; }
  std::uint64_t size() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(std::uint64_t r) const { return (bits_[r >> 6] >> (r & 63)) & 1; }
  void insert(std::uint64_t r) {
    std::uint64_t m = 1ull << (r & 63);
    if (!(bits_[r >> 6] & m)) {
      bits_[r >> 6] |= m;
      ++card_;
    }
  }
  void erase(std::uint64_t r) {
    std::uint64_t m = 1ull << (r & 63);
    if (bits_[r >> 6] & m) {
      bits_[r >> 6] &= ~m;
      --card_;
    }
  }

  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::vector<std::uint64_t> to_list() const;

  std::uint64_t intersect_count(const PointSet& other) const;
  PointSet translated(const VectorSpace& sp, std::uint64_t u) const;

 private:
  std::uint64_t universe_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t card_;
};

/// S_t = {x in F_q^d : ||x|| = t}, by exact enumeration.
PointSet sphere(const VectorSpace& sp, Elem t);

/// Closed-form cardinality of S_t (covers t = 0).
std::uint64_t sphere_size_formula(const VectorSpace& sp, Elem t);

/// Cardinality of S_t via d-fold additive convolution of the
/// "number of square roots" vector; O(d q^2), no q^d enumeration.
std::uint64_t sphere_size_convolution(const VectorSpace& sp, Elem t);

/// |{(x,y) : ||x-y|| = t}| = q^d |S_t|.
std::uint64_t pair_count(const VectorSpace& sp, Elem t);

/// |S_t cap (S_t + x)| by bitset intersection; requires t != 0, x != 0.
std::uint64_t sphere_intersection(const VectorSpace& sp, Elem t, std::uint64_t x);

/// Closed-form value of |S_t cap (S_t + x)| (real, pre-rounding).
double sphere_intersection_formula(const VectorSpace& sp, Elem t, std::uint64_t x);

/// |{(x,y) in (S_r+a) x (S_r+b) : ||x-y|| = r}|; requires r != 0, a != b.
std::uint64_t three_sphere_chain_count(const VectorSpace& sp, Elem r, std::uint64_t a,
                                       std::uint64_t b);

}  // namespace ffdist
