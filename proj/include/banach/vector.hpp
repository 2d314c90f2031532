#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "banach/rational.hpp"

namespace banach {

/// A point of l_p^n with scalar type T (double on the float path, Rational on
/// the exact path). Value type; n is fixed at construction.
template <class T>
class Vector {
 public:
  using value_type = T;

  Vector() = default;
  explicit Vector(std::size_t n) : coords_(n, T(0)) {}
  Vector(std::initializer_list<T> coords) : coords_(coords) {}
  explicit Vector(std::vector<T> coords) : coords_(std::move(coords)) {}

  std::size_t size() const { return coords_.size(); }
  const T& operator[](std::size_t i) const { return coords_[i]; }
  T& operator[](std::size_t i) { return coords_[i]; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  std::span<const T> coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const T& v) { return v == 0; });
  }

  friend Vector operator+(const Vector& lhs, const Vector& rhs) {
    Vector out(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = lhs[i] + rhs[i];
    return out;
  }
  friend Vector operator-(const Vector& lhs, const Vector& rhs) {
    Vector out(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = lhs[i] - rhs[i];
    return out;
  }
  friend Vector operator-(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
  }
  friend Vector operator*(const T& s, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
  }
  friend bool operator==(const Vector& lhs, const Vector& rhs) { return lhs.coords_ == rhs.coords_; }

 private:
  std::vector<T> coords_;
};

using VecN = Vector<double>;
using QVecN = Vector<Rational>;

/// Euclidean pairing sum_i f_i v_i (functional applied to vector).
template <class T>
T pairing(const Vector<T>& f, const Vector<T>& v) {
  T acc(0);
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * v[i];
  return acc;
}

inline VecN to_double(const QVecN& v) {
  VecN out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

inline QVecN to_rational(const VecN& v) {
  QVecN out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

}  // namespace banach
