#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace perdec {

using Integer = mpz_class;
using Rational = mpq_class;

// Floor division and mathematical modulo (result in [0, |b|) for b > 0).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Converts an exact integer to int64, throwing InvariantError on overflow.
std::int64_t to_int64(const Integer& v);

// A point of Z^d. Ordered lexicographically.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t dim) : coords_(dim, 0) {}
  IntVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}
  explicit IntVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  static IntVector zero(std::size_t dim) { return IntVector(dim); }
  static IntVector unit(std::size_t dim, std::size_t axis) {
    IntVector e(dim);
    e[axis] = 1;
    return e;
  }

  std::size_t size() const { return coords_.size(); }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  bool is_zero() const;
  // Largest absolute coordinate.
  std::int64_t max_norm() const;

  IntVector& operator+=(const IntVector& o);
  IntVector& operator-=(const IntVector& o);
  IntVector& operator*=(std::int64_t k);

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator-(IntVector a) { return a *= -1; }
  friend IntVector operator*(std::int64_t k, IntVector a) { return a *= k; }

  friend bool operator==(const IntVector&, const IntVector&) = default;
  friend std::strong_ordering operator<=>(const IntVector& a, const IntVector& b) {
    return a.coords_ <=> b.coords_;
  }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const IntVector& v) {
    return os << v.to_string();
  }

 private:
  std::vector<std::int64_t> coords_;
};

using RationalVector = std::vector<Rational>;

RationalVector to_rational(const IntVector& v);

// "p/q" (or "p" when integral).
std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace perdec

template <>
struct std::hash<perdec::IntVector> {
  std::size_t operator()(const perdec::IntVector& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto c : v) {
      h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
