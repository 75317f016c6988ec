#include "perdec/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "perdec/error.hpp"

namespace perdec {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  Integer l = Integer(static_cast<long>(std::abs(a))) / gcd64(a, b) * static_cast<long>(std::abs(b));
  return to_int64(l);
}

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw InvariantError("integer overflow: " + v.get_str() + " exceeds 64 bits");
  return v.get_si();
}

bool IntVector::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

std::int64_t IntVector::max_norm() const {
  std::int64_t m = 0;
  for (auto c : coords_) m = std::max(m, std::abs(c));
  return m;
}

IntVector& IntVector::operator+=(const IntVector& o) {
  if (o.size() != size()) throw DimensionError("vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
  if (o.size() != size()) throw DimensionError("vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

IntVector& IntVector::operator*=(std::int64_t k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

std::string IntVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

RationalVector to_rational(const IntVector& v) {
  RationalVector r;
  r.reserve(v.size());
  for (auto c : v) r.emplace_back(static_cast<long>(c));
  return r;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + s + "'");
  }
}

}  // namespace perdec
