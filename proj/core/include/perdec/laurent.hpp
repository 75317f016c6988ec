#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "perdec/arith.hpp"

namespace perdec {

class SubspaceBasis;

// Sparse Laurent polynomial in `dim` variables with integer coefficients.
// Terms are kept in lexicographic exponent order; zero coefficients are never
// stored, so the zero polynomial is the empty term map and structural
// equality is value equality.
class LaurentPoly {
 public:
  using Terms = std::map<IntVector, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t dim);
  // Drops zero coefficients; throws DimensionError on exponents of the
  // wrong length.
  LaurentPoly(std::size_t dim, Terms terms);

  static LaurentPoly constant(std::size_t dim, const Integer& c);
  static LaurentPoly monomial(const IntVector& exponent, const Integer& c = 1);

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Integer coefficient(const IntVector& exponent) const;
  std::vector<IntVector> support() const;

  // X^t * f.
  LaurentPoly shifted(const IntVector& t) const;
  LaurentPoly scaled(const Integer& k) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  Terms terms_;
};

LaurentPoly poly_add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly poly_sub(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly poly_neg(const LaurentPoly& f);

inline LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) { return poly_add(f, g); }
inline LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) { return poly_sub(f, g); }
inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return poly_mul(f, g); }

// X^v - 1. Throws PreconditionError for v = 0.
LaurentPoly difference_poly(const IntVector& v);

// Direction of a line: primitive, first nonzero coordinate positive.
struct LineDescriptor {
  IntVector direction;
  IntVector anchor;  // lexicographically smallest support point

  friend bool operator==(const LineDescriptor&, const LineDescriptor&) = default;
};

// Present iff f has at least two support points and they are collinear.
std::optional<LineDescriptor> line_direction(const LaurentPoly& f);

// Exact supp(f) ∩ V.
std::set<IntVector> support_in_subspace(const LaurentPoly& f, const SubspaceBasis& V);

// Line polynomial rewritten as shift * sum_{j=0..n} alpha_j X^{j*step}
// with alpha_0, alpha_n != 0 and `step` the primitive direction.
struct LineForm {
  IntVector shift;
  IntVector step;
  std::vector<Integer> alphas;

  std::size_t degree() const { return alphas.size() - 1; }
  bool is_difference() const;
};

// Throws PreconditionError if f is not a line polynomial.
LineForm line_form(const LaurentPoly& f);

}  // namespace perdec
