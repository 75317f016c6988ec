#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perdec/arith.hpp"
#include "perdec/config.hpp"
#include "perdec/laurent.hpp"

namespace perdec {

// A function Z^d -> Q evaluated on demand. Decomposition components are
// fields rather than configurations: their values may be unbounded.
class Field {
 public:
  virtual ~Field() = default;
  virtual std::size_t dim() const = 0;
  virtual Rational value(const IntVector& x) const = 0;
  virtual std::string describe() const = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr view_field(ConfigView c);
// x -> (f g)(x).
FieldPtr action_field(LaurentPoly f, FieldPtr g);
// x -> sum_i k_i g_i(x).
FieldPtr combination_field(std::vector<FieldPtr> terms, std::vector<Rational> coefficients);
FieldPtr function_field(std::size_t dim, std::function<Rational(const IntVector&)> fn, std::string name);
// Exposes the underlying view when `f` came from view_field.
const ConfigView* as_view(const FieldPtr& f);

struct FieldWindow {
  Box box;
  std::vector<Rational> values;

  const Rational& at(const IntVector& x) const;
  bool all_integer() const;
  // Throws InvariantError on a non-integral value.
  WindowConfig to_window() const;
};

FieldWindow rasterize_field(const Field& g, const Box& box);

// Window evidence that f g vanishes on every point of `region`.
Verdict annihilated_on(const LaurentPoly& f, const Field& g, const Box& region);
// Window evidence that w is a period: g(x + w) = g(x) for x in `box`.
bool is_period_on(const Field& g, const IntVector& w, const Box& box);
bool agree_on(const Field& a, const Field& b, const Box& box);

// Nonzero vectors w with max-norm <= bound that pass is_period_on, scanned
// by increasing max-norm then lexicographically, greedily keeping a
// linearly independent set. Window evidence only.
std::vector<IntVector> detect_independent_periods(const Field& g, const Box& box, std::int64_t bound);

}  // namespace perdec
