#include "perdec/laurent.hpp"

#include <sstream>
#include <utility>

#include "perdec/error.hpp"
#include "perdec/lattice.hpp"

namespace perdec {
namespace {

void require_same_dim(const LaurentPoly& f, const LaurentPoly& g, const char* op) {
  if (f.dim() != g.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(f.dim()) + " vs " +
                         std::to_string(g.dim()) + ")");
  }
}

}  // namespace

LaurentPoly::LaurentPoly(std::size_t dim) : dim_(dim) {}

LaurentPoly::LaurentPoly(std::size_t dim, Terms terms) : dim_(dim), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != dim_) {
      throw DimensionError("exponent " + it->first.to_string() + " does not have dimension " + std::to_string(dim_));
    }
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

LaurentPoly LaurentPoly::constant(std::size_t dim, const Integer& c) {
  return LaurentPoly(dim, Terms{{IntVector::zero(dim), c}});
}

LaurentPoly LaurentPoly::monomial(const IntVector& exponent, const Integer& c) {
  return LaurentPoly(exponent.size(), Terms{{exponent, c}});
}

Integer LaurentPoly::coefficient(const IntVector& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::vector<IntVector> LaurentPoly::support() const {
  std::vector<IntVector> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

LaurentPoly LaurentPoly::shifted(const IntVector& t) const {
  if (t.size() != dim_) throw DimensionError("shift: dimension mismatch");
  LaurentPoly out(dim_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + t, c);
  return out;
}

LaurentPoly LaurentPoly::scaled(const Integer& k) const {
  if (k == 0) return LaurentPoly(dim_);
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c *= k;
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Integer a = abs(c);
    if (e.is_zero()) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "X^" << e.to_string();
  }
  return os.str();
}

LaurentPoly poly_add(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_dim(f, g, "poly_add");
  LaurentPoly::Terms t = f.terms();
  for (const auto& [e, c] : g.terms()) t[e] += c;
  return LaurentPoly(f.dim(), std::move(t));
}

LaurentPoly poly_neg(const LaurentPoly& f) { return f.scaled(-1); }

LaurentPoly poly_sub(const LaurentPoly& f, const LaurentPoly& g) { return poly_add(f, poly_neg(g)); }

LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_dim(f, g, "poly_mul");
  LaurentPoly::Terms t;
  for (const auto& [e1, c1] : f.terms()) {
    for (const auto& [e2, c2] : g.terms()) t[e1 + e2] += c1 * c2;
  }
  return LaurentPoly(f.dim(), std::move(t));
}

LaurentPoly difference_poly(const IntVector& v) {
  if (v.is_zero()) throw PreconditionError("difference_poly: zero vector");
  return LaurentPoly(v.size(), LaurentPoly::Terms{{v, 1}, {IntVector::zero(v.size()), -1}});
}

std::optional<LineDescriptor> line_direction(const LaurentPoly& f) {
  if (f.term_count() < 2) return std::nullopt;
  const IntVector& anchor = f.terms().begin()->first;
  std::optional<IntVector> dir;
  for (const auto& [e, c] : f.terms()) {
    if (e == anchor) continue;
    IntVector p = primitive(e - anchor);
    if (!dir) {
      dir = p;
    } else if (*dir != p) {
      return std::nullopt;
    }
  }
  return LineDescriptor{*dir, anchor};
}

std::set<IntVector> support_in_subspace(const LaurentPoly& f, const SubspaceBasis& V) {
  if (f.dim() != V.ambient_dim()) throw DimensionError("support_in_subspace: dimension mismatch");
  std::set<IntVector> out;
  for (const auto& [e, c] : f.terms()) {
    if (V.contains(e)) out.insert(e);
  }
  return out;
}

bool LineForm::is_difference() const {
  if (alphas.size() < 2) return false;
  std::size_t nonzero = 0;
  for (const auto& a : alphas) nonzero += (a != 0);
  return nonzero == 2 && alphas.front() == -alphas.back() && abs(alphas.front()) == 1;
}

LineForm line_form(const LaurentPoly& f) {
  auto line = line_direction(f);
  if (!line) throw PreconditionError("not a line polynomial: " + f.to_string());
  LineForm form{line->anchor, line->direction, {}};
  // The lexicographic minimum is the smallest multiple of the direction
  // because the direction's first nonzero coordinate is positive.
  std::size_t axis = 0;
  while (form.step[axis] == 0) ++axis;
  for (const auto& [e, c] : f.terms()) {
    const auto j = static_cast<std::size_t>((e[axis] - form.shift[axis]) / form.step[axis]);
    if (form.alphas.size() <= j) form.alphas.resize(j + 1, 0);
    form.alphas[j] = c;
  }
  return form;
}

}  // namespace perdec
