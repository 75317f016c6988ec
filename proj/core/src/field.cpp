#include "perdec/field.hpp"

#include <algorithm>
#include <utility>

#include "perdec/error.hpp"
#include "perdec/lattice.hpp"
#include "perdec/parallel.hpp"

namespace perdec {
namespace {

class ViewField final : public Field {
 public:
  explicit ViewField(ConfigView c) : view_(std::move(c)) {}
  std::size_t dim() const override { return view_.dim(); }
  Rational value(const IntVector& x) const override { return Rational(evaluate(view_, x)); }
  std::string describe() const override { return to_string(view_.kind()) + " configuration"; }
  const ConfigView& view() const { return view_; }

 private:
  ConfigView view_;
};

class ActionField final : public Field {
 public:
  ActionField(LaurentPoly f, FieldPtr g) : f_(std::move(f)), g_(std::move(g)) {
    if (f_.dim() != g_->dim()) throw DimensionError("action_field: dimension mismatch");
  }
  std::size_t dim() const override { return g_->dim(); }
  Rational value(const IntVector& x) const override {
    Rational s = 0;
    for (const auto& [e, c] : f_.terms()) s += Rational(c) * g_->value(x - e);
    return s;
  }
  std::string describe() const override { return "(" + f_.to_string() + ") * [" + g_->describe() + "]"; }

 private:
  LaurentPoly f_;
  FieldPtr g_;
};

class CombinationField final : public Field {
 public:
  CombinationField(std::vector<FieldPtr> terms, std::vector<Rational> coefs)
      : terms_(std::move(terms)), coefs_(std::move(coefs)) {
    if (terms_.empty() || terms_.size() != coefs_.size()) {
      throw PreconditionError("combination_field: need one coefficient per nonempty term list");
    }
    for (const auto& t : terms_) {
      if (t->dim() != terms_.front()->dim()) throw DimensionError("combination_field: dimension mismatch");
    }
  }
  std::size_t dim() const override { return terms_.front()->dim(); }
  Rational value(const IntVector& x) const override {
    Rational s = 0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (coefs_[i] != 0) s += coefs_[i] * terms_[i]->value(x);
    }
    return s;
  }
  std::string describe() const override { return "linear combination of " + std::to_string(terms_.size()) + " fields"; }

 private:
  std::vector<FieldPtr> terms_;
  std::vector<Rational> coefs_;
};

class FunctionField final : public Field {
 public:
  FunctionField(std::size_t dim, std::function<Rational(const IntVector&)> fn, std::string name)
      : dim_(dim), fn_(std::move(fn)), name_(std::move(name)) {}
  std::size_t dim() const override { return dim_; }
  Rational value(const IntVector& x) const override { return fn_(x); }
  std::string describe() const override { return name_; }

 private:
  std::size_t dim_;
  std::function<Rational(const IntVector&)> fn_;
  std::string name_;
};

}  // namespace

FieldPtr view_field(ConfigView c) { return std::make_shared<ViewField>(std::move(c)); }

FieldPtr action_field(LaurentPoly f, FieldPtr g) { return std::make_shared<ActionField>(std::move(f), std::move(g)); }

FieldPtr combination_field(std::vector<FieldPtr> terms, std::vector<Rational> coefficients) {
  return std::make_shared<CombinationField>(std::move(terms), std::move(coefficients));
}

FieldPtr function_field(std::size_t dim, std::function<Rational(const IntVector&)> fn, std::string name) {
  return std::make_shared<FunctionField>(dim, std::move(fn), std::move(name));
}

const ConfigView* as_view(const FieldPtr& f) {
  auto v = std::dynamic_pointer_cast<const ViewField>(f);
  return v ? &v->view() : nullptr;
}

const Rational& FieldWindow::at(const IntVector& x) const {
  if (!box.contains(x)) throw DomainError("point " + x.to_string() + " outside window " + box.to_string());
  return values[box.index_of(x)];
}

bool FieldWindow::all_integer() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& q) { return q.get_den() == 1; });
}

WindowConfig FieldWindow::to_window() const {
  std::vector<Integer> ints;
  ints.reserve(values.size());
  for (const auto& q : values) {
    if (q.get_den() != 1) throw InvariantError("window value " + rational_to_string(q) + " is not an integer");
    ints.push_back(q.get_num());
  }
  return WindowConfig(box, std::move(ints));
}

FieldWindow rasterize_field(const Field& g, const Box& box) {
  if (box.dim() != g.dim()) throw DimensionError("rasterize_field: dimension mismatch");
  FieldWindow out{box, std::vector<Rational>(box.volume())};
  if (box.empty()) return out;
  // Split by the first coordinate; each slab writes a disjoint index range.
  const auto rows = static_cast<std::size_t>(box.hi[0] - box.lo[0] + 1);
  const std::size_t per_row = out.values.size() / rows;
  parallel_for(rows, [&](std::size_t r) {
    Box slab = box;
    slab.lo[0] = slab.hi[0] = box.lo[0] + static_cast<std::int64_t>(r);
    std::size_t k = r * per_row;
    slab.for_each([&](const IntVector& x) { out.values[k++] = g.value(x); });
  });
  return out;
}

Verdict annihilated_on(const LaurentPoly& f, const Field& g, const Box& region) {
  if (f.dim() != g.dim() || region.dim() != g.dim()) throw DimensionError("annihilated_on: dimension mismatch");
  for (const auto& x : region.points()) {
    Rational s = 0;
    for (const auto& [e, c] : f.terms()) s += Rational(c) * g.value(x - e);
    if (s != 0) return Verdict::window_result(false, region, "nonzero at " + x.to_string());
  }
  return Verdict::window_result(true, region);
}

bool is_period_on(const Field& g, const IntVector& w, const Box& box) {
  for (const auto& x : box.points()) {
    if (g.value(x + w) != g.value(x)) return false;
  }
  return true;
}

bool agree_on(const Field& a, const Field& b, const Box& box) {
  for (const auto& x : box.points()) {
    if (a.value(x) != b.value(x)) return false;
  }
  return true;
}

std::vector<IntVector> detect_independent_periods(const Field& g, const Box& box, std::int64_t bound) {
  const std::size_t d = g.dim();
  std::vector<IntVector> candidates;
  Box search(IntVector(std::vector<std::int64_t>(d, -bound)), IntVector(std::vector<std::int64_t>(d, bound)));
  search.for_each([&](const IntVector& w) {
    if (w.is_zero()) return;
    // w and -w are the same period; keep the sign-normalized one.
    for (auto c : w) {
      if (c != 0) {
        if (c > 0) candidates.push_back(w);
        return;
      }
    }
  });
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const IntVector& a, const IntVector& b) { return a.max_norm() < b.max_norm(); });
  std::vector<IntVector> found;
  for (const auto& w : candidates) {
    if (found.size() == d) break;
    auto trial = found;
    trial.push_back(w);
    if (rank_rational(trial) != trial.size()) continue;
    if (is_period_on(g, w, box)) found.push_back(w);
  }
  return found;
}

}  // namespace perdec
