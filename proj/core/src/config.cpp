#include "perdec/config.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "perdec/error.hpp"

namespace perdec {
namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Range of positions j with anchor + j*direction inside the box.
std::optional<std::pair<std::int64_t, std::int64_t>> line_range(const PeriodicFiber& f, const Box& box) {
  std::int64_t jlo = INT64_MIN;
  std::int64_t jhi = INT64_MAX;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const std::int64_t a = f.anchor[i];
    const std::int64_t d = f.direction[i];
    if (d == 0) {
      if (a < box.lo[i] || a > box.hi[i]) return std::nullopt;
      continue;
    }
    std::int64_t lo;
    std::int64_t hi;
    if (d > 0) {
      lo = -floor_div(-(box.lo[i] - a), d);  // ceil
      hi = floor_div(box.hi[i] - a, d);
    } else {
      lo = -floor_div(-(box.hi[i] - a), d);
      hi = floor_div(box.lo[i] - a, d);
    }
    jlo = std::max(jlo, lo);
    jhi = std::min(jhi, hi);
  }
  if (jlo > jhi) return std::nullopt;
  return std::make_pair(jlo, jhi);
}

PeriodicFiber merge_same_line(const PeriodicFiber& a, const PeriodicFiber& b) {
  const std::int64_t period = lcm64(a.period, b.period);
  PeriodicFiber out{a.anchor, a.direction, period, std::vector<Integer>(static_cast<std::size_t>(period))};
  for (std::int64_t j = 0; j < period; ++j) {
    out.vals[static_cast<std::size_t>(j)] =
        a.vals[static_cast<std::size_t>(j % a.period)] + b.vals[static_cast<std::size_t>(j % b.period)];
  }
  return out;
}

// Rewrites a fiber so its direction is primitive and sign-normalized.
PeriodicFiber normalize_direction(PeriodicFiber f) {
  const IntVector prim = primitive(f.direction);
  std::size_t axis = 0;
  while (prim[axis] == 0) ++axis;
  const std::int64_t scale = f.direction[axis] / prim[axis];
  if (scale == 1) return f;
  const std::int64_t g = std::abs(scale);
  const std::int64_t period = f.period * g;
  std::vector<Integer> vals(static_cast<std::size_t>(period), 0);
  for (std::int64_t j = 0; j < f.period; ++j) {
    const std::int64_t pos = floor_mod(scale * j, period);
    vals[static_cast<std::size_t>(pos)] = f.vals[static_cast<std::size_t>(j)];
  }
  return PeriodicFiber{f.anchor, prim, period, std::move(vals)};
}

}  // namespace

Box::Box(IntVector lo_, IntVector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw DimensionError("box corners differ in dimension");
}

bool Box::empty() const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return true;
  }
  return false;
}

std::size_t Box::volume() const {
  if (empty()) return 0;
  std::size_t v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
  return v;
}

bool Box::contains(const IntVector& x) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const { return other.empty() || (contains(other.lo) && contains(other.hi)); }

Box Box::shifted(const IntVector& t) const { return Box(lo + t, hi + t); }

std::size_t Box::index_of(const IntVector& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    idx = idx * static_cast<std::size_t>(hi[i] - lo[i] + 1) + static_cast<std::size_t>(x[i] - lo[i]);
  }
  return idx;
}

void Box::for_each(const std::function<void(const IntVector&)>& fn) const {
  if (empty()) return;
  IntVector cur = lo;
  while (true) {
    fn(cur);
    std::size_t i = lo.size();
    while (i-- > 0) {
      if (++cur[i] <= hi[i]) break;
      cur[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

std::vector<IntVector> Box::points() const {
  std::vector<IntVector> out;
  out.reserve(volume());
  for_each([&](const IntVector& x) { out.push_back(x); });
  return out;
}

std::string Box::to_string() const { return "[" + lo.to_string() + ".." + hi.to_string() + "]"; }

Box box_intersection(const Box& a, const Box& b) {
  require_dim(a.dim(), b.dim(), "box intersection");
  Box out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.lo[i] = std::max(a.lo[i], b.lo[i]);
    out.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return out;
}

Box cube(std::size_t dim, std::int64_t m, const IntVector& t) {
  IntVector lo(dim);
  IntVector hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = t[i] - m;
    hi[i] = t[i] + m;
  }
  return Box(lo, hi);
}

WindowConfig::WindowConfig(Box box, std::vector<Integer> values) : box_(std::move(box)), values_(std::move(values)) {
  if (box_.empty()) throw PreconditionError("window box is empty: " + box_.to_string());
  if (values_.size() != box_.volume()) {
    throw PreconditionError("window has " + std::to_string(values_.size()) + " values but box volume " +
                            std::to_string(box_.volume()));
  }
}

WindowConfig WindowConfig::zeros(const Box& box) { return WindowConfig(box, std::vector<Integer>(box.volume(), 0)); }

WindowConfig WindowConfig::from_function(const Box& box, const std::function<Integer(const IntVector&)>& fn) {
  std::vector<Integer> values;
  values.reserve(box.volume());
  box.for_each([&](const IntVector& x) { values.push_back(fn(x)); });
  return WindowConfig(box, std::move(values));
}

const Integer& WindowConfig::at(const IntVector& x) const {
  if (!box_.contains(x)) throw DomainError("point " + x.to_string() + " outside window " + box_.to_string());
  return values_[box_.index_of(x)];
}

Integer& WindowConfig::mutable_at(const IntVector& x) {
  if (!box_.contains(x)) throw DomainError("point " + x.to_string() + " outside window " + box_.to_string());
  return values_[box_.index_of(x)];
}

PeriodicConfig::PeriodicConfig(Lattice lattice, std::vector<Integer> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (!lattice_.full_rank()) throw PreconditionError("period lattice must have full rank");
  if (values_.size() != static_cast<std::size_t>(lattice_.index())) {
    throw PreconditionError("periodic configuration needs " + std::to_string(lattice_.index()) + " residue values, got " +
                            std::to_string(values_.size()));
  }
}

PeriodicConfig PeriodicConfig::from_function(const Lattice& lattice, const std::function<Integer(const IntVector&)>& fn) {
  std::vector<Integer> values;
  for (const auto& r : lattice.residues()) values.push_back(fn(r));
  return PeriodicConfig(lattice, std::move(values));
}

PeriodicConfig PeriodicConfig::constant(std::size_t dim, const Integer& value) {
  return PeriodicConfig(Lattice::identity(dim), {value});
}

Integer PeriodicConfig::at(const IntVector& x) const {
  require_dim(x.size(), dim(), "periodic evaluate");
  return values_[lattice_.residue_index(lattice_.reduce(x))];
}

bool PeriodicConfig::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Integer& v) { return v == 0; });
}

PeriodicConfig PeriodicConfig::rebased(const Lattice& sublattice) const {
  if (!lattice_.contains_lattice(sublattice)) throw PreconditionError("rebase target is not a sublattice");
  return from_function(sublattice, [&](const IntVector& r) { return at(r); });
}

std::optional<std::int64_t> PeriodicFiber::position(const IntVector& x) const {
  std::size_t axis = 0;
  while (direction[axis] == 0) ++axis;
  const std::int64_t diff = x[axis] - anchor[axis];
  if (diff % direction[axis] != 0) return std::nullopt;
  const std::int64_t j = diff / direction[axis];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != anchor[i] + j * direction[i]) return std::nullopt;
  }
  return j;
}

Integer PeriodicFiber::at(const IntVector& x) const {
  auto j = position(x);
  if (!j) return 0;
  return vals[static_cast<std::size_t>(floor_mod(*j, period))];
}

PeriodicFiber PeriodicFiber::canonical() const {
  std::size_t axis = 0;
  while (direction[axis] == 0) ++axis;
  const std::int64_t q = floor_div(anchor[axis], direction[axis]);
  PeriodicFiber out{anchor - q * direction, direction, period, std::vector<Integer>(vals.size())};
  for (std::int64_t j = 0; j < period; ++j) {
    out.vals[static_cast<std::size_t>(j)] = vals[static_cast<std::size_t>(floor_mod(j - q, period))];
  }
  const std::size_t p = minimal_period(out.vals);
  out.vals.resize(p);
  out.period = static_cast<std::int64_t>(p);
  return out;
}

bool PeriodicFiber::is_zero() const {
  return std::all_of(vals.begin(), vals.end(), [](const Integer& v) { return v == 0; });
}

std::size_t minimal_period(const std::vector<Integer>& vals) {
  const std::size_t n = vals.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t j = p; j < n && ok; ++j) ok = vals[j] == vals[j - p];
    if (ok) return p;
  }
  return n;
}

PeriodicFiber make_fiber(IntVector anchor, IntVector direction, std::vector<Integer> vals) {
  if (anchor.size() != direction.size()) throw DimensionError("fiber anchor and direction differ in dimension");
  if (direction.is_zero()) throw PreconditionError("fiber direction must be nonzero");
  if (vals.empty()) throw PreconditionError("fiber needs at least one value");
  PeriodicFiber f{std::move(anchor), std::move(direction), static_cast<std::int64_t>(vals.size()), std::move(vals)};
  if (f.is_zero()) throw PreconditionError("fiber values are all zero");
  return normalize_direction(std::move(f)).canonical();
}

FiberSum::FiberSum(std::size_t dim, std::vector<PeriodicFiber> fibers) : dim_(dim) {
  std::map<std::pair<IntVector, IntVector>, PeriodicFiber> merged;
  for (auto& raw : fibers) {
    require_dim(raw.anchor.size(), dim_, "fiber sum");
    require_dim(raw.direction.size(), dim_, "fiber sum");
    if (raw.period < 1 || raw.vals.size() != static_cast<std::size_t>(raw.period)) {
      throw PreconditionError("fiber period does not match its value count");
    }
    PeriodicFiber f = normalize_direction(std::move(raw)).canonical();
    auto key = std::make_pair(f.direction, f.anchor);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(f));
    } else {
      it->second = merge_same_line(it->second, f).canonical();
    }
  }
  for (auto& [key, f] : merged) {
    if (!f.is_zero()) fibers_.push_back(std::move(f));
  }
}

Integer FiberSum::at(const IntVector& x) const {
  require_dim(x.size(), dim_, "fiber sum evaluate");
  Integer s = 0;
  for (const auto& f : fibers_) s += f.at(x);
  return s;
}

std::vector<IntVector> FiberSum::directions() const {
  std::vector<IntVector> dirs;
  for (const auto& f : fibers_) {
    if (std::find(dirs.begin(), dirs.end(), f.direction) == dirs.end()) dirs.push_back(f.direction);
  }
  return dirs;
}

std::string to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::Window:
      return "window";
    case ConfigKind::Periodic:
      return "periodic";
    case ConfigKind::FiberSum:
      return "fibersum";
  }
  return "unknown";
}

std::size_t ConfigView::dim() const {
  return std::visit([](const auto& r) { return r.dim(); }, rep_);
}

std::optional<Box> ConfigView::domain() const {
  if (is_window()) return window().box();
  return std::nullopt;
}

bool ConfigView::in_domain(const IntVector& x) const { return !is_window() || window().contains(x); }

Integer evaluate(const ConfigView& c, const IntVector& x) {
  require_dim(x.size(), c.dim(), "evaluate");
  return std::visit([&](const auto& r) -> Integer { return r.at(x); }, c.rep());
}

FiberSum translate(const FiberSum& c, const IntVector& t) {
  std::vector<PeriodicFiber> fibers = c.fibers();
  for (auto& f : fibers) f.anchor += t;
  return FiberSum(c.dim(), std::move(fibers));
}

ConfigView translate(const ConfigView& c, const IntVector& t) {
  require_dim(t.size(), c.dim(), "translate");
  switch (c.kind()) {
    case ConfigKind::Window:
      return WindowConfig(c.window().box().shifted(t), c.window().values());
    case ConfigKind::Periodic: {
      const auto& p = c.periodic();
      return PeriodicConfig::from_function(p.lattice(), [&](const IntVector& r) { return p.at(r - t); });
    }
    case ConfigKind::FiberSum:
      return translate(c.fiber_sum(), t);
  }
  throw InvariantError("translate: unknown representation");
}

Box eroded_box(const Box& box, const LaurentPoly& f) {
  require_dim(box.dim(), f.dim(), "erosion");
  // Intersection of box + e over supp(f); not clipped to `box`.
  if (f.is_zero()) return box;
  Box out = box.shifted(f.terms().begin()->first);
  for (const auto& [e, coef] : f.terms()) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      out.lo[i] = std::max(out.lo[i], box.lo[i] + e[i]);
      out.hi[i] = std::min(out.hi[i], box.hi[i] + e[i]);
    }
  }
  return out;
}

FiberSum apply_poly(const LaurentPoly& f, const FiberSum& c) {
  require_dim(f.dim(), c.dim(), "apply_poly");
  std::vector<PeriodicFiber> out;
  for (const auto& [e, coef] : f.terms()) {
    for (const auto& fib : c.fibers()) {
      PeriodicFiber g = fib;
      g.anchor += e;
      for (auto& v : g.vals) v *= coef;
      out.push_back(std::move(g));
    }
  }
  return FiberSum(c.dim(), std::move(out));
}

PeriodicConfig apply_poly(const LaurentPoly& f, const PeriodicConfig& c) {
  require_dim(f.dim(), c.dim(), "apply_poly");
  return PeriodicConfig::from_function(c.lattice(), [&](const IntVector& r) {
    Integer s = 0;
    for (const auto& [e, coef] : f.terms()) s += coef * c.at(r - e);
    return s;
  });
}

ConfigView apply_poly(const LaurentPoly& f, const ConfigView& c) {
  require_dim(f.dim(), c.dim(), "apply_poly");
  switch (c.kind()) {
    case ConfigKind::Window: {
      const auto& w = c.window();
      if (f.is_zero()) return WindowConfig::zeros(w.box());
      Box out = eroded_box(w.box(), f);
      if (out.empty()) {
        throw DomainError("apply_poly: window " + w.box().to_string() + " eroded by the support of " + f.to_string() +
                          " is empty");
      }
      return WindowConfig::from_function(out, [&](const IntVector& u) {
        Integer s = 0;
        for (const auto& [e, coef] : f.terms()) s += coef * w.at(u - e);
        return s;
      });
    }
    case ConfigKind::Periodic:
      return apply_poly(f, c.periodic());
    case ConfigKind::FiberSum:
      return apply_poly(f, c.fiber_sum());
  }
  throw InvariantError("apply_poly: unknown representation");
}

std::string Verdict::to_string() const {
  std::string s = holds ? "true" : "false";
  s = (exact ? "Exact(" : "WindowOnly(") + s;
  if (region) s += ", " + region->to_string();
  s += ")";
  if (!detail.empty()) s += " " + detail;
  return s;
}

Verdict is_annihilated(const LaurentPoly& f, const ConfigView& c) {
  require_dim(f.dim(), c.dim(), "is_annihilated");
  ConfigView fc = apply_poly(f, c);
  switch (fc.kind()) {
    case ConfigKind::Window: {
      const auto& w = fc.window();
      for (const auto& x : w.box().points()) {
        if (w.at(x) != 0) return Verdict::window_result(false, w.box(), "nonzero at " + x.to_string());
      }
      return Verdict::window_result(true, w.box());
    }
    case ConfigKind::Periodic:
      return Verdict::exact_result(fc.periodic().is_zero());
    case ConfigKind::FiberSum:
      return Verdict::exact_result(fc.fiber_sum().is_zero());
  }
  throw InvariantError("is_annihilated: unknown representation");
}

Lattice period_lattice(const PeriodicConfig& c) {
  const auto residues = c.lattice().residues();
  std::vector<IntVector> gens = c.lattice().basis();
  for (const auto& r : residues) {
    if (r.is_zero()) continue;
    bool period = true;
    for (const auto& x : residues) {
      if (c.at(x + r) != c.at(x)) {
        period = false;
        break;
      }
    }
    if (period) gens.push_back(r);
  }
  return Lattice(c.dim(), gens);
}

WindowConfig rasterize(const ConfigView& c, const IntVector& lo, const IntVector& hi) { return rasterize(c, Box(lo, hi)); }

WindowConfig rasterize(const ConfigView& c, const Box& box) {
  require_dim(box.dim(), c.dim(), "rasterize");
  if (box.empty()) throw PreconditionError("rasterize: empty box " + box.to_string());
  switch (c.kind()) {
    case ConfigKind::Window: {
      const auto& w = c.window();
      if (!w.box().contains(box)) {
        throw DomainError("rasterize: box " + box.to_string() + " exceeds window " + w.box().to_string());
      }
      return WindowConfig::from_function(box, [&](const IntVector& x) { return w.at(x); });
    }
    case ConfigKind::Periodic: {
      const auto& p = c.periodic();
      return WindowConfig::from_function(box, [&](const IntVector& x) { return p.at(x); });
    }
    case ConfigKind::FiberSum: {
      WindowConfig out = WindowConfig::zeros(box);
      for (const auto& f : c.fiber_sum().fibers()) {
        auto range = line_range(f, box);
        if (!range) continue;
        for (std::int64_t j = range->first; j <= range->second; ++j) {
          out.mutable_at(f.anchor + j * f.direction) += f.vals[static_cast<std::size_t>(floor_mod(j, f.period))];
        }
      }
      return out;
    }
  }
  throw InvariantError("rasterize: unknown representation");
}

FiberSum add_fiber_sums(const std::vector<FiberSum>& sums, const std::vector<Integer>& coefficients) {
  if (sums.size() != coefficients.size()) throw PreconditionError("add: one coefficient per summand required");
  if (sums.empty()) throw PreconditionError("add: no summands");
  std::vector<PeriodicFiber> all;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    require_dim(sums[i].dim(), sums.front().dim(), "add");
    if (coefficients[i] == 0) continue;
    for (auto f : sums[i].fibers()) {
      for (auto& v : f.vals) v *= coefficients[i];
      all.push_back(std::move(f));
    }
  }
  return FiberSum(sums.front().dim(), std::move(all));
}

ConfigView add_views(const std::vector<ConfigView>& views, const std::vector<Integer>& coefficients) {
  if (views.size() != coefficients.size()) throw PreconditionError("add: one coefficient per summand required");
  if (views.empty()) throw PreconditionError("add: no summands");
  const std::size_t d = views.front().dim();
  for (const auto& v : views) require_dim(v.dim(), d, "add");

  const bool all_fibers = std::all_of(views.begin(), views.end(), [](const ConfigView& v) { return v.is_fiber_sum(); });
  if (all_fibers) {
    std::vector<FiberSum> sums;
    for (const auto& v : views) sums.push_back(v.fiber_sum());
    return add_fiber_sums(sums, coefficients);
  }
  const bool all_periodic = std::all_of(views.begin(), views.end(), [](const ConfigView& v) { return v.is_periodic(); });
  if (all_periodic) {
    Lattice common = views.front().periodic().lattice();
    for (const auto& v : views) common = lattice_intersection(common, v.periodic().lattice());
    return PeriodicConfig::from_function(common, [&](const IntVector& r) {
      Integer s = 0;
      for (std::size_t i = 0; i < views.size(); ++i) s += coefficients[i] * views[i].periodic().at(r);
      return s;
    });
  }
  std::optional<Box> box;
  for (const auto& v : views) {
    if (!v.is_window()) continue;
    box = box ? box_intersection(*box, v.window().box()) : v.window().box();
  }
  if (!box) {
    throw PreconditionError("add: periodic and fiber-sum summands have no common finite representation; rasterize first");
  }
  if (box->empty()) throw DomainError("add: window domains do not intersect");
  return WindowConfig::from_function(*box, [&](const IntVector& x) {
    Integer s = 0;
    for (std::size_t i = 0; i < views.size(); ++i) s += coefficients[i] * evaluate(views[i], x);
    return s;
  });
}

}  // namespace perdec
