#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perdec/arith.hpp"
#include "perdec/laurent.hpp"
#include "perdec/lattice.hpp"

namespace perdec {

// Inclusive axis-aligned box [lo, hi].
struct Box {
  IntVector lo;
  IntVector hi;

  Box() = default;
  Box(IntVector lo_, IntVector hi_);

  std::size_t dim() const { return lo.size(); }
  bool empty() const;
  std::size_t volume() const;
  bool contains(const IntVector& x) const;
  bool contains(const Box& other) const;
  Box shifted(const IntVector& t) const;
  // Row-major position of x (last coordinate fastest).
  std::size_t index_of(const IntVector& x) const;
  // Calls fn for every point in row-major order.
  void for_each(const std::function<void(const IntVector&)>& fn) const;
  std::vector<IntVector> points() const;

  friend bool operator==(const Box&, const Box&) = default;
  std::string to_string() const;
};

// Empty result is signalled by Box::empty().
Box box_intersection(const Box& a, const Box& b);
// Centered cube [-m, m]^dim shifted by t.
Box cube(std::size_t dim, std::int64_t m, const IntVector& t);

// Values known only inside the box; no claim is made outside it.
class WindowConfig {
 public:
  WindowConfig() = default;
  WindowConfig(Box box, std::vector<Integer> values);
  static WindowConfig zeros(const Box& box);
  static WindowConfig from_function(const Box& box, const std::function<Integer(const IntVector&)>& fn);

  std::size_t dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<Integer>& values() const { return values_; }
  bool contains(const IntVector& x) const { return box_.contains(x); }
  // Throws DomainError outside the box.
  const Integer& at(const IntVector& x) const;
  Integer& mutable_at(const IntVector& x);

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

 private:
  Box box_;
  std::vector<Integer> values_;
};

// Values on a full-rank period lattice, one per Hermite residue.
class PeriodicConfig {
 public:
  PeriodicConfig() = default;
  // `values` indexed by Lattice::residue_index.
  PeriodicConfig(Lattice lattice, std::vector<Integer> values);
  static PeriodicConfig from_function(const Lattice& lattice, const std::function<Integer(const IntVector&)>& fn);
  static PeriodicConfig constant(std::size_t dim, const Integer& value);

  std::size_t dim() const { return lattice_.ambient_dim(); }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Integer>& values() const { return values_; }
  Integer at(const IntVector& x) const;
  bool is_zero() const;

  // Same function on a finer lattice (must be a sublattice of the current).
  PeriodicConfig rebased(const Lattice& sublattice) const;

  friend bool operator==(const PeriodicConfig&, const PeriodicConfig&) = default;

 private:
  Lattice lattice_;
  std::vector<Integer> values_;
};

// Periodic function supported on the line anchor + Z*direction.
struct PeriodicFiber {
  IntVector anchor;
  IntVector direction;
  std::int64_t period = 1;
  std::vector<Integer> vals;

  // Position along the line, if x lies on it.
  std::optional<std::int64_t> position(const IntVector& x) const;
  Integer at(const IntVector& x) const;
  // Re-anchors to the canonical line representative (rotating `vals`) and
  // shrinks to the minimal period.
  PeriodicFiber canonical() const;
  bool is_zero() const;

  friend bool operator==(const PeriodicFiber&, const PeriodicFiber&) = default;
};

// Validates and canonicalizes a single fiber (primitive direction, period
// matching vals, at least one nonzero value).
PeriodicFiber make_fiber(IntVector anchor, IntVector direction, std::vector<Integer> vals);

// Minimal period of a cyclic sequence.
std::size_t minimal_period(const std::vector<Integer>& vals);

// Finite sum of periodic fibers. Fibers on the same line with the same
// direction are merged (lcm period, summed values); zero fibers dropped. The
// stored list is sorted by (direction, anchor).
class FiberSum {
 public:
  FiberSum() = default;
  explicit FiberSum(std::size_t dim) : dim_(dim) {}
  FiberSum(std::size_t dim, std::vector<PeriodicFiber> fibers);

  std::size_t dim() const { return dim_; }
  const std::vector<PeriodicFiber>& fibers() const { return fibers_; }
  bool is_zero() const { return fibers_.empty(); }
  Integer at(const IntVector& x) const;
  std::vector<IntVector> directions() const;

  friend bool operator==(const FiberSum&, const FiberSum&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<PeriodicFiber> fibers_;
};

enum class ConfigKind { Window, Periodic, FiberSum };

std::string to_string(ConfigKind kind);

// A configuration in one of the three finite representations.
class ConfigView {
 public:
  using Rep = std::variant<WindowConfig, PeriodicConfig, FiberSum>;

  ConfigView() = default;
  ConfigView(WindowConfig w) : rep_(std::move(w)) {}
  ConfigView(PeriodicConfig p) : rep_(std::move(p)) {}
  ConfigView(FiberSum f) : rep_(std::move(f)) {}

  ConfigKind kind() const { return static_cast<ConfigKind>(rep_.index()); }
  std::size_t dim() const;
  const Rep& rep() const { return rep_; }

  bool is_window() const { return kind() == ConfigKind::Window; }
  bool is_periodic() const { return kind() == ConfigKind::Periodic; }
  bool is_fiber_sum() const { return kind() == ConfigKind::FiberSum; }
  const WindowConfig& window() const { return std::get<WindowConfig>(rep_); }
  const PeriodicConfig& periodic() const { return std::get<PeriodicConfig>(rep_); }
  const FiberSum& fiber_sum() const { return std::get<FiberSum>(rep_); }

  // Box for windows, absent for representations defined on all of Z^d.
  std::optional<Box> domain() const;
  bool in_domain(const IntVector& x) const;

  friend bool operator==(const ConfigView&, const ConfigView&) = default;

 private:
  Rep rep_;
};

// c(x). Throws DomainError outside a window.
Integer evaluate(const ConfigView& c, const IntVector& x);

// tau^t(c): x -> c(x - t).
ConfigView translate(const ConfigView& c, const IntVector& t);
FiberSum translate(const FiberSum& c, const IntVector& t);

// (f c)(u) = sum_i f_i c(u - u_i). Windows shrink to the erosion of their
// box by supp(f); an empty erosion throws DomainError.
ConfigView apply_poly(const LaurentPoly& f, const ConfigView& c);
FiberSum apply_poly(const LaurentPoly& f, const FiberSum& c);
PeriodicConfig apply_poly(const LaurentPoly& f, const PeriodicConfig& c);

// Box of points where f c is determined by a window on `box`.
Box eroded_box(const Box& box, const LaurentPoly& f);

// Outcome of a check. `exact` verdicts are proofs; window verdicts are
// evidence restricted to `region`.
struct Verdict {
  bool holds = false;
  bool exact = false;
  std::optional<Box> region;
  std::string detail;

  static Verdict exact_result(bool holds, std::string detail = {}) { return {holds, true, std::nullopt, std::move(detail)}; }
  static Verdict window_result(bool holds, Box region, std::string detail = {}) {
    return {holds, false, std::move(region), std::move(detail)};
  }
  std::string to_string() const;
};

Verdict is_annihilated(const LaurentPoly& f, const ConfigView& c);

// All periods of c, as a Hermite basis. Superlattice of c.lattice().
Lattice period_lattice(const PeriodicConfig& c);

// Dense window of c over [lo, hi]; throws DomainError if the box leaves c's
// domain.
WindowConfig rasterize(const ConfigView& c, const IntVector& lo, const IntVector& hi);
WindowConfig rasterize(const ConfigView& c, const Box& box);

// Pointwise sum_i k_i c_i. All FiberSum -> FiberSum; all periodic ->
// periodic on the intersection lattice; otherwise a window on the
// intersection of the window domains.
ConfigView add_views(const std::vector<ConfigView>& views, const std::vector<Integer>& coefficients);
FiberSum add_fiber_sums(const std::vector<FiberSum>& sums, const std::vector<Integer>& coefficients);

}  // namespace perdec
