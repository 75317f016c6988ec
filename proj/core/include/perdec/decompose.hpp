#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perdec/arith.hpp"
#include "perdec/config.hpp"
#include "perdec/field.hpp"
#include "perdec/lattice.hpp"
#include "perdec/laurent.hpp"

namespace perdec {

// Caller-supplied limits for every bounded search. Exhaustion raises
// InconclusiveError.
struct Bounds {
  std::int64_t search = 32;
  std::int64_t period = 64;
  std::int64_t kmax = 256;
  std::int64_t patience = 8;
};

// A function whose annihilators can be checked: exactly when it is a
// periodic or fiber-sum configuration, on its own window for a window
// configuration, and on `evidence` otherwise.
class Subject {
 public:
  static Subject of(const ConfigView& c);
  static Subject of(FieldPtr g, Box evidence);

  std::size_t dim() const { return field_->dim(); }
  const FieldPtr& field() const { return field_; }
  // Present for configuration subjects.
  const ConfigView* view() const { return view_ ? &*view_ : nullptr; }
  const Box& evidence() const { return evidence_; }

  Verdict annihilated_by(const LaurentPoly& f) const;
  // Like annihilated_by(f).holds, but an eroded-away window counts as false.
  bool annihilates(const LaurentPoly& f) const;
  // f applied to this subject.
  Subject acted(const LaurentPoly& f) const;

 private:
  FieldPtr field_;
  std::optional<ConfigView> view_;
  Box evidence_;
};

// Integer period vectors b_1..b_k of c spanning V, smallest positive
// multiple of each Hermite basis direction of V. Exact for periodic and
// fiber-sum configurations; window evidence (multiples up to `bound`) for
// windows. Throws PreconditionError if c is not V-periodic.
std::vector<IntVector> periods_in_subspace(const ConfigView& c, const SubspaceBasis& V, std::int64_t bound = 64);

// The constructed c of the transfer recurrence. `evaluator` memoizes one
// line at a time and is safe to share across threads.
struct TransferSolution {
  FieldPtr source;
  LaurentPoly phi;
  LaurentPoly psi;
  SubspaceBasis V;
  std::vector<IntVector> periods;
  std::shared_ptr<const CosetSystem> cosets;
  // Normalized phi: shift * sum_j alpha_j X^{j*v1}; c = 0 for a1 in [0, band).
  LineForm phi_form;
  std::size_t band = 0;
  FieldPtr evaluator;

  std::string gauge() const;
};

// Builds c with phi c = cprime, psi c = 0 and c periodic along `periods`.
// `periods` must be integer periods of cprime spanning V. When cprime is
// not a configuration, the annihilation and period preconditions are
// checked on `check_box` if one is given.
TransferSolution solve_transfer(const LaurentPoly& phi, const LaurentPoly& psi, FieldPtr cprime,
                                const SubspaceBasis& V, const std::vector<IntVector>& periods,
                                const std::optional<Box>& check_box = std::nullopt);
TransferSolution solve_transfer(const LaurentPoly& phi, const LaurentPoly& psi, const ConfigView& cprime,
                                const SubspaceBasis& V);

struct Component {
  FieldPtr field;
  LaurentPoly annihilator;
  IntVector direction;
  SubspaceBasis V;
  // Known integer periods; span V.
  std::vector<IntVector> periods;
};

struct Decomposition {
  std::size_t dim = 0;
  std::vector<Component> components;
  std::vector<std::string> log;

  // x -> sum of all component values.
  FieldPtr sum() const;
};

// Product of difference polynomials X^{v_i} - 1.
struct DifferenceProduct {
  std::vector<IntVector> vectors;

  LaurentPoly expand(std::size_t dim) const;
  std::vector<LaurentPoly> factors() const;
  std::string to_string() const;

  friend bool operator==(const DifferenceProduct&, const DifferenceProduct&) = default;
};

// Components c_1..c_m with c = sum c_i and phi_i c_i = 0, each periodic
// along `periods`.
Decomposition decompose_product(const std::vector<LaurentPoly>& phis, FieldPtr c, const SubspaceBasis& V,
                                const std::vector<IntVector>& periods,
                                const std::optional<Box>& check_box = std::nullopt);
Decomposition decompose_product(const std::vector<LaurentPoly>& phis, const ConfigView& c,
                                const SubspaceBasis& V);

// Rewrites dp until its vectors are pairwise non-parallel and every pair
// spans a plane meeting V only at the origin. `periods` are integer
// periods of e spanning V.
DifferenceProduct reduce_annihilator(const DifferenceProduct& dp, const Subject& e, const SubspaceBasis& V,
                                     const std::vector<IntVector>& periods, std::int64_t search_bound);

// (X^{n w} - 1) g, an annihilator of c whose support meets V only at the
// origin (and contains the origin when V is nontrivial).
LaurentPoly annihilator_from_periodizer(const LaurentPoly& g, const ConfigView& c, const SubspaceBasis& V,
                                        std::int64_t n_bound, std::int64_t period_bound = 64);

// First difference-product certificate found by the bounded search. When
// `corner` is given only that support point is used as the corner.
DifferenceProduct search_difference_annihilator(const ConfigView& c, const LaurentPoly& f, std::int64_t bound,
                                                const std::optional<IntVector>& corner = std::nullopt);

// Periodizer of sum of components whose support meets V exactly at the
// origin; `component_periods[i]` lists known periods of component i.
LaurentPoly build_periodizer(const std::vector<std::vector<IntVector>>& component_periods, const SubspaceBasis& V,
                             std::int64_t n_bound);

using PeriodizerOracle = std::function<LaurentPoly(const SubspaceBasis&)>;

// Components with k linearly independent known periods summing to c.
// Annihilation checks on non-configuration components use `evidence`.
Decomposition k_periodic_decompose(const ConfigView& c, std::size_t k, const PeriodizerOracle& oracle,
                                   const Bounds& bounds, const Box& evidence);

}  // namespace perdec
