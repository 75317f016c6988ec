#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perdec/config.hpp"
#include "perdec/decompose.hpp"
#include "perdec/laurent.hpp"

namespace perdec {

struct SparsenessCertificate {
  std::int64_t constant_a = 0;
  bool holds = false;
  // A proof when true: either a closed-form bound or an explicit violation.
  bool exact = false;
  // (m, largest support count found over the tested translates).
  std::vector<std::pair<std::int64_t, std::int64_t>> checked_ranges;
  // (m, t) with |supp(c) ∩ (C_m + t)| > a m.
  std::optional<std::pair<std::int64_t, IntVector>> violation;

  std::string to_string() const;
};

// Sum over fibers of the per-line bound: a line with primitive direction
// of max-norm n meets any C_m + t in at most floor(2m/n) + 1 <= (floor(2/n) + 1) m
// points.
std::int64_t sparseness_constant(const FiberSum& c);

SparsenessCertificate check_sparseness(const ConfigView& c, std::int64_t a, std::int64_t m_max);

struct FiberExtraction {
  FiberSum fibers;
  // False when periods were read off a window.
  bool exact = false;
};

// c as a sum of periodic fibers along primitive(v).
FiberExtraction fiber_extract(const ConfigView& c, const IntVector& v, std::int64_t period_bound);

// Closed-form limit of translates of a fiber sum along the subsequence
// k * multiplier * step: fibers parallel to step survive, the rest leave
// every bounded region. `multiplier` makes every surviving period divide
// the effective step.
struct FiberLimit {
  FiberSum limit;
  std::int64_t multiplier = 1;
};
FiberLimit fiber_sum_translate_limit(const FiberSum& c, const IntVector& step);

struct TranslateLimit {
  WindowConfig window;
  // First k of the stable run (in units of multiplier * step).
  std::int64_t stabilized_at = 0;
  std::int64_t multiplier = 1;
  // True when a closed form was available and agreed with the stabilized run.
  bool closed_form = false;
};

// Rasterizes translate(c, k * step) on `window` for k = 0, 1, ... and
// returns the first content repeated for `patience` consecutive k. Fiber
// sums and periodic configurations step along the subsequence that makes
// the limit exist, and are cross-checked against their closed form.
TranslateLimit stabilized_translate_limit(const ConfigView& c, const IntVector& step, const Box& window,
                                          std::int64_t k_max, std::int64_t patience);

struct SparseSplit {
  FiberExtraction first;   // along phi's direction, phi first = 0
  FiberExtraction second;  // along psi's direction, psi second = 0
  std::vector<std::string> log;
};

// `check` is the window used for cross-checks and for limits of window
// inputs.
SparseSplit sparse_split2(const ConfigView& c, const LaurentPoly& phi, const LaurentPoly& psi, const Bounds& bounds,
                          const Box& check);

struct SparseDecomposition {
  std::vector<IntVector> directions;
  std::vector<FiberSum> families;
  bool exact = false;
  std::vector<std::string> log;
};

SparseDecomposition sparse_decompose(const ConfigView& c, const std::vector<LaurentPoly>& phis,
                                     const Bounds& bounds, const Box& check);
SparseDecomposition sparse_full(const ConfigView& c, const LaurentPoly& f, const Bounds& bounds, const Box& check);

}  // namespace perdec
