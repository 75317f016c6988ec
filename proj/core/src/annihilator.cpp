#include <algorithm>
#include <set>

#include "perdec/decompose.hpp"
#include "perdec/error.hpp"

namespace perdec {
namespace {

// supp(f) ∩ V = {0}, with the origin required in the support.
bool meets_exactly_at_origin(const LaurentPoly& f, const SubspaceBasis& V) {
  const auto hit = support_in_subspace(f, V);
  return hit.size() == 1 && hit.begin()->is_zero();
}

bool first_nonzero_positive(const IntVector& w) {
  for (auto x : w) {
    if (x != 0) return x > 0;
  }
  return false;
}

bool window_period(const WindowConfig& w, const IntVector& shift) {
  const Box overlap = box_intersection(w.box(), w.box().shifted(-shift));
  if (overlap.empty()) return false;
  bool ok = true;
  overlap.for_each([&](const IntVector& x) {
    if (ok && w.at(x) != w.at(x + shift)) ok = false;
  });
  return ok;
}

// A period of g c outside V.
IntVector period_outside(const ConfigView& gc, const SubspaceBasis& V, std::int64_t period_bound) {
  const std::size_t d = gc.dim();
  if (gc.is_periodic()) {
    const Lattice lattice = period_lattice(gc.periodic());
    for (const auto& row : lattice.basis()) {
      if (!V.contains(row)) return row;
    }
    throw InvariantError("full-rank period lattice inside a proper subspace");
  }
  if (gc.is_fiber_sum()) {
    const FiberSum& fs = gc.fiber_sum();
    if (fs.is_zero()) {
      for (std::size_t axis = 0; axis < d; ++axis) {
        if (!V.contains(IntVector::unit(d, axis))) return IntVector::unit(d, axis);
      }
      throw InvariantError("every unit vector lies in a proper subspace");
    }
    if (d == 1) {
      std::int64_t p = 1;
      for (const auto& fiber : fs.fibers()) p = lcm64(p, fiber.period);
      return IntVector{p};
    }
    throw PreconditionError("g c is a nonzero fiber sum, not strongly periodic");
  }
  // Window evidence: scan by max-norm, then lexicographically.
  std::vector<IntVector> candidates;
  Box search(IntVector(std::vector<std::int64_t>(d, -period_bound)),
             IntVector(std::vector<std::int64_t>(d, period_bound)));
  search.for_each([&](const IntVector& w) {
    if (!w.is_zero() && first_nonzero_positive(w) && !V.contains(w)) candidates.push_back(w);
  });
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const IntVector& a, const IntVector& b) { return a.max_norm() < b.max_norm(); });
  for (const auto& w : candidates) {
    if (window_period(gc.window(), w)) return w;
  }
  throw InconclusiveError("no period of g c outside V with max-norm <= " + std::to_string(period_bound) +
                          " on the window");
}

}  // namespace

LaurentPoly annihilator_from_periodizer(const LaurentPoly& g, const ConfigView& c, const SubspaceBasis& V,
                                        std::int64_t n_bound, std::int64_t period_bound) {
  const std::size_t d = c.dim();
  if (g.dim() != d || V.ambient_dim() != d) throw DimensionError("annihilator_from_periodizer: dimension mismatch");
  if (V.dimension() >= d) throw PreconditionError("annihilator_from_periodizer: V must be a proper subspace");
  if (!meets_exactly_at_origin(g, V)) {
    throw PreconditionError("annihilator_from_periodizer: supp(g) must meet V exactly at the origin, got " +
                            std::to_string(support_in_subspace(g, V).size()) + " point(s) for g = " + g.to_string());
  }
  const ConfigView gc = apply_poly(g, c);
  const IntVector w = period_outside(gc, V, period_bound);
  for (std::int64_t n = 1; n <= n_bound; ++n) {
    const LaurentPoly f = difference_poly(n * w) * g;
    // With V trivial the corner of the later search is free, so only the
    // nontrivial case needs the origin to survive.
    const bool admissible = V.dimension() == 0 || meets_exactly_at_origin(f, V);
    if (!admissible) continue;
    const Verdict v = is_annihilated(f, c);
    if (!v.holds) {
      throw InvariantError("annihilator_from_periodizer: " + f.to_string() + " failed validation (" + v.to_string() +
                           ")");
    }
    return f;
  }
  throw InconclusiveError("annihilator_from_periodizer: no admissible n <= " + std::to_string(n_bound) +
                          " for period " + w.to_string());
}

DifferenceProduct search_difference_annihilator(const ConfigView& c, const LaurentPoly& f, std::int64_t bound,
                                                const std::optional<IntVector>& corner) {
  const std::size_t d = c.dim();
  if (f.dim() != d) throw DimensionError("search_difference_annihilator: dimension mismatch");
  if (f.term_count() < 2) throw PreconditionError("search_difference_annihilator: need |supp(f)| >= 2");
  std::vector<IntVector> corners = f.support();
  if (corner) {
    if (f.coefficient(*corner) == 0) {
      throw PreconditionError("search_difference_annihilator: corner " + corner->to_string() + " not in supp(f)");
    }
    corners = {*corner};
  }
  const Subject subject = Subject::of(c);
  // A multiplier known to make any single direction a period of every
  // relevant part of c.
  std::optional<std::int64_t> universal;
  if (c.is_periodic()) {
    universal = period_lattice(c.periodic()).index();
  } else if (c.is_fiber_sum()) {
    std::int64_t m = 1;
    for (const auto& fiber : c.fiber_sum().fibers()) m = lcm64(m, fiber.period);
    universal = m;
  }
  auto product = [&](const std::vector<IntVector>& dirs, const std::vector<std::int64_t>& mult) {
    DifferenceProduct dp;
    for (std::size_t i = 0; i < dirs.size(); ++i) dp.vectors.push_back(mult[i] * dirs[i]);
    return dp;
  };
  // On a window, a certificate must leave at least half the box in every
  // coordinate; larger shifts erode away the evidence they are judged on.
  auto observable = [&](const DifferenceProduct& dp) {
    if (!c.is_window()) return true;
    const Box& box = c.window().box();
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t width = 0;
      for (const auto& v : dp.vectors) width += v[i] < 0 ? -v[i] : v[i];
      if (2 * width > box.hi[i] - box.lo[i] + 1) return false;
    }
    return true;
  };

  for (const auto& u : corners) {
    std::set<IntVector> dir_set;
    for (const auto& ui : f.support()) {
      if (ui != u) dir_set.insert(primitive(ui - u));
    }
    const std::vector<IntVector> dirs(dir_set.begin(), dir_set.end());
    const std::size_t n = dirs.size();
    for (std::size_t r = 1; r <= n; ++r) {
      // Lexicographic r-subsets of the candidate directions.
      std::vector<std::size_t> idx(r);
      for (std::size_t i = 0; i < r; ++i) idx[i] = i;
      while (true) {
        std::vector<IntVector> chosen;
        for (auto i : idx) chosen.push_back(dirs[i]);
        std::vector<std::int64_t> mult(r, 0);
        if (universal) {
          std::fill(mult.begin(), mult.end(), *universal);
          if (!subject.annihilates(product(chosen, mult).expand(d))) std::fill(mult.begin(), mult.end(), 0);
        } else {
          for (std::int64_t m = 1; m <= bound; ++m) {
            std::fill(mult.begin(), mult.end(), m);
            if (!observable(product(chosen, mult))) {
              std::fill(mult.begin(), mult.end(), 0);
              break;
            }
            if (subject.annihilates(product(chosen, mult).expand(d))) break;
            std::fill(mult.begin(), mult.end(), 0);
          }
        }
        if (mult.front() != 0) {
          // Shrink each multiplier to the smallest that still works.
          for (std::size_t i = 0; i < r; ++i) {
            const std::int64_t top = mult[i];
            for (std::int64_t p = 1; p < top; ++p) {
              auto trial = mult;
              trial[i] = p;
              if (subject.annihilates(product(chosen, trial).expand(d))) {
                mult[i] = p;
                break;
              }
            }
          }
          DifferenceProduct dp = product(chosen, mult);
          const Verdict v = subject.annihilated_by(dp.expand(d));
          if (!v.holds) throw InvariantError("search_difference_annihilator: certificate failed revalidation");
          return dp;
        }
        // Next subset.
        std::size_t pos = r;
        while (pos > 0 && idx[pos - 1] == n - r + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < r; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  throw InconclusiveError("search_difference_annihilator: no certificate with multipliers <= " +
                          std::to_string(bound));
}

LaurentPoly build_periodizer(const std::vector<std::vector<IntVector>>& component_periods, const SubspaceBasis& V,
                             std::int64_t n_bound) {
  if (component_periods.empty()) throw PreconditionError("build_periodizer: no components");
  const std::size_t d = V.ambient_dim();
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < component_periods.size(); ++i) {
    const auto& ps = component_periods[i];
    auto it = std::find_if(ps.begin(), ps.end(), [&](const IntVector& b) { return !V.contains(b); });
    if (it == ps.end()) {
      throw PreconditionError("build_periodizer: component " + std::to_string(i + 1) + " has no period outside V");
    }
    if (it->size() != d) throw DimensionError("build_periodizer: dimension mismatch");
    chosen.push_back(*it);
  }
  LaurentPoly f = difference_poly(chosen.front());
  for (std::size_t i = 1; i < chosen.size(); ++i) {
    bool found = false;
    for (std::int64_t n = 1; n <= n_bound && !found; ++n) {
      LaurentPoly candidate = difference_poly(n * chosen[i]) * f;
      if (meets_exactly_at_origin(candidate, V)) {
        f = std::move(candidate);
        found = true;
      }
    }
    if (!found) {
      throw InconclusiveError("build_periodizer: no admissible n <= " + std::to_string(n_bound) + " for component " +
                              std::to_string(i + 1));
    }
  }
  if (!meets_exactly_at_origin(f, V)) throw InvariantError("build_periodizer: support condition failed");
  return f;
}

}  // namespace perdec
