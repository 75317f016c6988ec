#include "perdec/sparse.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

#include "perdec/error.hpp"
#include "perdec/lattice.hpp"

namespace perdec {
namespace {

std::size_t first_axis(const IntVector& dir) {
  std::size_t axis = 0;
  while (dir[axis] == 0) ++axis;
  return axis;
}

// Support counts of every cube C_m + t inside a window, via a
// d-dimensional summed-area table.
class SupportCounter {
 public:
  explicit SupportCounter(const WindowConfig& w) : box_(w.box()), dim_(w.dim()) {
    extent_.resize(dim_);
    stride_.assign(dim_, 1);
    for (std::size_t i = 0; i < dim_; ++i) extent_[i] = box_.hi[i] - box_.lo[i] + 2;
    for (std::size_t i = dim_; i-- > 1;) stride_[i - 1] = stride_[i] * extent_[i];
    std::size_t total = 1;
    for (auto e : extent_) total *= static_cast<std::size_t>(e);
    table_.assign(total, 0);
    box_.for_each([&](const IntVector& x) {
      if (w.at(x) != 0) table_[offset(x - box_.lo, 1)] = 1;
    });
    for (std::size_t axis = 0; axis < dim_; ++axis) {
      for (std::size_t k = 0; k < total; ++k) {
        const auto coord = static_cast<std::int64_t>(k / stride_[axis]) % extent_[axis];
        if (coord > 0) table_[k] += table_[k - stride_[axis]];
      }
    }
  }

  // Nonzero points of the window in [lo, hi] (both inside the box).
  std::int64_t count(const IntVector& lo, const IntVector& hi) const {
    std::int64_t s = 0;
    const std::size_t corners = std::size_t{1} << dim_;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      IntVector p(dim_);
      int sign = 1;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (mask & (std::size_t{1} << i)) {
          p[i] = lo[i] - box_.lo[i];
          sign = -sign;
        } else {
          p[i] = hi[i] - box_.lo[i] + 1;
        }
      }
      s += sign * table_[offset(p, 0)];
    }
    return s;
  }

 private:
  // Table index of relative point p + shift (table is offset by one).
  std::size_t offset(const IntVector& p, std::int64_t shift) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < dim_; ++i) k += static_cast<std::size_t>(p[i] + shift) * stride_[i];
    return k;
  }

  Box box_;
  std::size_t dim_;
  std::vector<std::int64_t> extent_;
  std::vector<std::size_t> stride_;
  std::vector<std::int64_t> table_;
};

// Scans cubes C_m + t for the given translates; records per-m maxima and
// the first violation.
void scan_cubes(const WindowConfig& w, const std::vector<IntVector>& translates_for_all_m, bool restrict_to_fit,
                std::int64_t a, std::int64_t m_max, SparsenessCertificate& cert) {
  const SupportCounter counter(w);
  const std::size_t d = w.dim();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    std::int64_t best = 0;
    auto visit = [&](const IntVector& t) {
      const Box c = cube(d, m, t);
      if (!w.box().contains(c)) return;
      const std::int64_t n = counter.count(c.lo, c.hi);
      best = std::max(best, n);
      if (n > a * m && !cert.violation) cert.violation = std::make_pair(m, t);
    };
    if (restrict_to_fit) {
      IntVector lo = w.box().lo;
      IntVector hi = w.box().hi;
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] += m;
        hi[i] -= m;
      }
      const Box ts(lo, hi);
      if (!ts.empty()) ts.for_each(visit);
    } else {
      for (const auto& t : translates_for_all_m) visit(t);
    }
    cert.checked_ranges.emplace_back(m, best);
  }
}

bool view_is_zero(const ConfigView& c) {
  switch (c.kind()) {
    case ConfigKind::Window:
      return std::all_of(c.window().values().begin(), c.window().values().end(),
                         [](const Integer& v) { return v == 0; });
    case ConfigKind::Periodic:
      return c.periodic().is_zero();
    case ConfigKind::FiberSum:
      return c.fiber_sum().is_zero();
  }
  return false;
}

// Box containing every canonical anchor of c, grown by `margin`.
Box anchor_box(const FiberSum& c, std::int64_t margin) {
  const std::size_t d = c.dim();
  IntVector lo(d), hi(d);
  bool first = true;
  for (const auto& f : c.fibers()) {
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = first ? f.anchor[i] : std::min(lo[i], f.anchor[i]);
      hi[i] = first ? f.anchor[i] : std::max(hi[i], f.anchor[i]);
    }
    first = false;
  }
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] -= margin;
    hi[i] += margin;
  }
  return Box(lo, hi);
}

// Largest k with the real line anchor + R dir + k step meeting `box`, or -1.
// Eliminates the line parameter t from lo <= anchor + k step + t dir <= hi.
std::int64_t last_meeting(const PeriodicFiber& f, const IntVector& step, const Box& box) {
  struct Affine {
    Rational a, b;  // a + b k
  };
  std::vector<Affine> lower, upper;
  Rational klo = 0;  // only k >= 0 matters
  std::optional<Rational> khi;
  auto bound_k = [&](const Rational& coef, const Rational& rhs) {  // coef k <= rhs
    if (coef == 0) {
      if (rhs < 0) klo = 1, khi = Rational(0);
      return;
    }
    const Rational q = rhs / coef;
    if (coef > 0) {
      if (!khi || q < *khi) khi = q;
    } else if (q > klo) {
      klo = q;
    }
  };
  for (std::size_t i = 0; i < step.size(); ++i) {
    const Rational L = box.lo[i] - f.anchor[i], H = box.hi[i] - f.anchor[i];
    const Rational w = step[i], u = f.direction[i];
    if (f.direction[i] == 0) {
      bound_k(w, H);
      bound_k(-w, -L);
      continue;
    }
    Affine from_lo{L / u, -w / u}, from_hi{H / u, -w / u};
    if (u > 0) {
      lower.push_back(from_lo);
      upper.push_back(from_hi);
    } else {
      lower.push_back(from_hi);
      upper.push_back(from_lo);
    }
  }
  for (const auto& l : lower) {
    for (const auto& h : upper) bound_k(l.b - h.b, h.a - l.a);
  }
  if (!khi) throw InvariantError("translate limit: line parallel to the step");
  if (*khi < klo) return -1;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), khi->get_num_mpz_t(), khi->get_den_mpz_t());
  return to_int64(fl);
}

std::int64_t lcm_periods(const FiberSum& c) {
  std::int64_t p = 1;
  for (const auto& f : c.fibers()) p = lcm64(p, f.period);
  return p;
}

// Equality of two views: exact for matching closed forms, otherwise on the
// shared window (or `fallback` when neither has one).
Verdict views_equal(const ConfigView& a, const ConfigView& b, const Box& fallback) {
  if (a.is_fiber_sum() && b.is_fiber_sum()) return Verdict::exact_result(a.fiber_sum() == b.fiber_sum());
  if (a.is_periodic() && b.is_periodic()) {
    return Verdict::exact_result(add_views({a, b}, {1, -1}).periodic().is_zero());
  }
  Box region = fallback;
  if (a.is_window() && b.is_window()) {
    region = box_intersection(a.window().box(), b.window().box());
  } else if (a.is_window()) {
    region = a.window().box();
  } else if (b.is_window()) {
    region = b.window().box();
  }
  if (region.empty()) throw DomainError("comparison windows do not intersect");
  const WindowConfig ra = rasterize(a, region);
  const WindowConfig rb = rasterize(b, region);
  return Verdict::window_result(ra == rb, region);
}

void require(const Verdict& v, const std::string& identity, std::vector<std::string>& log, bool& exact) {
  log.push_back(identity + ": " + v.to_string());
  if (!v.holds) throw InvariantError("verification failed: " + identity + " (" + v.to_string() + ")");
  exact = exact && v.exact;
}

}  // namespace

std::string SparsenessCertificate::to_string() const {
  std::ostringstream os;
  os << (holds ? "sparse" : "not sparse") << " with a = " << constant_a << (exact ? " (exact)" : " (evidence)");
  if (violation) os << "; violation at m = " << violation->first << ", t = " << violation->second;
  return os.str();
}

std::int64_t sparseness_constant(const FiberSum& c) {
  std::int64_t a = 0;
  for (const auto& f : c.fibers()) a += 2 / f.direction.max_norm() + 1;
  return a;
}

SparsenessCertificate check_sparseness(const ConfigView& c, std::int64_t a, std::int64_t m_max) {
  if (a < 1 || m_max < 1) throw PreconditionError("check_sparseness: a and m_max must be positive");
  SparsenessCertificate cert;
  cert.constant_a = a;
  const std::size_t d = c.dim();
  switch (c.kind()) {
    case ConfigKind::Window:
      scan_cubes(c.window(), {}, true, a, m_max, cert);
      cert.holds = !cert.violation;
      cert.exact = cert.violation.has_value();
      return cert;
    case ConfigKind::Periodic: {
      const auto& p = c.periodic();
      if (p.is_zero()) {
        cert.holds = cert.exact = true;
        return cert;
      }
      // Counts depend on t only modulo the lattice: residues cover all t.
      const auto residues = p.lattice().residues();
      IntVector lo(d), hi(d);
      for (std::size_t i = 0; i < d; ++i) {
        std::int64_t top = 0;
        for (const auto& r : residues) top = std::max(top, r[i]);
        lo[i] = -m_max;
        hi[i] = top + m_max;
      }
      scan_cubes(rasterize(c, Box(lo, hi)), residues, false, a, m_max, cert);
      cert.holds = !cert.violation;
      cert.exact = cert.violation.has_value();
      return cert;
    }
    case ConfigKind::FiberSum: {
      const auto& fs = c.fiber_sum();
      if (fs.is_zero()) {
        cert.holds = cert.exact = true;
        return cert;
      }
      std::int64_t reach = 0;
      for (const auto& f : fs.fibers()) reach = std::max(reach, f.period * f.direction.max_norm());
      const WindowConfig w = rasterize(c, anchor_box(fs, m_max + reach + 1));
      scan_cubes(w, {}, true, a, m_max, cert);
      if (a >= sparseness_constant(fs)) {
        if (cert.violation) throw InvariantError("check_sparseness: closed-form bound contradicted");
        cert.holds = cert.exact = true;
      } else {
        cert.holds = !cert.violation;
        cert.exact = cert.violation.has_value();
      }
      return cert;
    }
  }
  throw InvariantError("check_sparseness: unknown representation");
}

FiberExtraction fiber_extract(const ConfigView& c, const IntVector& v, std::int64_t period_bound) {
  if (v.size() != c.dim()) throw DimensionError("fiber_extract: dimension mismatch");
  const IntVector dir = primitive(v);
  const std::size_t d = c.dim();
  switch (c.kind()) {
    case ConfigKind::FiberSum: {
      for (const auto& f : c.fiber_sum().fibers()) {
        if (f.direction != dir) {
          throw PreconditionError("fiber_extract: fiber at " + f.anchor.to_string() + " runs along " +
                                  f.direction.to_string() + ", not " + dir.to_string());
        }
        if (f.period > period_bound) {
          throw InconclusiveError("fiber_extract: line through " + f.anchor.to_string() + " has period " +
                                  std::to_string(f.period) + " > " + std::to_string(period_bound));
        }
      }
      return {c.fiber_sum(), true};
    }
    case ConfigKind::Periodic: {
      const auto& p = c.periodic();
      if (p.is_zero()) return {FiberSum(d), true};
      if (d != 1) throw PreconditionError("fiber_extract: a nonzero periodic configuration in d >= 2 is not sparse");
      const std::int64_t n = p.lattice().index();
      if (n > period_bound) {
        throw InconclusiveError("fiber_extract: period " + std::to_string(n) + " > " + std::to_string(period_bound));
      }
      std::vector<Integer> vals;
      for (std::int64_t j = 0; j < n; ++j) vals.push_back(p.at(IntVector{j}));
      return {FiberSum(d, {make_fiber(IntVector{0}, IntVector{1}, vals)}), true};
    }
    case ConfigKind::Window:
      break;
  }
  const WindowConfig& w = c.window();
  const std::size_t axis = first_axis(dir);
  std::set<IntVector> lines;
  w.box().for_each([&](const IntVector& x) {
    if (w.at(x) == 0) return;
    const std::int64_t q = floor_div(x[axis], dir[axis]);
    lines.insert(x - q * dir);
  });
  std::vector<PeriodicFiber> fibers;
  for (const auto& anchor : lines) {
    // Positions j with anchor + j dir inside the box.
    std::int64_t jlo = INT64_MIN;
    std::int64_t jhi = INT64_MAX;
    for (std::size_t i = 0; i < d; ++i) {
      if (dir[i] == 0) continue;
      const std::int64_t a = w.box().lo[i] - anchor[i];
      const std::int64_t b = w.box().hi[i] - anchor[i];
      const std::int64_t lo_i = dir[i] > 0 ? -floor_div(-a, dir[i]) : -floor_div(-b, dir[i]);
      const std::int64_t hi_i = dir[i] > 0 ? floor_div(b, dir[i]) : floor_div(a, dir[i]);
      jlo = std::max(jlo, lo_i);
      jhi = std::min(jhi, hi_i);
    }
    std::vector<Integer> seg;
    for (std::int64_t j = jlo; j <= jhi; ++j) seg.push_back(w.at(anchor + j * dir));
    const auto len = static_cast<std::int64_t>(seg.size());
    std::int64_t period = 0;
    for (std::int64_t p = 1; p <= period_bound && period == 0; ++p) {
      bool ok = true;
      for (std::int64_t i = 0; i + p < len && ok; ++i) ok = seg[i] == seg[i + p];
      if (ok) period = p;
    }
    if (period == 0) {
      throw InconclusiveError("fiber_extract: line through " + anchor.to_string() + " along " + dir.to_string() +
                              " has no period <= " + std::to_string(period_bound) + " on the window");
    }
    if (2 * period > len) {
      throw DomainError("fiber_extract: window shows " + std::to_string(len) + " point(s) of the line through " +
                        anchor.to_string() + ", too few to observe period " + std::to_string(period) + " twice");
    }
    std::vector<Integer> vals(static_cast<std::size_t>(period));
    for (std::int64_t j = jlo; j < jlo + period; ++j) {
      vals[static_cast<std::size_t>(floor_mod(j, period))] = seg[static_cast<std::size_t>(j - jlo)];
    }
    fibers.push_back(make_fiber(anchor, dir, vals));
  }
  return {FiberSum(d, std::move(fibers)), false};
}

FiberLimit fiber_sum_translate_limit(const FiberSum& c, const IntVector& step) {
  if (step.size() != c.dim()) throw DimensionError("translate limit: dimension mismatch");
  if (step.is_zero()) throw PreconditionError("translate limit: zero step");
  const IntVector dir = primitive(step);
  std::int64_t s = 0;
  for (auto x : step) s = gcd64(s, x);
  FiberLimit out;
  std::vector<PeriodicFiber> survivors;
  for (const auto& f : c.fibers()) {
    if (f.direction != dir) continue;
    out.multiplier = lcm64(out.multiplier, f.period / gcd64(f.period, s));
    survivors.push_back(f);
  }
  out.limit = FiberSum(c.dim(), std::move(survivors));
  return out;
}

TranslateLimit stabilized_translate_limit(const ConfigView& c, const IntVector& step, const Box& window,
                                          std::int64_t k_max, std::int64_t patience) {
  if (step.size() != c.dim() || window.dim() != c.dim()) throw DimensionError("translate limit: dimension mismatch");
  if (step.is_zero()) throw PreconditionError("translate limit: zero step");
  if (patience < 1 || k_max < 0) throw PreconditionError("translate limit: patience must be positive");
  TranslateLimit out;
  std::optional<WindowConfig> closed;
  if (c.is_fiber_sum()) {
    const FiberLimit lim = fiber_sum_translate_limit(c.fiber_sum(), step);
    out.multiplier = lim.multiplier;
    closed = rasterize(ConfigView(lim.limit), window);
  } else if (c.is_periodic()) {
    const Lattice lattice = period_lattice(c.periodic());
    std::int64_t j = 1;
    while (!lattice.contains(j * step)) ++j;
    out.multiplier = j;
    closed = rasterize(c, window);
  }
  const IntVector effective = out.multiplier * step;
  // For a fiber sum the window is provably constant once every
  // non-parallel line has left it, so the run starts there.
  std::int64_t k_start = 0;
  if (c.is_fiber_sum()) {
    const IntVector dir = primitive(step);
    for (const auto& f : c.fiber_sum().fibers()) {
      if (f.direction != dir) k_start = std::max(k_start, last_meeting(f, effective, window) + 1);
    }
  }
  // k_max bounds the search; a computed start is not a search.
  const std::int64_t k_last = c.is_fiber_sum() ? k_start + patience - 1 : k_max;
  std::optional<WindowConfig> previous;
  std::int64_t run = 0;
  for (std::int64_t k = k_start; k <= k_last; ++k) {
    WindowConfig current = rasterize(translate(c, k * effective), window);
    if (previous && current == *previous) {
      ++run;
    } else {
      run = 1;
      out.stabilized_at = k;
    }
    if (run >= patience) {
      out.window = std::move(current);
      if (closed) {
        if (!(*closed == out.window)) {
          throw InvariantError("translate limit: stabilized window disagrees with the closed form on " +
                               window.to_string());
        }
        out.closed_form = true;
      }
      return out;
    }
    previous = std::move(current);
  }
  throw InconclusiveError("translate limit: no stabilization within k_max = " + std::to_string(k_max) +
                          " (patience " + std::to_string(patience) + ")");
}

namespace {

// Limit of translates of c along step, as a view: closed form for fiber
// sums and periodic configurations, stabilized window otherwise.
ConfigView limit_view(const ConfigView& c, const IntVector& step, const Bounds& bounds, const Box& check,
                      std::vector<std::string>& log) {
  if (c.is_fiber_sum()) {
    const FiberLimit lim = fiber_sum_translate_limit(c.fiber_sum(), step);
    if (!c.fiber_sum().is_zero()) {
      const TranslateLimit t = stabilized_translate_limit(c, step, check, bounds.kmax, bounds.patience);
      log.push_back("limit along " + step.to_string() + " x " + std::to_string(lim.multiplier) +
                    ": closed form agrees with stabilization at k = " + std::to_string(t.stabilized_at));
    }
    return lim.limit;
  }
  if (c.is_periodic()) return c;
  // Stabilize on the check box widened to the full domain in coordinates
  // the step does not move, so nested limits along other axes keep room.
  const Box& D = c.window().box();
  // Already step-invariant wherever both sides are observed: the window is its own limit.
  const Box overlap = box_intersection(D, D.shifted(step));
  if (!overlap.empty() &&
      rasterize(translate(c, step), overlap) == rasterize(c, overlap)) {
    log.push_back("limit along " + step.to_string() + ": window " + D.to_string() + " is already invariant");
    return c;
  }
  Box W = check;
  for (std::size_t i = 0; i < W.dim(); ++i) {
    if (step[i] == 0) {
      W.lo[i] = std::min(W.lo[i], D.lo[i]);
      W.hi[i] = std::max(W.hi[i], D.hi[i]);
    }
  }
  std::int64_t K = 0;
  while (K < bounds.kmax && D.shifted((K + 1) * step).contains(W)) ++K;
  if (!D.contains(W) || K < bounds.patience) {
    throw DomainError("limit along " + step.to_string() + ": window " + D.to_string() + " admits only " +
                      std::to_string(K) + " translate(s) covering " + W.to_string() + ", patience is " +
                      std::to_string(bounds.patience));
  }
  const TranslateLimit t = stabilized_translate_limit(c, step, W, K, bounds.patience);
  log.push_back("limit along " + step.to_string() + ": window " + W.to_string() + " stabilized at k = " +
                std::to_string(t.stabilized_at));
  return t.window;
}

ConfigView as_view(const FiberSum& f) { return ConfigView(f); }

}  // namespace

SparseSplit sparse_split2(const ConfigView& c, const LaurentPoly& phi, const LaurentPoly& psi, const Bounds& bounds,
                          const Box& check) {
  const IntVector v = line_form(phi).step;
  const IntVector u = line_form(psi).step;
  if (v == u) throw PreconditionError("sparse_split2: phi and psi are parallel along " + v.to_string());
  SparseSplit out;
  bool exact = true;
  require(is_annihilated(phi * psi, c), "phi psi c = 0", out.log, exact);

  const ConfigView e1 = apply_poly(psi, c);
  const FiberExtraction f1 = fiber_extract(e1, v, bounds.period);
  const std::int64_t p = lcm_periods(f1.fibers);
  const ConfigView e2 = apply_poly(phi, c);
  const FiberExtraction f2 = fiber_extract(e2, u, bounds.period);
  const std::int64_t q = lcm_periods(f2.fibers);
  out.log.push_back("e1 = psi c is " + std::to_string(p) + v.to_string() + "-periodic; e2 = phi c is " +
                    std::to_string(q) + u.to_string() + "-periodic");

  const ConfigView c1 = limit_view(c, p * v, bounds, check, out.log);
  const ConfigView c2 = limit_view(c, q * u, bounds, check, out.log);
  require(is_annihilated(phi, c1), "phi c1 = 0", out.log, exact);
  require(views_equal(apply_poly(psi, c1), e1, check), "psi c1 = e1", out.log, exact);
  require(is_annihilated(psi, c2), "psi c2 = 0", out.log, exact);
  require(views_equal(apply_poly(phi, c2), e2, check), "phi c2 = e2", out.log, exact);
  require(views_equal(add_views({c1, c2}, {1, 1}), c, check), "c = c1 + c2", out.log, exact);

  out.first = fiber_extract(c1, v, bounds.period);
  out.second = fiber_extract(c2, u, bounds.period);
  out.first.exact = out.first.exact && exact && f1.exact;
  out.second.exact = out.second.exact && exact && f2.exact;
  return out;
}

namespace {

std::vector<FiberExtraction> sparse_rec(const ConfigView& c, const std::vector<LaurentPoly>& phis,
                                        const std::vector<IntVector>& dirs, std::size_t n, const Bounds& bounds,
                                        const Box& check, std::vector<std::string>& log) {
  const std::string level = "n = " + std::to_string(n);
  if (n == 1) {
    auto fe = fiber_extract(c, dirs[0], bounds.period);
    log.push_back(level + ": " + std::to_string(fe.fibers.fibers().size()) + " fiber(s) along " + dirs[0].to_string());
    return {fe};
  }
  bool exact = true;
  const LaurentPoly& phi_n = phis[n - 1];
  const ConfigView cprime = apply_poly(phi_n, c);
  const auto sub = sparse_rec(cprime, phis, dirs, n - 1, bounds, check, log);
  std::vector<FiberExtraction> out;
  std::vector<ConfigView> parts{c};
  std::vector<Integer> coefs{1};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    exact = exact && sub[i].exact;
    const std::int64_t k = lcm_periods(sub[i].fibers);
    const ConfigView e = limit_view(c, k * dirs[i], bounds, check, log);
    require(views_equal(apply_poly(phi_n, e), as_view(sub[i].fibers), check),
            level + ": phi_n e = c'_" + std::to_string(i + 1), log, exact);
    SparseSplit split = sparse_split2(e, phis[i], phi_n, bounds, check);
    for (auto& line : split.log) log.push_back(level + ", split " + std::to_string(i + 1) + ": " + line);
    require(views_equal(apply_poly(phi_n, ConfigView(split.first.fibers)), as_view(sub[i].fibers), check),
            level + ": phi_n c_" + std::to_string(i + 1) + " = c'_" + std::to_string(i + 1), log, exact);
    parts.emplace_back(split.first.fibers);
    coefs.emplace_back(-1);
    out.push_back(split.first);
  }
  const ConfigView residual = add_views(parts, coefs);
  FiberExtraction last = fiber_extract(residual, dirs[n - 1], bounds.period);
  last.exact = last.exact && exact;
  require(is_annihilated(phi_n, ConfigView(last.fibers)), level + ": phi_n c_n = 0", log, exact);
  out.push_back(last);
  return out;
}

}  // namespace

SparseDecomposition sparse_decompose(const ConfigView& c, const std::vector<LaurentPoly>& phis, const Bounds& bounds,
                                     const Box& check) {
  if (phis.empty()) throw PreconditionError("sparse_decompose: empty product");
  std::vector<IntVector> dirs;
  for (const auto& phi : phis) {
    if (phi.dim() != c.dim()) throw DimensionError("sparse_decompose: dimension mismatch");
    dirs.push_back(line_form(phi).step);
  }
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      if (dirs[i] == dirs[j]) {
        throw PreconditionError("sparse_decompose: factors " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " are parallel");
      }
    }
  }
  SparseDecomposition out;
  out.directions = dirs;
  LaurentPoly product = LaurentPoly::constant(c.dim(), 1);
  for (const auto& phi : phis) product = product * phi;
  bool exact = true;
  require(is_annihilated(product, c), "product annihilates c", out.log, exact);

  const auto parts = sparse_rec(c, phis, dirs, phis.size(), bounds, check, out.log);
  std::vector<ConfigView> views;
  std::vector<Integer> coefs;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    exact = exact && parts[i].exact;
    require(is_annihilated(phis[i], ConfigView(parts[i].fibers)), "phi_" + std::to_string(i + 1) + " c_" +
                                                                      std::to_string(i + 1) + " = 0",
            out.log, exact);
    out.families.push_back(parts[i].fibers);
    views.emplace_back(parts[i].fibers);
    coefs.emplace_back(1);
  }
  require(views_equal(add_views(views, coefs), c, check), "sum of families = c", out.log, exact);
  out.exact = exact;
  return out;
}

SparseDecomposition sparse_full(const ConfigView& c, const LaurentPoly& f, const Bounds& bounds, const Box& check) {
  if (view_is_zero(c)) {
    SparseDecomposition out;
    out.exact = !c.is_window();
    out.log.push_back("zero configuration: no fibers");
    return out;
  }
  const DifferenceProduct dp = search_difference_annihilator(c, f, bounds.search);
  SparseDecomposition out = sparse_decompose(c, dp.factors(), bounds, check);
  out.log.insert(out.log.begin(), "certificate " + dp.to_string());
  return out;
}

}  // namespace perdec
