#include "perdec/decompose.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <utility>

#include "perdec/error.hpp"

namespace perdec {
namespace {

std::string subspace_string(const SubspaceBasis& V) {
  if (V.dimension() == 0) return "{0}";
  std::ostringstream os;
  os << "span{";
  const auto rows = V.integer_basis();
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ", " : "") << rows[i];
  os << "}";
  return os.str();
}

std::string vectors_string(const std::vector<IntVector>& vs) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << vs[i];
  os << "]";
  return os.str();
}

// Rethrows the active exception with `context` prepended, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const InconclusiveError& e) {
    throw InconclusiveError(context + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(context + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(context + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(context + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(context + ": " + e.what());
  } catch (const Error& e) {
    throw Error(context + ": " + e.what());
  }
}

void check_periods(const std::vector<IntVector>& periods, const SubspaceBasis& V) {
  if (periods.size() != V.dimension() || rank_rational(periods) != periods.size()) {
    throw PreconditionError("need " + std::to_string(V.dimension()) + " independent period vectors spanning " +
                            subspace_string(V));
  }
  for (const auto& b : periods) {
    if (!V.contains(b)) throw PreconditionError("period " + b.to_string() + " is not in " + subspace_string(V));
  }
}

// f g, staying inside the configuration types whenever g is one.
FieldPtr act(const LaurentPoly& f, const FieldPtr& g) {
  if (const ConfigView* view = as_view(g)) return view_field(apply_poly(f, *view));
  return action_field(f, g);
}

std::int64_t lcm_of_denominators(const RationalVector& q) {
  std::int64_t l = 1;
  for (const auto& x : q) l = lcm64(l, to_int64(Integer(x.get_den())));
  return l;
}

// Window evidence that `shift` is a period: agreement wherever both points lie in the box.
bool window_period(const WindowConfig& w, const IntVector& shift) {
  const Box overlap = box_intersection(w.box(), w.box().shifted(-shift));
  if (overlap.empty()) return false;
  bool ok = true;
  overlap.for_each([&](const IntVector& x) {
    if (ok && w.at(x) != w.at(x + shift)) ok = false;
  });
  return ok;
}

}  // namespace

Subject Subject::of(const ConfigView& c) {
  Subject s;
  s.field_ = view_field(c);
  s.view_ = c;
  if (c.is_window()) s.evidence_ = c.window().box();
  return s;
}

Subject Subject::of(FieldPtr g, Box evidence) {
  if (const ConfigView* view = as_view(g)) return of(*view);
  if (evidence.dim() != g->dim()) throw DimensionError("subject: evidence box dimension mismatch");
  Subject s;
  s.field_ = std::move(g);
  s.evidence_ = std::move(evidence);
  return s;
}

Verdict Subject::annihilated_by(const LaurentPoly& f) const {
  if (view_) return is_annihilated(f, *view_);
  return annihilated_on(f, *field_, evidence_);
}

bool Subject::annihilates(const LaurentPoly& f) const {
  try {
    return annihilated_by(f).holds;
  } catch (const DomainError&) {
    return false;
  }
}

Subject Subject::acted(const LaurentPoly& f) const {
  if (view_) return of(apply_poly(f, *view_));
  return of(action_field(f, field_), evidence_);
}

std::vector<IntVector> periods_in_subspace(const ConfigView& c, const SubspaceBasis& V, std::int64_t bound) {
  if (V.ambient_dim() != c.dim()) throw DimensionError("periods_in_subspace: dimension mismatch");
  std::vector<IntVector> out;
  if (V.dimension() == 0) return out;
  std::optional<Lattice> lattice;
  if (c.is_periodic()) lattice = period_lattice(c.periodic());
  for (const auto& u : V.integer_basis()) {
    std::int64_t m = 0;
    if (lattice) {
      const std::int64_t limit = lattice->index();
      for (std::int64_t k = 1; k <= limit && m == 0; ++k) {
        if (lattice->contains(k * u)) m = k;
      }
    } else if (c.is_fiber_sum()) {
      const auto& fs = c.fiber_sum();
      m = 1;
      const IntVector dir = primitive(u);
      std::int64_t s = 0;
      for (auto x : u) s = gcd64(s, x);
      for (const auto& fiber : fs.fibers()) {
        if (fiber.direction != dir) {
          throw PreconditionError("fiber sum is not periodic along " + u.to_string() + ": fiber in direction " +
                                  fiber.direction.to_string());
        }
        m = lcm64(m, fiber.period / gcd64(fiber.period, s));
      }
    } else {
      for (std::int64_t k = 1; k <= bound && m == 0; ++k) {
        if (window_period(c.window(), k * u)) m = k;
      }
    }
    if (m == 0) {
      throw PreconditionError("configuration shows no period along " + u.to_string() + " (multiples up to " +
                              std::to_string(bound) + ")");
    }
    out.push_back(m * u);
  }
  return out;
}

FieldPtr Decomposition::sum() const {
  if (components.empty()) {
    return function_field(dim, [](const IntVector&) { return Rational(0); }, "zero");
  }
  std::vector<FieldPtr> terms;
  for (const auto& comp : components) terms.push_back(comp.field);
  return combination_field(std::move(terms), std::vector<Rational>(components.size(), Rational(1)));
}

LaurentPoly DifferenceProduct::expand(std::size_t dim) const {
  LaurentPoly out = LaurentPoly::constant(dim, 1);
  for (const auto& v : vectors) out = out * difference_poly(v);
  return out;
}

std::vector<LaurentPoly> DifferenceProduct::factors() const {
  std::vector<LaurentPoly> out;
  for (const auto& v : vectors) out.push_back(difference_poly(v));
  return out;
}

std::string DifferenceProduct::to_string() const {
  if (vectors.empty()) return "1";
  std::ostringstream os;
  for (const auto& v : vectors) os << "(X^" << v << " - 1)";
  return os.str();
}

namespace {

std::vector<FieldPtr> decompose_rec(const std::vector<LaurentPoly>& phis, std::size_t m, const FieldPtr& c,
                                    const SubspaceBasis& V, const std::vector<IntVector>& periods,
                                    const std::optional<Box>& check_box, std::vector<std::string>& log) {
  if (m == 1) return {c};
  const LaurentPoly& phi_m = phis[m - 1];
  const FieldPtr cprime = act(phi_m, c);
  const auto sub = decompose_rec(phis, m - 1, cprime, V, periods, check_box, log);
  std::vector<FieldPtr> parts;
  std::vector<FieldPtr> residual_terms{c};
  std::vector<Rational> residual_coefs{Rational(1)};
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const TransferSolution t = solve_transfer(phi_m, phis[i], sub[i], V, periods, check_box);
    log.push_back("level " + std::to_string(m) + ": lift component " + std::to_string(i + 1) + " through " +
                  phi_m.to_string() + "; gauge " + t.gauge());
    parts.push_back(t.evaluator);
    residual_terms.push_back(t.evaluator);
    residual_coefs.emplace_back(-1);
  }
  parts.push_back(combination_field(std::move(residual_terms), std::move(residual_coefs)));
  return parts;
}

}  // namespace

Decomposition decompose_product(const std::vector<LaurentPoly>& phis, FieldPtr c, const SubspaceBasis& V,
                                const std::vector<IntVector>& periods, const std::optional<Box>& check_box) {
  const std::size_t d = c->dim();
  if (phis.empty()) throw PreconditionError("decompose_product: empty product");
  if (V.ambient_dim() != d) throw DimensionError("decompose_product: dimension mismatch");
  std::vector<LineForm> forms;
  for (const auto& phi : phis) {
    if (phi.dim() != d) throw DimensionError("decompose_product: dimension mismatch");
    forms.push_back(line_form(phi));
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (forms[i].step == forms[j].step) {
        throw PreconditionError("decompose_product: factors " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " are parallel");
      }
      if (!span_meets_trivially(forms[i].step, forms[j].step, V)) {
        throw PreconditionError("decompose_product: span of " + forms[i].step.to_string() + " and " +
                                forms[j].step.to_string() + " meets " + subspace_string(V));
      }
    }
  }
  check_periods(periods, V);
  LaurentPoly product = LaurentPoly::constant(d, 1);
  for (const auto& phi : phis) product = product * phi;
  if (const ConfigView* view = as_view(c)) {
    const Verdict v = is_annihilated(product, *view);
    if (!v.holds) throw PreconditionError("decompose_product: product does not annihilate c (" + v.to_string() + ")");
  } else if (check_box) {
    const Verdict v = annihilated_on(product, *c, *check_box);
    if (!v.holds) throw PreconditionError("decompose_product: product does not annihilate c (" + v.to_string() + ")");
  }

  Decomposition out;
  out.dim = d;
  const auto parts = decompose_rec(phis, phis.size(), c, V, periods, check_box, out.log);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    Component comp;
    comp.field = parts[i];
    comp.annihilator = phis[i];
    comp.direction = forms[i].step;
    comp.periods = periods;
    if (forms[i].is_difference()) {
      comp.periods.push_back(static_cast<std::int64_t>(forms[i].degree()) * forms[i].step);
    }
    comp.V = SubspaceBasis::span(d, comp.periods);
    out.components.push_back(std::move(comp));
  }
  return out;
}

Decomposition decompose_product(const std::vector<LaurentPoly>& phis, const ConfigView& c, const SubspaceBasis& V) {
  return decompose_product(phis, view_field(c), V, periods_in_subspace(c, V));
}

DifferenceProduct reduce_annihilator(const DifferenceProduct& dp, const Subject& e, const SubspaceBasis& V,
                                     const std::vector<IntVector>& periods, std::int64_t search_bound) {
  const std::size_t d = e.dim();
  check_periods(periods, V);
  for (const auto& v : dp.vectors) {
    if (v.size() != d) throw DimensionError("reduce_annihilator: dimension mismatch");
    if (V.contains(v)) throw PreconditionError("reduce_annihilator: " + v.to_string() + " lies in " + subspace_string(V));
  }
  if (!e.annihilates(dp.expand(d))) {
    throw PreconditionError("reduce_annihilator: " + dp.to_string() + " does not annihilate the input");
  }
  DifferenceProduct cur = dp;
  auto without = [&](std::size_t a, std::size_t b) {
    DifferenceProduct rest;
    for (std::size_t i = 0; i < cur.vectors.size(); ++i) {
      if (i != a && i != b) rest.vectors.push_back(cur.vectors[i]);
    }
    return rest;
  };
  // Rule (a): a parallel pair collapses to one factor X^{p w} - 1.
  auto merge_parallel = [&](std::size_t a, std::size_t b) {
    const IntVector w = primitive(cur.vectors[a]);
    DifferenceProduct rest = without(a, b);
    for (std::int64_t p = 1; p <= search_bound; ++p) {
      DifferenceProduct trial = rest;
      trial.vectors.insert(trial.vectors.begin() + static_cast<std::ptrdiff_t>(std::min(a, trial.vectors.size())),
                           p * w);
      if (e.annihilates(trial.expand(d))) {
        cur = trial;
        return;
      }
    }
    throw InconclusiveError("reduce_annihilator: no period p <= " + std::to_string(search_bound) + " in direction " +
                            w.to_string());
  };

  while (true) {
    bool changed = false;
    for (std::size_t a = 0; a < cur.vectors.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < cur.vectors.size() && !changed; ++b) {
        if (parallel(cur.vectors[a], cur.vectors[b])) {
          merge_parallel(a, b);
          changed = true;
        }
      }
    }
    if (changed) continue;
    for (std::size_t a = 0; a < cur.vectors.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < cur.vectors.size() && !changed; ++b) {
        if (span_meets_trivially(cur.vectors[a], cur.vectors[b], V)) continue;
        // Rule (b): p' v_b = p v_a + v with v in V.
        std::vector<IntVector> gens{cur.vectors[b], cur.vectors[a]};
        const auto basis = V.integer_basis();
        gens.insert(gens.end(), basis.begin(), basis.end());
        const auto kernel = integer_kernel(d, gens);
        const std::vector<Integer>* rel = nullptr;
        for (const auto& k : kernel) {
          if (k[0] != 0 || k[1] != 0) {
            rel = &k;
            break;
          }
        }
        if (rel == nullptr) throw InvariantError("reduce_annihilator: span collision without a relation");
        std::int64_t p_prime = to_int64((*rel)[0]);
        std::int64_t p = -to_int64((*rel)[1]);
        if (p < 0) {
          p = -p;
          p_prime = -p_prime;
        }
        const IntVector v = p_prime * cur.vectors[b] - p * cur.vectors[a];
        // Scale so that s v is a known period of e.
        const auto coords = solve_in_span(periods, to_rational(v));
        if (!coords) throw InvariantError("reduce_annihilator: " + v.to_string() + " not in the span of the periods");
        const std::int64_t s = lcm_of_denominators(*coords);
        DifferenceProduct trial = cur;
        trial.vectors[b] = (s * p) * cur.vectors[a];
        if (!e.annihilates(trial.expand(d))) {
          throw InvariantError("reduce_annihilator: substitution " + (s * p_prime * cur.vectors[b]).to_string() +
                               " -> " + trial.vectors[b].to_string() + " failed validation");
        }
        cur = trial;
        merge_parallel(a, b);
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (!e.annihilates(cur.expand(d))) throw InvariantError("reduce_annihilator: result failed validation");
  return cur;
}

namespace {

// Periods of `p` made common with the lattice spanned by `q` (same span).
std::vector<IntVector> common_periods(const std::vector<IntVector>& p, const std::vector<IntVector>& q) {
  std::vector<IntVector> out;
  const Lattice lq(p.empty() ? 0 : p.front().size(), q);
  for (const auto& b : p) {
    const auto coords = solve_in_span(q, to_rational(b));
    if (!coords) throw InvariantError("regroup: periods span different subspaces");
    std::int64_t s = lcm_of_denominators(*coords);
    // Rational coordinates are integral at s; the Hermite lattice check is
    // the authority.
    while (!lq.contains(s * b)) ++s;
    out.push_back(s * b);
  }
  return out;
}

std::vector<Component> regroup(std::vector<Component> comps) {
  std::vector<Component> out;
  for (auto& comp : comps) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Component& o) { return o.V == comp.V; });
    if (it == out.end()) {
      out.push_back(std::move(comp));
      continue;
    }
    it->periods = common_periods(it->periods, comp.periods);
    it->field = combination_field({it->field, comp.field}, {Rational(1), Rational(1)});
    it->annihilator = difference_poly(it->periods.back());
    it->direction = primitive(it->periods.back());
  }
  return out;
}

}  // namespace

Decomposition k_periodic_decompose(const ConfigView& c, std::size_t k, const PeriodizerOracle& oracle,
                                   const Bounds& bounds, const Box& evidence) {
  const std::size_t d = c.dim();
  if (k < 1 || k > d) throw PreconditionError("k_periodic_decompose: need 1 <= k <= " + std::to_string(d));
  Decomposition out;
  out.dim = d;

  const SubspaceBasis trivial = SubspaceBasis::trivial(d);
  std::vector<Component> current;
  try {
    const LaurentPoly g = oracle(trivial);
    const LaurentPoly f = annihilator_from_periodizer(g, c, trivial, bounds.search, bounds.period);
    const DifferenceProduct dp = search_difference_annihilator(c, f, bounds.search);
    out.log.push_back("level 1: periodizer " + g.to_string() + " -> annihilator " + f.to_string() + " -> " +
                      dp.to_string());
    Decomposition first = decompose_product(dp.factors(), c, trivial);
    out.log.insert(out.log.end(), first.log.begin(), first.log.end());
    current = regroup(std::move(first.components));
  } catch (const Error&) {
    rethrow_with_context("level 1, V = {0}");
  }

  for (std::size_t level = 2; level <= k; ++level) {
    std::vector<Component> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      const Component& e = current[i];
      const std::string where = "level " + std::to_string(level) + ", V = " + subspace_string(e.V);
      try {
        const LaurentPoly g = oracle(e.V);
        const LaurentPoly f = annihilator_from_periodizer(g, c, e.V, bounds.search, bounds.period);
        DifferenceProduct dp = search_difference_annihilator(c, f, bounds.search, IntVector::zero(d));
        for (std::size_t j = 0; j < current.size(); ++j) {
          if (j == i) continue;
          const auto& pj = current[j].periods;
          auto w = std::find_if(pj.begin(), pj.end(), [&](const IntVector& b) { return !e.V.contains(b); });
          if (w == pj.end()) {
            throw InvariantError("component " + std::to_string(j + 1) + " has no period outside " +
                                 subspace_string(e.V));
          }
          dp.vectors.push_back(*w);
        }
        const Subject subject = Subject::of(e.field, evidence);
        const DifferenceProduct reduced = reduce_annihilator(dp, subject, e.V, e.periods, bounds.search);
        out.log.push_back(where + ": periodizer " + g.to_string() + " -> annihilator " + f.to_string() + " -> " +
                          dp.to_string() + " -> reduced " + reduced.to_string());
        Decomposition sub = decompose_product(reduced.factors(), e.field, e.V, e.periods, evidence);
        out.log.insert(out.log.end(), sub.log.begin(), sub.log.end());
        for (auto& comp : sub.components) next.push_back(std::move(comp));
      } catch (const Error&) {
        rethrow_with_context(where);
      }
    }
    current = regroup(std::move(next));
    out.log.push_back("level " + std::to_string(level) + ": " + std::to_string(current.size()) + " component(s)");
  }
  for (const auto& comp : current) {
    out.log.push_back("component periods " + vectors_string(comp.periods));
  }
  out.components = std::move(current);
  return out;
}

}  // namespace perdec
