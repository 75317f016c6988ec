#include <mutex>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "perdec/decompose.hpp"
#include "perdec/error.hpp"

namespace perdec {
namespace {

// c along one line base + a1*v1: values for a1 = 0, 1, ... (band included)
// and for a1 = -1, -2, ...
struct LineCache {
  std::vector<Rational> forward;
  std::vector<Rational> backward;
};

class TransferField final : public Field {
 public:
  TransferField(FieldPtr source, LineForm form, std::shared_ptr<const CosetSystem> cosets)
      : source_(std::move(source)), form_(std::move(form)), cosets_(std::move(cosets)) {}

  std::size_t dim() const override { return source_->dim(); }

  Rational value(const IntVector& x) const override {
    const auto coords = cosets_->coordinates(x);
    const std::int64_t a1 = coords[0];
    const IntVector base = x - a1 * form_.step;
    std::lock_guard lock(mutex_);
    LineCache& line = cache_[base];
    return at(line, base, a1);
  }

  std::string describe() const override { return "transfer solution over [" + source_->describe() + "]"; }

 private:
  // c''(y) = c'(y + shift): the right-hand side for the normalized phi.
  Rational rhs(const IntVector& base, std::int64_t a1) const {
    return source_->value(base + a1 * form_.step + form_.shift);
  }

  Rational at(LineCache& line, const IntVector& base, std::int64_t a1) const {
    const auto n = static_cast<std::int64_t>(form_.degree());
    const auto& alpha = form_.alphas;
    if (a1 >= 0) {
      while (static_cast<std::int64_t>(line.forward.size()) <= a1) {
        const auto t = static_cast<std::int64_t>(line.forward.size());
        if (t < n) {
          line.forward.emplace_back(0);
          continue;
        }
        Rational s = rhs(base, t);
        for (std::int64_t j = 1; j <= n; ++j) s -= Rational(alpha[j]) * line.forward[t - j];
        line.forward.push_back(s / Rational(alpha[0]));
      }
      return line.forward[a1];
    }
    while (static_cast<std::int64_t>(line.backward.size()) < -a1) {
      const std::int64_t t = -1 - static_cast<std::int64_t>(line.backward.size());
      Rational s = rhs(base, t + n);
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t idx = t + n - j;
        // idx > t; the band [0, n) is zero.
        const Rational& v = idx >= 0 ? zero_ : line.backward[-1 - idx];
        s -= Rational(alpha[j]) * v;
      }
      line.backward.push_back(s / Rational(alpha[n]));
    }
    return line.backward[-1 - a1];
  }

  FieldPtr source_;
  LineForm form_;
  std::shared_ptr<const CosetSystem> cosets_;
  const Rational zero_ = 0;
  mutable std::mutex mutex_;
  mutable std::unordered_map<IntVector, LineCache> cache_;
};

void check_periods(const std::vector<IntVector>& periods, const SubspaceBasis& V) {
  if (periods.size() != V.dimension() || rank_rational(periods) != periods.size()) {
    throw PreconditionError("transfer: need " + std::to_string(V.dimension()) +
                            " independent period vectors spanning V");
  }
  for (const auto& b : periods) {
    if (!V.contains(b)) throw PreconditionError("transfer: period " + b.to_string() + " is not in V");
  }
}

}  // namespace

std::string TransferSolution::gauge() const {
  std::ostringstream os;
  os << "cosets of Z[";
  for (std::size_t i = 0; i < cosets->generators().size(); ++i) {
    os << (i ? ", " : "") << cosets->generators()[i];
  }
  os << "], Hermite representatives, c = 0 for a1 in [0," << band << ")";
  return os.str();
}

TransferSolution solve_transfer(const LaurentPoly& phi, const LaurentPoly& psi, FieldPtr cprime,
                                const SubspaceBasis& V, const std::vector<IntVector>& periods,
                                const std::optional<Box>& check_box) {
  const std::size_t d = cprime->dim();
  if (phi.dim() != d || psi.dim() != d || V.ambient_dim() != d) {
    throw DimensionError("solve_transfer: dimension mismatch");
  }
  const LineForm phi_form = line_form(phi);
  const LineForm psi_form = line_form(psi);
  if (phi_form.step == psi_form.step) {
    throw PreconditionError("solve_transfer: phi and psi have parallel directions " + phi_form.step.to_string());
  }
  if (!span_meets_trivially(phi_form.step, psi_form.step, V)) {
    throw PreconditionError("solve_transfer: span of " + phi_form.step.to_string() + " and " +
                            psi_form.step.to_string() + " meets V nontrivially");
  }
  check_periods(periods, V);

  if (const ConfigView* view = as_view(cprime)) {
    const Verdict v = is_annihilated(psi, *view);
    if (!v.holds) throw PreconditionError("solve_transfer: psi does not annihilate c' (" + v.to_string() + ")");
  } else if (check_box) {
    const Verdict v = annihilated_on(psi, *cprime, *check_box);
    if (!v.holds) throw PreconditionError("solve_transfer: psi does not annihilate c' (" + v.to_string() + ")");
    for (const auto& b : periods) {
      if (!is_period_on(*cprime, b, *check_box)) {
        throw PreconditionError("solve_transfer: " + b.to_string() + " is not a period of c' on " +
                                check_box->to_string());
      }
    }
  }

  std::vector<IntVector> generators{phi_form.step, psi_form.step};
  generators.insert(generators.end(), periods.begin(), periods.end());
  auto cosets = std::make_shared<const CosetSystem>(d, generators);

  TransferSolution out;
  out.source = cprime;
  out.phi = phi;
  out.psi = psi;
  out.V = V;
  out.periods = periods;
  out.cosets = cosets;
  out.phi_form = phi_form;
  out.band = phi_form.degree();
  out.evaluator = std::make_shared<TransferField>(cprime, phi_form, cosets);
  return out;
}

TransferSolution solve_transfer(const LaurentPoly& phi, const LaurentPoly& psi, const ConfigView& cprime,
                                const SubspaceBasis& V) {
  return solve_transfer(phi, psi, view_field(cprime), V, periods_in_subspace(cprime, V));
}

}  // namespace perdec
