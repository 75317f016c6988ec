#include "perdec/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "perdec/error.hpp"

namespace perdec {
namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

IntegerMatrix to_integer_matrix(const std::vector<IntVector>& rows) {
  IntegerMatrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Integer> row;
    row.reserve(r.size());
    for (auto c : r) row.emplace_back(static_cast<long>(c));
    m.push_back(std::move(row));
  }
  return m;
}

IntVector to_int_vector(const std::vector<Integer>& row) {
  std::vector<std::int64_t> out;
  out.reserve(row.size());
  for (const auto& c : row) out.push_back(to_int64(c));
  return IntVector(std::move(out));
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void check_dims(std::size_t dim, const std::vector<IntVector>& vs) {
  for (const auto& v : vs) {
    if (v.size() != dim) throw DimensionError("vector " + v.to_string() + " has wrong dimension");
  }
}

// Gauss-Jordan over Q. Returns pivot columns; `m` is left in RREF with zero
// rows removed.
std::vector<std::size_t> rref_in_place(std::vector<RationalVector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Row-style Hermite reduction. When `transform` is non-null it receives the
// unimodular U with U * input = output (rows in the same order, zero rows
// last).
std::vector<std::size_t> hermite_in_place(IntegerMatrix& h, std::size_t cols, IntegerMatrix* transform) {
  const std::size_t n = h.size();
  if (transform) {
    transform->assign(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) (*transform)[i][i] = 1;
  }
  auto row_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < cols; ++j) h[dst][j] -= q * h[src][j];
    if (transform) {
      for (std::size_t j = 0; j < n; ++j) (*transform)[dst][j] -= q * (*transform)[src][j];
    }
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    std::swap(h[a], h[b]);
    if (transform) std::swap((*transform)[a], (*transform)[b]);
  };
  auto row_neg = [&](std::size_t a) {
    for (auto& x : h[a]) x = -x;
    if (transform) {
      for (auto& x : (*transform)[a]) x = -x;
    }
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    while (true) {
      std::size_t best = n;
      for (std::size_t i = r; i < n; ++i) {
        if (h[i][c] != 0 && (best == n || abs(h[i][c]) < abs(h[best][c]))) best = i;
      }
      if (best == n) break;
      row_swap(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (h[i][c] == 0) continue;
        row_sub(i, r, floor_div(h[i][c], h[r][c]));
        if (h[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][c] == 0) continue;
    if (h[r][c] < 0) row_neg(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h[i][c], h[r][c]);
      if (q != 0) row_sub(i, r, q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_rational(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().size();
  check_dims(cols, vectors);
  IntegerMatrix m = to_integer_matrix(vectors);
  // Bareiss fraction-free elimination.
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t sel = rank;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[rank], m[sel]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  auto m = vectors;
  return rref_in_place(m, m.front().size()).size();
}

IntVector primitive(const IntVector& v) {
  if (v.is_zero()) throw PreconditionError("primitive: zero vector has no direction");
  std::int64_t g = 0;
  for (auto c : v) g = std::gcd(g, c);
  IntVector p = v;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] /= g;
  for (auto c : p) {
    if (c != 0) {
      if (c < 0) p *= -1;
      break;
    }
  }
  return p;
}

bool parallel(const IntVector& u, const IntVector& v) {
  if (u.is_zero() || v.is_zero()) return false;
  return primitive(u) == primitive(v);
}

SubspaceBasis::SubspaceBasis(std::size_t dim, const std::vector<RationalVector>& basis) : dim_(dim) {
  for (const auto& b : basis) {
    if (b.size() != dim) throw DimensionError("subspace basis vector has wrong dimension");
  }
  rref_ = basis;
  pivots_ = rref_in_place(rref_, dim_);
  if (rref_.size() != basis.size()) throw PreconditionError("subspace basis vectors are linearly dependent");
}

SubspaceBasis SubspaceBasis::full(std::size_t dim) {
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < dim; ++i) units.push_back(IntVector::unit(dim, i));
  return span(dim, units);
}

SubspaceBasis SubspaceBasis::span(std::size_t dim, const std::vector<IntVector>& generators) {
  check_dims(dim, generators);
  SubspaceBasis s(dim);
  for (const auto& g : generators) s.rref_.push_back(to_rational(g));
  s.pivots_ = rref_in_place(s.rref_, dim);
  return s;
}

std::vector<IntVector> SubspaceBasis::integer_basis() const {
  std::vector<IntVector> out;
  for (const auto& row : rref_) {
    Integer l = 1;
    for (const auto& q : row) l = lcm(l, Integer(q.get_den()));
    std::vector<Integer> ints;
    for (const auto& q : row) ints.push_back(Integer(q * l));
    Integer g = 0;
    for (const auto& x : ints) g = gcd(g, x);
    for (auto& x : ints) x /= g;
    out.push_back(to_int_vector(ints));
  }
  return out;
}

bool SubspaceBasis::contains(const IntVector& x) const { return contains(to_rational(x)); }

bool SubspaceBasis::contains(const RationalVector& x) const {
  if (x.size() != dim_) throw DimensionError("subspace membership: dimension mismatch");
  RationalVector r = x;
  for (std::size_t i = 0; i < rref_.size(); ++i) {
    Rational f = r[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) r[j] -= f * rref_[i][j];
  }
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
}

bool span_meets_trivially(const IntVector& u, const IntVector& v, const SubspaceBasis& V) {
  if (u.size() != V.ambient_dim() || v.size() != V.ambient_dim()) {
    throw DimensionError("span_meets_trivially: dimension mismatch");
  }
  std::vector<RationalVector> rows = V.basis();
  rows.push_back(to_rational(u));
  rows.push_back(to_rational(v));
  return rank_rational(rows) == V.dimension() + rank_rational(std::vector<IntVector>{u, v});
}

std::optional<RationalVector> solve_in_span(const std::vector<IntVector>& generators, const RationalVector& x) {
  // Solve by eliminating the augmented transpose system.
  const std::size_t r = generators.size();
  const std::size_t d = x.size();
  std::vector<RationalVector> aug(d, RationalVector(r + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = static_cast<long>(generators[j][i]);
    aug[i][r] = x[i];
  }
  auto pivots = rref_in_place(aug, r + 1);
  RationalVector sol(r, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == r) return std::nullopt;
    sol[pivots[i]] = aug[i][r];
  }
  if (pivots.size() < r) throw PreconditionError("solve_in_span: generators are linearly dependent");
  return sol;
}

HermiteForm hermite_normal_form(std::size_t dim, const std::vector<IntVector>& generators) {
  check_dims(dim, generators);
  IntegerMatrix h = to_integer_matrix(generators);
  auto pivots = hermite_in_place(h, dim, nullptr);
  HermiteForm out;
  out.pivots = pivots;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.rows.push_back(to_int_vector(h[i]));
  return out;
}

std::vector<std::vector<Integer>> integer_kernel(std::size_t dim, const std::vector<IntVector>& generators) {
  check_dims(dim, generators);
  IntegerMatrix h = to_integer_matrix(generators);
  IntegerMatrix u;
  auto pivots = hermite_in_place(h, dim, &u);
  return {u.begin() + static_cast<std::ptrdiff_t>(pivots.size()), u.end()};
}

Lattice::Lattice(std::size_t dim, const std::vector<IntVector>& generators)
    : dim_(dim), form_(hermite_normal_form(dim, generators)) {}

Lattice Lattice::identity(std::size_t dim) {
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < dim; ++i) units.push_back(IntVector::unit(dim, i));
  return Lattice(dim, units);
}

IntVector Lattice::reduce(IntVector x) const {
  if (x.size() != dim_) throw DimensionError("lattice reduce: dimension mismatch");
  for (std::size_t i = 0; i < form_.rows.size(); ++i) {
    const auto& row = form_.rows[i];
    const std::size_t p = form_.pivots[i];
    const std::int64_t q = perdec::floor_div(x[p], row[p]);
    if (q == 0) continue;
    for (std::size_t j = p; j < dim_; ++j) x[j] -= q * row[j];
  }
  return x;
}

bool Lattice::contains(const IntVector& x) const { return reduce(x).is_zero(); }

std::int64_t Lattice::index() const {
  if (!full_rank()) throw PreconditionError("lattice index: lattice is not full rank");
  std::int64_t det = 1;
  for (std::size_t i = 0; i < dim_; ++i) det *= form_.rows[i][i];
  return det;
}

std::vector<IntVector> Lattice::residues() const {
  const std::int64_t n = index();
  std::vector<IntVector> out;
  out.reserve(static_cast<std::size_t>(n));
  IntVector cur(dim_);
  for (std::int64_t k = 0; k < n; ++k) {
    out.push_back(cur);
    for (std::size_t i = dim_; i-- > 0;) {
      if (++cur[i] < form_.rows[i][i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

std::size_t Lattice::residue_index(const IntVector& reduced) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    idx = idx * static_cast<std::size_t>(form_.rows[i][i]) + static_cast<std::size_t>(reduced[i]);
  }
  return idx;
}

bool Lattice::contains_lattice(const Lattice& other) const {
  return std::all_of(other.basis().begin(), other.basis().end(), [&](const IntVector& b) { return contains(b); });
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  std::vector<IntVector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Lattice(a.ambient_dim(), gens);
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  const std::size_t d = a.ambient_dim();
  if (b.ambient_dim() != d) throw DimensionError("lattice intersection: dimension mismatch");
  std::vector<IntVector> stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  auto kernel = integer_kernel(d, stacked);
  std::vector<IntVector> gens;
  for (const auto& rel : kernel) {
    std::vector<Integer> x(d, 0);
    for (std::size_t i = 0; i < a.basis().size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) x[j] += rel[i] * static_cast<long>(a.basis()[i][j]);
    }
    gens.push_back(to_int_vector(x));
  }
  return Lattice(d, gens);
}

CosetSystem::CosetSystem(std::size_t dim, std::vector<IntVector> generators)
    : dim_(dim), generators_(std::move(generators)), lattice_(dim, generators_) {
  if (rank_rational(generators_) != generators_.size()) {
    throw PreconditionError("coset system: generators are linearly dependent, coordinates would not be unique");
  }
  const std::size_t r = generators_.size();
  std::vector<RationalVector> rows;
  for (const auto& g : generators_) rows.push_back(to_rational(g));
  auto echelon = rows;
  solve_columns_ = rref_in_place(echelon, dim_);
  // Invert the r x r block G_P by Gauss-Jordan on [G_P | I].
  std::vector<RationalVector> aug(r, RationalVector(2 * r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = rows[i][solve_columns_[j]];
    aug[i][r + i] = 1;
  }
  rref_in_place(aug, 2 * r);
  solve_inverse_.assign(r, RationalVector(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) solve_inverse_[i][j] = aug[i][r + j];
  }
}

std::vector<std::int64_t> CosetSystem::coordinates(const IntVector& x) const {
  const IntVector z = representative(x);
  const IntVector y = x - z;
  const std::size_t r = generators_.size();
  // a = y_P * inverse(G_P)
  std::vector<std::int64_t> a(r);
  for (std::size_t j = 0; j < r; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < r; ++i) s += static_cast<long>(y[solve_columns_[i]]) * solve_inverse_[i][j];
    if (s.get_den() != 1) {
      throw InvariantError("coset coordinates: " + x.to_string() + " minus its representative is not in the integer span");
    }
    a[j] = to_int64(s.get_num());
  }
  if (rebuild(z, a) != x) {
    throw InvariantError("coset coordinates: " + x.to_string() + " minus its representative is not in the integer span");
  }
  return a;
}

IntVector CosetSystem::rebuild(const IntVector& representative, const std::vector<std::int64_t>& coords) const {
  IntVector x = representative;
  for (std::size_t i = 0; i < generators_.size(); ++i) x += coords[i] * generators_[i];
  return x;
}

}  // namespace perdec
