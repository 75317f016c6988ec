#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "perdec/arith.hpp"

namespace perdec {

// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_rational(const std::vector<IntVector>& vectors);
std::size_t rank_rational(const std::vector<RationalVector>& vectors);

// v / gcd(v), sign-normalized so the first nonzero coordinate is positive.
// Throws PreconditionError for the zero vector.
IntVector primitive(const IntVector& v);

// True iff u and v are nonzero and linearly dependent over Q.
bool parallel(const IntVector& u, const IntVector& v);

// A linear subspace of Q^dim, stored in reduced row echelon form so that
// equal subspaces compare equal.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  // The trivial subspace {0}.
  explicit SubspaceBasis(std::size_t dim) : dim_(dim) {}
  // Requires linearly independent rows; throws PreconditionError otherwise.
  SubspaceBasis(std::size_t dim, const std::vector<RationalVector>& basis);

  static SubspaceBasis trivial(std::size_t dim) { return SubspaceBasis(dim); }
  static SubspaceBasis full(std::size_t dim);
  // Span of arbitrary (possibly dependent) integer generators.
  static SubspaceBasis span(std::size_t dim, const std::vector<IntVector>& generators);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dimension() const { return rref_.size(); }
  const std::vector<RationalVector>& basis() const { return rref_; }
  // Each basis row scaled to a primitive integer vector.
  std::vector<IntVector> integer_basis() const;

  bool contains(const IntVector& x) const;
  bool contains(const RationalVector& x) const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<RationalVector> rref_;
  std::vector<std::size_t> pivots_;
};

// True iff span{u, v} ∩ V = {0}.
bool span_meets_trivially(const IntVector& u, const IntVector& v, const SubspaceBasis& V);

// Rational solve of x = sum_i coeff_i * generators_i; absent if x is not in
// the rational span. Generators must be linearly independent.
std::optional<RationalVector> solve_in_span(const std::vector<IntVector>& generators,
                                            const RationalVector& x);

// Rows in Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows removed.
struct HermiteForm {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;
};
HermiteForm hermite_normal_form(std::size_t dim, const std::vector<IntVector>& generators);

// Integer relations: a basis of {a in Z^n : sum_i a_i * generators_i = 0}.
std::vector<std::vector<Integer>> integer_kernel(std::size_t dim,
                                                 const std::vector<IntVector>& generators);

// Integer span of a set of vectors, kept in Hermite normal form.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::size_t dim, const std::vector<IntVector>& generators);

  static Lattice identity(std::size_t dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return form_.rows.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<IntVector>& basis() const { return form_.rows; }
  const std::vector<std::size_t>& pivots() const { return form_.pivots; }

  // Canonical coset representative: pivot coordinates reduced into
  // [0, pivot). Idempotent, and x - reduce(x) lies in the lattice.
  IntVector reduce(IntVector x) const;
  bool contains(const IntVector& x) const;
  // |det| for a full-rank lattice; throws PreconditionError otherwise.
  std::int64_t index() const;
  // All canonical residues of a full-rank lattice, in mixed-radix order
  // (last coordinate fastest).
  std::vector<IntVector> residues() const;
  // Position of a reduced residue in `residues()`.
  std::size_t residue_index(const IntVector& reduced) const;

  // True iff every vector of `other` lies in this lattice.
  bool contains_lattice(const Lattice& other) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.form_.rows == b.form_.rows;
  }

 private:
  std::size_t dim_ = 0;
  HermiteForm form_;
};

Lattice lattice_intersection(const Lattice& a, const Lattice& b);
Lattice lattice_sum(const Lattice& a, const Lattice& b);

// Coset decomposition of Z^d modulo Z[g_1, ..., g_r] for linearly independent
// generators, with the Hermite residue as the fixed coset representative.
class CosetSystem {
 public:
  // Throws PreconditionError if the generators are dependent over Q (the
  // unique-expression property would fail).
  CosetSystem(std::size_t dim, std::vector<IntVector> generators);

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const Lattice& lattice() const { return lattice_; }

  IntVector representative(const IntVector& x) const { return lattice_.reduce(x); }
  // Integers a with x = representative(x) + sum_i a_i g_i.
  std::vector<std::int64_t> coordinates(const IntVector& x) const;
  IntVector rebuild(const IntVector& representative, const std::vector<std::int64_t>& coords) const;

 private:
  std::size_t dim_;
  std::vector<IntVector> generators_;
  Lattice lattice_;
  // Columns where the generator matrix is invertible, and that inverse.
  std::vector<std::size_t> solve_columns_;
  std::vector<RationalVector> solve_inverse_;
};

}  // namespace perdec
