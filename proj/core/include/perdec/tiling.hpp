#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "perdec/config.hpp"
#include "perdec/decompose.hpp"
#include "perdec/laurent.hpp"

namespace perdec {

// Finite nonempty set of cells.
class Tile {
 public:
  Tile() = default;
  // Throws PreconditionError on an empty cell list or duplicates.
  Tile(std::size_t dim, const std::vector<IntVector>& cells);

  std::size_t dim() const { return dim_; }
  const std::set<IntVector>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  // 0 is a cell.
  bool normalized() const;

  friend bool operator==(const Tile&, const Tile&) = default;

 private:
  std::size_t dim_ = 0;
  std::set<IntVector> cells_;
};

// sum over u in -D of X^u.
LaurentPoly tile_polynomial(const Tile& D);

// (tile_polynomial(D) c) == 1. Throws PreconditionError on non-binary c.
Verdict verify_cotiler(const Tile& D, const ConfigView& c);

struct IndependenceResult {
  bool independent = true;
  // First dependent choice, one nonzero cell per tile, and a nonzero
  // rational relation sum_i coeff_i * choice_i = 0.
  std::vector<IntVector> witness;
  std::vector<Rational> relation;
};

IndependenceResult independent(const std::vector<Tile>& tiles);

// Some f_i with supp(f_i) ∩ V = {0}. Throws PreconditionError if none.
LaurentPoly select_periodizer(const std::vector<LaurentPoly>& fs, const SubspaceBasis& V);

Decomposition cotiler_decompose(const std::vector<Tile>& tiles, const ConfigView& c, const Bounds& bounds,
                                const Box& evidence);

}  // namespace perdec
