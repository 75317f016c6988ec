#include "perdec/tiling.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "perdec/error.hpp"
#include "perdec/lattice.hpp"
#include "perdec/parallel.hpp"

namespace perdec {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mod_reduce(std::int64_t x) {
  const auto p = static_cast<std::int64_t>(kPrime);
  std::int64_t r = x % p;
  return static_cast<std::uint64_t>(r < 0 ? r + p : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

// Rank modulo a large prime; never exceeds the rational rank.
std::size_t rank_mod_p(const std::vector<IntVector>& vs) {
  if (vs.empty()) return 0;
  const std::size_t cols = vs.front().size();
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& v : vs) {
    std::vector<std::uint64_t> row;
    for (auto x : v) row.push_back(mod_reduce(x));
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = pow_mod(m[rank][col], kPrime - 2);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const std::uint64_t factor = mul_mod(m[r][col], inv);
      for (std::size_t c = col; c < cols; ++c) {
        m[r][c] = (m[r][c] + kPrime - mul_mod(factor, m[rank][c])) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

bool binary_values(const ConfigView& c) {
  auto is_bit = [](const Integer& v) { return v == 0 || v == 1; };
  switch (c.kind()) {
    case ConfigKind::Window:
      return std::all_of(c.window().values().begin(), c.window().values().end(), is_bit);
    case ConfigKind::Periodic:
      return std::all_of(c.periodic().values().begin(), c.periodic().values().end(), is_bit);
    case ConfigKind::FiberSum: {
      const auto& fibers = c.fiber_sum().fibers();
      for (const auto& f : fibers) {
        if (!std::all_of(f.vals.begin(), f.vals.end(), is_bit)) return false;
      }
      // Values add up where two lines cross.
      for (std::size_t i = 0; i < fibers.size(); ++i) {
        for (std::size_t j = i + 1; j < fibers.size(); ++j) {
          if (fibers[i].direction == fibers[j].direction) continue;
          const auto st = solve_in_span({fibers[i].direction, fibers[j].direction},
                                        to_rational(fibers[j].anchor - fibers[i].anchor));
          if (!st || (*st)[0].get_den() != 1) continue;
          const IntVector x = fibers[i].anchor + to_int64((*st)[0].get_num()) * fibers[i].direction;
          if (!is_bit(c.fiber_sum().at(x))) return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace

Tile::Tile(std::size_t dim, const std::vector<IntVector>& cells) : dim_(dim) {
  if (cells.empty()) throw PreconditionError("tile: no cells");
  for (const auto& cell : cells) {
    if (cell.size() != dim) throw DimensionError("tile: cell " + cell.to_string() + " has the wrong dimension");
    if (!cells_.insert(cell).second) throw PreconditionError("tile: duplicate cell " + cell.to_string());
  }
}

bool Tile::normalized() const { return cells_.count(IntVector::zero(dim_)) > 0; }

LaurentPoly tile_polynomial(const Tile& D) {
  LaurentPoly::Terms terms;
  for (const auto& u : D.cells()) terms.emplace(-u, 1);
  return LaurentPoly(D.dim(), std::move(terms));
}

Verdict verify_cotiler(const Tile& D, const ConfigView& c) {
  if (D.dim() != c.dim()) throw DimensionError("verify_cotiler: dimension mismatch");
  if (!binary_values(c)) throw PreconditionError("verify_cotiler: configuration is not 0/1-valued");
  const ConfigView fc = apply_poly(tile_polynomial(D), c);
  switch (fc.kind()) {
    case ConfigKind::Periodic: {
      const auto& vals = fc.periodic().values();
      const bool ok = std::all_of(vals.begin(), vals.end(), [](const Integer& v) { return v == 1; });
      return Verdict::exact_result(ok, ok ? "" : "f c is not the constant 1");
    }
    case ConfigKind::FiberSum: {
      // A finite sum of lines equals 1 everywhere only in dimension one.
      const auto& fibers = fc.fiber_sum().fibers();
      const bool ok = c.dim() == 1 && fibers.size() == 1 && fibers.front().period == 1 && fibers.front().vals[0] == 1;
      return Verdict::exact_result(ok, ok ? "" : "f c is not the constant 1");
    }
    case ConfigKind::Window: {
      const auto& w = fc.window();
      for (const auto& x : w.box().points()) {
        if (w.at(x) != 1) return Verdict::window_result(false, w.box(), "f c = " + w.at(x).get_str() + " at " + x.to_string());
      }
      return Verdict::window_result(true, w.box());
    }
  }
  throw InvariantError("verify_cotiler: unknown representation");
}

IndependenceResult independent(const std::vector<Tile>& tiles) {
  IndependenceResult out;
  if (tiles.empty()) return out;
  const std::size_t d = tiles.front().dim();
  std::vector<std::vector<IntVector>> choices;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (tiles[i].dim() != d) throw DimensionError("independent: dimension mismatch");
    if (!tiles[i].normalized()) throw PreconditionError("independent: tile " + std::to_string(i + 1) + " does not contain 0");
    std::vector<IntVector> nonzero;
    for (const auto& cell : tiles[i].cells()) {
      if (!cell.is_zero()) nonzero.push_back(cell);
    }
    choices.push_back(std::move(nonzero));
  }
  if (tiles.size() > d) throw PreconditionError("independent: more tiles than dimensions");
  // A tile {0} offers no choice, so the condition holds vacuously.
  if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) return out;

  const std::size_t k = tiles.size();
  const std::size_t outer = choices.front().size();
  std::vector<std::optional<std::vector<IntVector>>> first_witness(outer);
  parallel_for(outer, [&](std::size_t head) {
    std::vector<std::size_t> idx(k, 0);
    idx[0] = head;
    while (true) {
      std::vector<IntVector> pick;
      for (std::size_t i = 0; i < k; ++i) pick.push_back(choices[i][idx[i]]);
      // The prime-field rank is a lower bound, so full rank there is proof.
      if (rank_mod_p(pick) != k && rank_rational(pick) != k) {
        first_witness[head] = pick;
        return;
      }
      std::size_t pos = k;
      while (pos > 1) {
        --pos;
        if (++idx[pos] < choices[pos].size()) break;
        idx[pos] = 0;
        if (pos == 1) return;
      }
      if (k == 1) return;
    }
  });
  for (const auto& w : first_witness) {
    if (!w) continue;
    out.independent = false;
    out.witness = *w;
    const auto kernel = integer_kernel(d, *w);
    if (kernel.empty()) throw InvariantError("independent: dependent choice without a relation");
    for (const auto& a : kernel.front()) out.relation.emplace_back(a);
    break;
  }
  return out;
}

LaurentPoly select_periodizer(const std::vector<LaurentPoly>& fs, const SubspaceBasis& V) {
  for (const auto& f : fs) {
    const auto hit = support_in_subspace(f, V);
    if (hit.size() == 1 && hit.begin()->is_zero()) return f;
  }
  throw PreconditionError("select_periodizer: no periodizer has support meeting V exactly at the origin; "
                          "the tiles are not independent");
}

Decomposition cotiler_decompose(const std::vector<Tile>& tiles, const ConfigView& c, const Bounds& bounds,
                                const Box& evidence) {
  if (tiles.empty()) throw PreconditionError("cotiler_decompose: no tiles");
  const IndependenceResult ind = independent(tiles);
  if (!ind.independent) {
    std::string w;
    for (std::size_t i = 0; i < ind.witness.size(); ++i) w += (i ? ", " : "") + ind.witness[i].to_string();
    throw PreconditionError("cotiler_decompose: tiles are dependent, witness (" + w + ")");
  }
  std::vector<LaurentPoly> polys;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const Verdict v = verify_cotiler(tiles[i], c);
    if (!v.holds) {
      throw PreconditionError("cotiler_decompose: not a co-tiler of tile " + std::to_string(i + 1) + " (" +
                              v.to_string() + ")");
    }
    polys.push_back(tile_polynomial(tiles[i]));
  }
  auto oracle = [polys](const SubspaceBasis& V) { return select_periodizer(polys, V); };
  return k_periodic_decompose(c, tiles.size(), oracle, bounds, evidence);
}

}  // namespace perdec
