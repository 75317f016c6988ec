#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "perdec/perdec.hpp"

namespace perdec::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline IntVector random_vector(Rng& rng, std::size_t d, std::int64_t lo, std::int64_t hi) {
  IntVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

inline IntVector random_nonzero(Rng& rng, std::size_t d, std::int64_t r) {
  IntVector v;
  do v = random_vector(rng, d, -r, r);
  while (v.is_zero());
  return v;
}

inline LaurentPoly random_poly(Rng& rng, std::size_t d, std::size_t max_terms = 5, std::int64_t e = 4,
                               std::int64_t c = 9) {
  LaurentPoly::Terms t;
  const auto n = uniform(rng, 0, static_cast<std::int64_t>(max_terms));
  for (std::int64_t i = 0; i < n; ++i) t[random_vector(rng, d, -e, e)] = uniform(rng, -c, c);
  return LaurentPoly(d, std::move(t));
}

// Naive product over a plain map, independent of LaurentPoly::operator*.
inline std::map<IntVector, Integer> naive_product(const LaurentPoly& f, const LaurentPoly& g) {
  std::map<IntVector, Integer> out;
  for (const auto& [a, x] : f.terms()) {
    for (const auto& [b, y] : g.terms()) out[a + b] += x * y;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Lower-triangular Hermite-shaped basis with |det| <= max_det.
inline std::vector<IntVector> random_lattice_basis(Rng& rng, std::size_t d, std::int64_t max_det) {
  while (true) {
    std::vector<IntVector> rows(d, IntVector(d));
    std::int64_t det = 1;
    for (std::size_t i = 0; i < d; ++i) {
      rows[i][i] = uniform(rng, 1, 4);
      det *= rows[i][i];
      for (std::size_t j = 0; j < i; ++j) rows[i][j] = uniform(rng, -3, 3);
    }
    if (det <= max_det) return rows;
  }
}

// Values read through `fn` at the canonical residues.
inline PeriodicConfig periodic_from(const std::vector<IntVector>& basis, const std::function<Integer(const IntVector&)>& fn) {
  return PeriodicConfig::from_function(Lattice(basis.front().size(), basis), fn);
}

// Random periodic configuration whose values repeat modulo a random
// superlattice, so the true period lattice is often larger than the
// declared one.
inline PeriodicConfig random_periodic(Rng& rng, std::size_t d, std::int64_t max_det) {
  const auto basis = random_lattice_basis(rng, d, max_det);
  const Lattice declared(d, basis);
  std::vector<IntVector> coarse = basis;
  if (uniform(rng, 0, 1) == 1) coarse.push_back(random_vector(rng, d, -2, 2));
  const Lattice super(d, coarse);
  std::map<IntVector, Integer> table;
  for (const auto& r : super.residues()) table[r] = uniform(rng, -3, 3);
  return PeriodicConfig::from_function(declared, [&](const IntVector& x) { return table.at(super.reduce(x)); });
}

// Brute-force period test: compare c(x + v) with c(x) on a box containing
// a full set of residues of c's lattice.
inline bool brute_force_period(const PeriodicConfig& c, const IntVector& v) {
  const std::size_t d = c.dim();
  const std::int64_t n = c.lattice().index();
  bool ok = true;
  Box(IntVector(d), IntVector(std::vector<std::int64_t>(d, n - 1))).for_each([&](const IntVector& x) {
    if (ok && c.at(x + v) != c.at(x)) ok = false;
  });
  return ok;
}

// A random periodic fiber along `dir` with period <= max_period.
inline PeriodicFiber random_fiber(Rng& rng, const IntVector& dir, std::int64_t max_period, std::int64_t spread) {
  const std::size_t d = dir.size();
  std::vector<Integer> vals;
  const auto p = uniform(rng, 1, max_period);
  do {
    vals.clear();
    for (std::int64_t i = 0; i < p; ++i) vals.emplace_back(uniform(rng, -3, 3));
  } while (std::all_of(vals.begin(), vals.end(), [](const Integer& v) { return v == 0; }));
  return make_fiber(random_vector(rng, d, -spread, spread), dir, std::move(vals));
}

// (f c)(u) = sum_i f_i c(u - u_i), by nested loops over a dense table of c.
inline std::map<IntVector, Integer> naive_convolution(const LaurentPoly& f,
                                                      const std::function<Integer(const IntVector&)>& c,
                                                      const Box& out) {
  std::map<IntVector, Integer> r;
  out.for_each([&](const IntVector& u) {
    Integer s = 0;
    for (const auto& [e, k] : f.terms()) s += k * c(u - e);
    r[u] = s;
  });
  return r;
}

inline Box square(std::size_t d, std::int64_t lo, std::int64_t hi) {
  return Box(IntVector(std::vector<std::int64_t>(d, lo)), IntVector(std::vector<std::int64_t>(d, hi)));
}

inline PeriodicConfig checkerboard() {
  return PeriodicConfig::from_function(Lattice(2, {IntVector{2, 0}, IntVector{0, 2}}),
                                       [](const IntVector& x) { return Integer(floor_mod(x[0] + x[1], 2)); });
}

}  // namespace perdec::testing

namespace perdec {
inline void PrintTo(const LaurentPoly& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const DifferenceProduct& dp, std::ostream* os) { *os << dp.to_string(); }
}  // namespace perdec
