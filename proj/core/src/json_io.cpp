#include "perdec/json_io.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "perdec/error.hpp"

namespace perdec {
namespace {

using nlohmann::json;

// Path-tracking accessor so semantic errors name the value at fault.
struct Node {
  const json& j;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
  }
  Node at(const std::string& key) const {
    if (!j.is_object()) fail("expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail("missing key \"" + key + "\"");
    return {*it, path + "/" + key};
  }
  Node at(std::size_t i) const { return {j[i], path + "/" + std::to_string(i)}; }
  std::size_t size() const {
    if (!j.is_array()) fail("expected an array");
    return j.size();
  }
  void only_keys(std::initializer_list<const char*> keys) const {
    if (!j.is_object()) fail("expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        fail("unexpected key \"" + it.key() + "\"");
      }
    }
  }
  Integer integer() const {
    if (j.is_number_integer()) {
      return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                    : Integer(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
      const auto& s = j.get_ref<const std::string&>();
      const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
      if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        fail("expected a decimal integer string, got \"" + s + "\"");
      }
      return Integer(s);
    }
    fail("expected an integer");
  }
  std::int64_t int64() const {
    if (!j.is_number_integer()) fail("expected a 64-bit integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail("integer out of range");
    }
    return j.get<std::int64_t>();
  }
  Rational rational() const {
    if (j.is_string()) {
      try {
        return rational_from_string(j.get<std::string>());
      } catch (const Error&) {
        fail("expected a rational \"p/q\"");
      }
    }
    return Rational(integer());
  }
  std::size_t dim() const {
    const std::int64_t d = int64();
    if (d < 1 || d > 16) fail("dimension must be in [1, 16]");
    return static_cast<std::size_t>(d);
  }
  IntVector vec(std::size_t d) const {
    if (size() != d) fail("expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
    std::vector<std::int64_t> xs;
    for (std::size_t i = 0; i < d; ++i) xs.push_back(at(i).int64());
    return IntVector(std::move(xs));
  }
  std::string kind() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
};

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a 1-based byte offset.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto cut = msg.find("syntax error");
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     (cut == std::string::npos ? msg : msg.substr(cut)));
  }
}

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

json vec_json(const IntVector& v) { return json(v.coords()); }

// Wraps constructor failures with the path of the object being built.
template <typename Fn>
auto guarded(const Node& n, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

LaurentPoly poly_from(const Node& root) {
  root.only_keys({"dim", "terms"});
  const std::size_t d = root.at("dim").dim();
  const Node terms = root.at("terms");
  LaurentPoly::Terms map;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Node t = terms.at(i);
    t.only_keys({"exp", "coef"});
    IntVector e = t.at("exp").vec(d);
    Integer coef = t.at("coef").integer();
    if (coef == 0) t.at("coef").fail("zero coefficient");
    if (!map.emplace(std::move(e), std::move(coef)).second) t.at("exp").fail("duplicate exponent");
  }
  return LaurentPoly(d, std::move(map));
}

WindowConfig window_from(const Node& root, std::size_t d) {
  root.only_keys({"kind", "dim", "lo", "hi", "values"});
  const IntVector lo = root.at("lo").vec(d);
  const IntVector hi = root.at("hi").vec(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (hi[i] < lo[i]) root.at("hi").fail("hi < lo in coordinate " + std::to_string(i));
  }
  const Box box(lo, hi);
  const Node values = root.at("values");
  if (values.size() != box.volume()) {
    values.fail("expected " + std::to_string(box.volume()) + " values, got " + std::to_string(values.j.size()));
  }
  std::vector<Integer> vals;
  vals.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) vals.push_back(values.at(i).integer());
  return WindowConfig(box, std::move(vals));
}

PeriodicConfig periodic_from(const Node& root, std::size_t d) {
  root.only_keys({"kind", "dim", "basis", "values"});
  const Node basis = root.at("basis");
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < basis.size(); ++i) gens.push_back(basis.at(i).vec(d));
  if (gens.size() != d || rank_rational(gens) != d) basis.fail("basis must have " + std::to_string(d) + " independent rows");
  const Lattice lattice(d, gens);
  const Node values = root.at("values");
  const std::size_t n = static_cast<std::size_t>(lattice.index());
  if (values.size() != n) {
    values.fail("expected one value per residue (" + std::to_string(n) + "), got " + std::to_string(values.j.size()));
  }
  std::vector<Integer> vals(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Node entry = values.at(i);
    entry.only_keys({"res", "val"});
    const IntVector res = entry.at("res").vec(d);
    if (lattice.reduce(res) != res) {
      entry.at("res").fail("residue " + res.to_string() + " is not canonical (expected " +
                           lattice.reduce(res).to_string() + ")");
    }
    const std::size_t k = lattice.residue_index(res);
    if (seen[k]) entry.at("res").fail("duplicate residue " + res.to_string());
    seen[k] = true;
    vals[k] = entry.at("val").integer();
  }
  return PeriodicConfig(lattice, std::move(vals));
}

FiberSum fibersum_from(const Node& root, std::size_t d) {
  root.only_keys({"kind", "dim", "fibers"});
  const Node fibers = root.at("fibers");
  std::vector<PeriodicFiber> out;
  std::set<std::pair<IntVector, IntVector>> lines;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const Node f = fibers.at(i);
    f.only_keys({"anchor", "dir", "period", "vals"});
    IntVector anchor = f.at("anchor").vec(d);
    IntVector dir = f.at("dir").vec(d);
    if (dir.is_zero() || primitive(dir) != dir) f.at("dir").fail("direction must be primitive with first nonzero coordinate positive");
    const std::int64_t period = f.at("period").int64();
    const Node vals = f.at("vals");
    if (period < 1 || vals.size() != static_cast<std::size_t>(period)) {
      f.at("period").fail("period must equal the number of values");
    }
    std::vector<Integer> vs;
    for (std::size_t k = 0; k < vals.size(); ++k) vs.push_back(vals.at(k).integer());
    if (std::all_of(vs.begin(), vs.end(), [](const Integer& v) { return v == 0; })) f.at("vals").fail("all values are zero");
    PeriodicFiber fiber = guarded(f, [&] { return make_fiber(anchor, dir, vs); });
    if (fiber.anchor != anchor) {
      f.at("anchor").fail("anchor is not the canonical line representative " + fiber.anchor.to_string());
    }
    if (!lines.emplace(dir, anchor).second) f.fail("two fibers on the same line");
    // Keep the declared period; canonicalization may only shorten it.
    out.push_back(PeriodicFiber{anchor, dir, period, vs});
  }
  return FiberSum(d, std::move(out));
}

}  // namespace

LaurentPoly parse_poly(const std::string& text) {
  const json j = parse_text(text);
  const Node root{j, ""};
  return guarded(root, [&] { return poly_from(root); });
}

std::string dump_poly(const LaurentPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", vec_json(e)}, {"coef", integer_json(c)}});
  json j = {{"dim", f.dim()}, {"terms", terms}};
  return j.dump(2) + "\n";
}

ConfigView parse_config(const std::string& text) {
  const json j = parse_text(text);
  const Node root{j, ""};
  const std::string kind = root.at("kind").kind();
  const std::size_t d = root.at("dim").dim();
  return guarded(root, [&]() -> ConfigView {
    if (kind == "window") return window_from(root, d);
    if (kind == "periodic") return periodic_from(root, d);
    if (kind == "fibersum") return fibersum_from(root, d);
    root.at("kind").fail("unknown kind \"" + kind + "\"");
  });
}

std::string dump_config(const ConfigView& c) {
  json j;
  switch (c.kind()) {
    case ConfigKind::Window: {
      const auto& w = c.window();
      json vals = json::array();
      for (const auto& v : w.values()) vals.push_back(integer_json(v));
      j = {{"kind", "window"}, {"dim", w.dim()}, {"lo", vec_json(w.box().lo)}, {"hi", vec_json(w.box().hi)}, {"values", vals}};
      break;
    }
    case ConfigKind::Periodic: {
      const auto& p = c.periodic();
      json basis = json::array();
      for (const auto& row : p.lattice().basis()) basis.push_back(vec_json(row));
      json vals = json::array();
      const auto residues = p.lattice().residues();
      for (std::size_t i = 0; i < residues.size(); ++i) {
        vals.push_back({{"res", vec_json(residues[i])}, {"val", integer_json(p.values()[i])}});
      }
      j = {{"kind", "periodic"}, {"dim", p.dim()}, {"basis", basis}, {"values", vals}};
      break;
    }
    case ConfigKind::FiberSum: {
      const auto& fs = c.fiber_sum();
      json fibers = json::array();
      for (const auto& f : fs.fibers()) {
        json vals = json::array();
        for (const auto& v : f.vals) vals.push_back(integer_json(v));
        fibers.push_back({{"anchor", vec_json(f.anchor)}, {"dir", vec_json(f.direction)}, {"period", f.period}, {"vals", vals}});
      }
      j = {{"kind", "fibersum"}, {"dim", fs.dim()}, {"fibers", fibers}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

Tile parse_tile(const std::string& text) {
  const json j = parse_text(text);
  const Node root{j, ""};
  root.only_keys({"dim", "cells"});
  const std::size_t d = root.at("dim").dim();
  const Node cells = root.at("cells");
  std::vector<IntVector> cs;
  for (std::size_t i = 0; i < cells.size(); ++i) cs.push_back(cells.at(i).vec(d));
  return guarded(cells, [&] { return Tile(d, cs); });
}

std::string dump_tile(const Tile& t) {
  json cells = json::array();
  for (const auto& c : t.cells()) cells.push_back(vec_json(c));
  json j = {{"dim", t.dim()}, {"cells", cells}};
  return j.dump(2) + "\n";
}

SubspaceBasis parse_subspace(const std::string& text) {
  const json j = parse_text(text);
  const Node root{j, ""};
  root.only_keys({"dim", "basis"});
  const std::size_t d = root.at("dim").dim();
  const Node basis = root.at("basis");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Node row = basis.at(i);
    if (row.size() != d) row.fail("expected " + std::to_string(d) + " coordinates");
    RationalVector r;
    for (std::size_t k = 0; k < d; ++k) r.push_back(row.at(k).rational());
    rows.push_back(std::move(r));
  }
  return guarded(basis, [&] { return SubspaceBasis(d, rows); });
}

std::string dump_subspace(const SubspaceBasis& V) {
  json basis = json::array();
  for (const auto& row : V.basis()) {
    json r = json::array();
    for (const auto& q : row) {
      if (q.get_den() == 1) {
        r.push_back(integer_json(q.get_num()));
      } else {
        r.push_back(rational_to_string(q));
      }
    }
    basis.push_back(r);
  }
  json j = {{"dim", V.ambient_dim()}, {"basis", basis}};
  return j.dump(2) + "\n";
}

}  // namespace perdec
