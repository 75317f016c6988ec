#include "cli.hpp"

#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "perdec/perdec.hpp"

namespace perdec::cli {

namespace {

using nlohmann::json;

struct Options {
  std::optional<std::size_t> dim;
  Bounds bounds;
  std::string window;
  std::string out = "perdec-out";
  std::string format = "text";
};

// Everything a command needs besides its own positional arguments.
struct Ctx {
  const Options& opt;
  RunManifest& m;
  std::optional<std::size_t> dim;

  std::filesystem::path out_dir() const { return opt.out; }

  void check_dim(std::size_t d, const std::string& path) {
    if (!dim) dim = d;
    if (*dim != d) {
      throw DimensionError(path + ": dimension " + std::to_string(d) + ", expected " + std::to_string(*dim));
    }
  }

  template <class T>
  T load(const std::string& path, T (*parse)(const std::string&)) {
    const std::string text = m.read_input(path);
    try {
      return parse(text);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  LaurentPoly poly(const std::string& path) {
    auto f = load(path, parse_poly);
    check_dim(f.dim(), path);
    return f;
  }
  ConfigView config(const std::string& path) {
    auto c = load(path, parse_config);
    check_dim(c.dim(), path);
    return c;
  }
  Tile tile(const std::string& path) {
    auto t = load(path, parse_tile);
    check_dim(t.dim(), path);
    return t;
  }
  SubspaceBasis subspace(const std::string& path) {
    auto V = load(path, parse_subspace);
    check_dim(V.ambient_dim(), path);
    return V;
  }

  // --window if given, else the window's own box, else [-10, 10]^d.
  Box box_for(const ConfigView& c) const;
};

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("bad integer list '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

IntVector parse_vector(const std::string& s, std::size_t d) {
  auto v = parse_ints(s);
  if (v.size() != d) throw DimensionError("vector '" + s + "' has " + std::to_string(v.size()) + " entries, expected " +
                                          std::to_string(d));
  return IntVector(std::move(v));
}

// lo..hi with comma lists, or single integers broadcast to every axis.
Box parse_window(const std::string& s, std::size_t d) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("--window: expected lo..hi, got '" + s + "'");
  auto side = [&](const std::string& part) {
    auto v = parse_ints(part);
    if (v.size() == 1) v.assign(d, v[0]);
    if (v.size() != d) throw DimensionError("--window: '" + part + "' does not have " + std::to_string(d) + " entries");
    return IntVector(std::move(v));
  };
  Box b(side(s.substr(0, dots)), side(s.substr(dots + 2)));
  if (b.empty()) throw PreconditionError("--window: empty box " + b.to_string());
  return b;
}

Box Ctx::box_for(const ConfigView& c) const {
  if (!opt.window.empty()) return parse_window(opt.window, c.dim());
  if (c.is_window()) return c.window().box();
  return cube(c.dim(), 10, IntVector::zero(c.dim()));
}

json vec_json(const IntVector& v) { return json(v.coords()); }

json box_json(const Box& b) { return {{"lo", vec_json(b.lo)}, {"hi", vec_json(b.hi)}}; }

json rationals_json(const std::vector<Rational>& qs) {
  json a = json::array();
  for (const auto& q : qs) a.push_back(rational_to_string(q));
  return a;
}

std::string field_window_text(const FieldWindow& w) {
  if (w.all_integer()) return dump_config(ConfigView(w.to_window()));
  json j = {{"kind", "rational_window"},
            {"dim", w.box.dim()},
            {"lo", vec_json(w.box.lo)},
            {"hi", vec_json(w.box.hi)},
            {"values", rationals_json(w.values)}};
  return j.dump(2);
}

// c = sum of views on `box`; exact when every part and c are exact objects.
Check sum_check(const std::string& name, const std::vector<ConfigView>& parts, const ConfigView& c, const Box& box,
                bool exact) {
  std::vector<ConfigView> terms = parts;
  if (terms.empty()) terms.emplace_back(FiberSum(c.dim()));
  const ConfigView sum = add_views(terms, std::vector<Integer>(terms.size(), 1));
  const bool holds = rasterize(sum, box) == rasterize(c, box);
  return {name, holds, false, box, exact ? "exact extraction; compared on region" : "window evidence"};
}

void record_log(RunManifest& m, const std::vector<std::string>& log) { m.report()["log"] = log; }

void emit_decomposition(Ctx& ctx, const Decomposition& dec, const ConfigView& c, const Box& box) {
  json comps = json::array();
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    const Component& comp = dec.components[i];
    const std::string idx = std::to_string(i + 1);
    ctx.m.write_output(ctx.out_dir(), "component_" + idx + ".json",
                       field_window_text(rasterize_field(*comp.field, box)));
    json periods = json::array();
    for (const auto& p : comp.periods) periods.push_back(vec_json(p));
    comps.push_back({{"annihilator", json::parse(dump_poly(comp.annihilator))},
                     {"direction", vec_json(comp.direction)},
                     {"subspace", json::parse(dump_subspace(comp.V))},
                     {"periods", periods},
                     {"describe", comp.field->describe()}});
    ctx.m.add_check(from_verdict("annihilator kills component " + idx, annihilated_on(comp.annihilator, *comp.field, box)));
    for (const auto& p : comp.periods) {
      ctx.m.add_check({"component " + idx + " has period " + p.to_string(), is_period_on(*comp.field, p, box), false,
                       box, "window evidence"});
    }
  }
  ctx.m.report()["components"] = comps;
  ctx.m.report()["raster_box"] = box_json(box);
  record_log(ctx.m, dec.log);
  ctx.m.add_check({"sum of components = c", agree_on(*dec.sum(), *view_field(c), box), false, box, "window evidence"});
}

// ---- poly -------------------------------------------------------------

void cmd_poly(Ctx& ctx, const std::string& op, const std::vector<std::string>& files) {
  if (op == "line-dir") {
    if (files.size() != 1) throw PreconditionError("poly line-dir takes exactly one polynomial");
    const LaurentPoly f = ctx.poly(files[0]);
    json r;
    try {
      const LineForm lf = line_form(f);
      json alphas = json::array();
      for (const auto& a : lf.alphas) alphas.push_back(a.get_str());
      r = {{"verdict", "present"},
           {"step", vec_json(lf.step)},
           {"shift", vec_json(lf.shift)},
           {"alphas", alphas},
           {"difference", lf.is_difference()}};
    } catch (const PreconditionError& e) {
      r = {{"verdict", "absent"}, {"reason", e.what()}};
    }
    ctx.m.report()["line_direction"] = r;
    ctx.m.write_output(ctx.out_dir(), "result.json", r.dump(2));
    return;
  }
  if (files.size() < 2) throw PreconditionError("poly " + op + " takes at least two polynomials");
  LaurentPoly acc = ctx.poly(files[0]);
  for (std::size_t i = 1; i < files.size(); ++i) {
    const LaurentPoly g = ctx.poly(files[i]);
    acc = op == "add" ? acc + g : acc * g;
  }
  ctx.m.report()["terms"] = acc.term_count();
  ctx.m.write_output(ctx.out_dir(), "result.json", dump_poly(acc));
}

// ---- act --------------------------------------------------------------

void cmd_act(Ctx& ctx, const std::string& poly_file, const std::string& config_file) {
  const LaurentPoly f = ctx.poly(poly_file);
  const ConfigView c = ctx.config(config_file);
  const ConfigView r = apply_poly(f, c);
  ctx.m.report()["kind"] = to_string(r.kind());
  if (r.is_window()) ctx.m.report()["eroded_box"] = box_json(r.window().box());
  ctx.m.write_output(ctx.out_dir(), "result.json", dump_config(r));
}

// ---- decompose --------------------------------------------------------

struct DecomposeArgs {
  std::string config;
  std::vector<std::string> factors;
  std::string annihilator;
  std::size_t k = 0;
  std::vector<std::string> periodizers;
  std::string subspace;
};

void cmd_decompose(Ctx& ctx, const DecomposeArgs& a) {
  const ConfigView c = ctx.config(a.config);
  const Box box = ctx.box_for(c);
  const std::size_t d = c.dim();
  const int modes = int(!a.factors.empty()) + int(!a.annihilator.empty()) + int(a.k > 0);
  if (modes != 1) throw PreconditionError("decompose: give exactly one of --factors, --annihilator, --k");
  SubspaceBasis V = a.subspace.empty() ? SubspaceBasis::trivial(d) : ctx.subspace(a.subspace);

  if (a.k > 0) {
    if (a.periodizers.empty()) throw PreconditionError("decompose --k needs --periodizers");
    if (!a.subspace.empty()) throw PreconditionError("decompose --k chooses its own subspaces; drop --subspace");
    std::vector<LaurentPoly> fs;
    for (const auto& p : a.periodizers) fs.push_back(ctx.poly(p));
    ctx.m.set_parameter("k", a.k);
    const auto oracle = [&](const SubspaceBasis& W) { return select_periodizer(fs, W); };
    emit_decomposition(ctx, k_periodic_decompose(c, a.k, oracle, ctx.opt.bounds, box), c, box);
    return;
  }

  std::vector<LaurentPoly> phis;
  if (!a.annihilator.empty()) {
    const LaurentPoly f = ctx.poly(a.annihilator);
    DifferenceProduct dp = search_difference_annihilator(c, f, ctx.opt.bounds.search);
    ctx.m.report()["certificate"] = dp.to_string();
    if (V.dimension() > 0) {
      const auto periods = periods_in_subspace(c, V, ctx.opt.bounds.period);
      dp = reduce_annihilator(dp, Subject::of(c), V, periods, ctx.opt.bounds.search);
      ctx.m.report()["reduced_certificate"] = dp.to_string();
    }
    ctx.m.add_check(from_verdict("certificate annihilates c", is_annihilated(dp.expand(d), c)));
    phis = dp.factors();
  } else {
    for (const auto& p : a.factors) phis.push_back(ctx.poly(p));
  }
  emit_decomposition(ctx, decompose_product(phis, c, V), c, box);
}

// ---- sparse -----------------------------------------------------------

void emit_families(Ctx& ctx, const std::vector<FiberSum>& families, const ConfigView& c, const Box& box,
                   bool exact) {
  json fams = json::array();
  std::vector<ConfigView> parts;
  for (std::size_t i = 0; i < families.size(); ++i) {
    ctx.m.write_output(ctx.out_dir(), "family_" + std::to_string(i + 1) + ".json", dump_config(ConfigView(families[i])));
    json dirs = json::array();
    for (const auto& v : families[i].directions()) dirs.push_back(vec_json(v));
    fams.push_back({{"fibers", families[i].fibers().size()}, {"directions", dirs}});
    parts.emplace_back(families[i]);
  }
  ctx.m.report()["families"] = fams;
  ctx.m.report()["exact"] = exact;
  ctx.m.report()["check_box"] = box_json(box);
  ctx.m.add_check(sum_check("sum of families = c", parts, c, box, exact));
}

void annihilation_checks(Ctx& ctx, const std::vector<LaurentPoly>& phis, const std::vector<FiberSum>& families) {
  for (std::size_t i = 0; i < phis.size() && i < families.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    ctx.m.add_check(from_verdict("phi_" + idx + " kills family " + idx, is_annihilated(phis[i], ConfigView(families[i]))));
  }
}

void cmd_sparse(Ctx& ctx, const std::string& op, const std::string& config, const std::vector<std::string>& polys,
                const std::string& dir) {
  const ConfigView c = ctx.config(config);
  const Box box = ctx.box_for(c);
  const Bounds& b = ctx.opt.bounds;
  std::vector<LaurentPoly> phis;
  for (const auto& p : polys) phis.push_back(ctx.poly(p));

  if (op == "fibers") {
    if (dir.empty()) throw PreconditionError("sparse fibers needs --dir");
    if (!phis.empty()) throw PreconditionError("sparse fibers takes no polynomials");
    const IntVector v = parse_vector(dir, c.dim());
    ctx.m.set_parameter("dir", vec_json(v));
    const FiberExtraction fe = fiber_extract(c, v, b.period);
    emit_families(ctx, {fe.fibers}, c, box, fe.exact);
  } else if (op == "split") {
    if (phis.size() != 2) throw PreconditionError("sparse split takes phi and psi");
    const SparseSplit s = sparse_split2(c, phis[0], phis[1], b, box);
    record_log(ctx.m, s.log);
    emit_families(ctx, {s.first.fibers, s.second.fibers}, c, box, s.first.exact && s.second.exact);
    annihilation_checks(ctx, phis, {s.first.fibers, s.second.fibers});
  } else if (op == "decompose") {
    if (phis.empty()) throw PreconditionError("sparse decompose takes at least one factor");
    const SparseDecomposition s = sparse_decompose(c, phis, b, box);
    record_log(ctx.m, s.log);
    emit_families(ctx, s.families, c, box, s.exact);
    annihilation_checks(ctx, phis, s.families);
  } else {
    if (phis.size() != 1) throw PreconditionError("sparse full takes one annihilator");
    const SparseDecomposition s = sparse_full(c, phis[0], b, box);
    record_log(ctx.m, s.log);
    json dirs = json::array();
    for (const auto& v : s.directions) dirs.push_back(vec_json(v));
    ctx.m.report()["directions"] = dirs;
    emit_families(ctx, s.families, c, box, s.exact);
    // Each family is killed by X^{L v} - 1, L the lcm of its fiber periods.
    for (std::size_t i = 0; i < s.families.size() && i < s.directions.size(); ++i) {
      std::int64_t L = 1;
      for (const auto& fiber : s.families[i].fibers()) L = std::lcm(L, fiber.period);
      const IntVector step = L * s.directions[i];
      ctx.m.add_check(from_verdict("X^" + step.to_string() + " - 1 kills family " + std::to_string(i + 1),
                                   is_annihilated(difference_poly(step), ConfigView(s.families[i]))));
    }
  }
}

// ---- tiling -----------------------------------------------------------

void cmd_tiling(Ctx& ctx, const std::string& op, const std::vector<std::string>& files) {
  if (op == "verify") {
    if (files.size() != 2) throw PreconditionError("tiling verify takes TILE CONFIG");
    const Tile D = ctx.tile(files[0]);
    const ConfigView c = ctx.config(files[1]);
    ctx.m.report()["tile_polynomial"] = json::parse(dump_poly(tile_polynomial(D)));
    ctx.m.add_check(from_verdict("c co-tiles D", verify_cotiler(D, c)));
    return;
  }
  if (op == "independent") {
    if (files.empty()) throw PreconditionError("tiling independent takes at least one tile");
    std::vector<Tile> tiles;
    for (const auto& f : files) tiles.push_back(ctx.tile(f));
    const IndependenceResult r = independent(tiles);
    json w = json::array();
    for (const auto& v : r.witness) w.push_back(vec_json(v));
    ctx.m.report()["independent"] = r.independent;
    if (!r.independent) ctx.m.report()["witness"] = {{"choice", w}, {"relation", rationals_json(r.relation)}};
    ctx.m.add_check({"tiles are independent", r.independent, true, std::nullopt,
                     r.independent ? "" : "dependent choice recorded in report"});
    return;
  }
  if (files.size() < 2) throw PreconditionError("tiling decompose takes CONFIG TILE...");
  const ConfigView c = ctx.config(files[0]);
  std::vector<Tile> tiles;
  for (std::size_t i = 1; i < files.size(); ++i) {
    tiles.push_back(ctx.tile(files[i]));
    ctx.m.add_check(from_verdict("c co-tiles tile " + std::to_string(i), verify_cotiler(tiles.back(), c)));
  }
  const Box box = ctx.box_for(c);
  emit_decomposition(ctx, cotiler_decompose(tiles, c, ctx.opt.bounds, box), c, box);
}

std::string text_summary(const RunManifest& m, const json& j, const std::string& opt_out) {
  std::ostringstream os;
  for (const auto& c : m.checks()) {
    os << (c.holds ? "PASS" : "FAIL") << "  " << c.name << " (" << (c.exact ? "exact" : "window evidence") << ")";
    if (!c.detail.empty() && !c.holds) os << ": " << c.detail;
    os << '\n';
  }
  for (const auto& o : j["outputs"]) os << "wrote " << (std::filesystem::path(opt_out) / o.get<std::string>()).string() << '\n';
  os << "status: " << j["status"].get<std::string>() << '\n';
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"perdec: periodic decomposition of Z^d configurations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::size_t dim = 0;
  app.add_option("--dim", dim, "Required dimension of every input")->check(CLI::Range(1, 16));
  app.add_option("--bound-search", opt.bounds.search, "Search bound")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--bound-period", opt.bounds.period, "Period bound")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--kmax", opt.bounds.kmax, "Stabilization k_max")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--patience", opt.bounds.patience, "Stabilization patience")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--window", opt.window, "Check/raster box lo..hi, e.g. -5..5 or -5,0..5,9 (use --window=...)");
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--format", opt.format, "Stdout format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::string command;
  std::function<void(Ctx&)> action;

  auto* poly = app.add_subcommand("poly", "Polynomial arithmetic")->require_subcommand(1);
  std::vector<std::string> poly_files;
  for (const char* op : {"add", "mul", "line-dir"}) {
    auto* sub = poly->add_subcommand(op, std::string("poly ") + op);
    sub->add_option("polys", poly_files, "Polynomial JSON files")->required();
    sub->callback([&, op] {
      command = std::string("poly ") + op;
      action = [&, op](Ctx& ctx) { cmd_poly(ctx, op, poly_files); };
    });
  }

  std::string act_poly, act_config;
  auto* act = app.add_subcommand("act", "Apply a polynomial to a configuration");
  act->add_option("poly", act_poly)->required();
  act->add_option("config", act_config)->required();
  act->callback([&] {
    command = "act";
    action = [&](Ctx& ctx) { cmd_act(ctx, act_poly, act_config); };
  });

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "Periodic decomposition");
  decompose->add_option("config", dec.config)->required();
  decompose->add_option("--factors", dec.factors, "Line polynomials phi_1..phi_m");
  decompose->add_option("--annihilator", dec.annihilator, "Annihilator f; searched for a difference product");
  decompose->add_option("--k", dec.k, "k-periodic decomposition with --periodizers");
  decompose->add_option("--periodizers", dec.periodizers, "Periodizer polynomials for --k");
  decompose->add_option("--subspace", dec.subspace, "Subspace V (default trivial)");
  decompose->callback([&] {
    command = "decompose";
    action = [&](Ctx& ctx) { cmd_decompose(ctx, dec); };
  });

  auto* sparse = app.add_subcommand("sparse", "Sparse configurations")->require_subcommand(1);
  std::string sparse_config, sparse_dir;
  std::vector<std::string> sparse_polys;
  for (const char* op : {"fibers", "split", "decompose", "full"}) {
    auto* sub = sparse->add_subcommand(op, std::string("sparse ") + op);
    sub->add_option("config", sparse_config)->required();
    sub->add_option("polys", sparse_polys, "Polynomial JSON files");
    if (std::string(op) == "fibers") sub->add_option("--dir", sparse_dir, "Fiber direction, e.g. 1,0");
    sub->callback([&, op] {
      command = std::string("sparse ") + op;
      action = [&, op](Ctx& ctx) { cmd_sparse(ctx, op, sparse_config, sparse_polys, sparse_dir); };
    });
  }

  auto* tiling = app.add_subcommand("tiling", "Tilings and co-tilers")->require_subcommand(1);
  std::vector<std::string> tiling_files;
  for (const char* op : {"verify", "independent", "decompose"}) {
    auto* sub = tiling->add_subcommand(op, std::string("tiling ") + op);
    sub->add_option("files", tiling_files, "Input JSON files")->required();
    sub->callback([&, op] {
      command = std::string("tiling ") + op;
      action = [&, op](Ctx& ctx) { cmd_tiling(ctx, op, tiling_files); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (dim > 0) opt.dim = dim;

  std::vector<std::string> args(argv, argv + argc);
  RunManifest m(command, std::vector<std::string>(args.begin() + 1, args.end()));
  m.set_parameter("bound_search", opt.bounds.search);
  m.set_parameter("bound_period", opt.bounds.period);
  m.set_parameter("kmax", opt.bounds.kmax);
  m.set_parameter("patience", opt.bounds.patience);
  m.set_parameter("window", opt.window.empty() ? json(nullptr) : json(opt.window));
  m.set_parameter("dim", opt.dim ? json(*opt.dim) : json(nullptr));

  Ctx ctx{opt, m, opt.dim};
  try {
    action(ctx);
  } catch (const InconclusiveError& e) {
    m.set_error(std::string("inconclusive: ") + e.what(), 2);
  } catch (const std::exception& e) {
    m.set_error(e.what(), 1);
  }

  json j = m.to_json();
  try {
    std::filesystem::create_directories(opt.out);
    std::ofstream(std::filesystem::path(opt.out) / "manifest.json") << j.dump(2) << '\n';
  } catch (const std::exception& e) {
    err << "perdec: cannot write manifest: " << e.what() << '\n';
    return 1;
  }
  if (j.contains("error")) err << "perdec: " << j["error"].get<std::string>() << '\n';
  if (opt.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    out << text_summary(m, j, opt.out);
  }
  return m.exit_code();
}

}  // namespace perdec::cli
