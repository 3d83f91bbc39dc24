// teichray — asymptotic invariants of Teichmüller rays from the command line.
//
// Every subcommand reads one JSON document (path or "-" for stdin), writes
// its result to stdout (JSON, or CSV for `trace`), and exits with
//   0  success ("+inf" is a successful answer and is serialized explicitly),
//   1  malformed input (bad JSON, schema violations, bad flags),
//   2  well-formed but mathematically invalid input (disconnected origami,
//      non-primitive curve, 0/0 certificate, or a not-comparable pair when
//      --require-finite demanded a finite answer).
//
// Output is deterministic: byte-identical for identical inputs. The only
// non-payload line is the version banner, suppressible with --no-banner.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "teich/json_io.hpp"
#include "teich/torus.hpp"

namespace {

using teich::Json;
using teich::Rat;

constexpr const char* kBanner = "teichray 1.0.0";

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw teich::schema_error("cannot read input file: " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

Json load_json(const std::string& path) {
  return teich::parse_json_text(read_input(path));
}

const Json& field(const Json& j, const char* key, const char* what) {
  return teich::detail::require_field(j, key, what);
}

double number_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number())
    throw teich::schema_error(std::string(what) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

// Shortest decimal that round-trips; locale-independent.
std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------
// pair-input subcommands

std::pair<teich::RayDecomposition, teich::RayDecomposition> load_pair(
    const std::string& path) {
  return teich::pair_from_json(load_json(path));
}

void require_finite_or_throw(bool finite) {
  if (!finite)
    throw std::invalid_argument(
        "rays are not comparable (no finite answer exists) and --require-finite "
        "was given");
}

int cmd_distance(const std::string& path, bool require_finite) {
  const auto [d1, d2] = load_pair(path);
  const teich::LogDistance lim = teich::limiting_distance(d1, d2);
  if (require_finite) require_finite_or_throw(!lim.is_infinite());
  emit(teich::to_json(lim));
  return 0;
}

int cmd_detour(const std::string& path, bool require_finite) {
  const auto [d1, d2] = load_pair(path);
  const teich::DetourDistance delta = teich::detour_distance(d1, d2);
  if (require_finite) require_finite_or_throw(!delta.is_infinite());
  Json out = teich::to_json(delta.as_log_distance());
  if (!delta.is_infinite()) {
    out["r1"] = teich::to_string(delta.r1());
    out["r2"] = teich::to_string(delta.r2());
    out["argmax1"] = d1[delta.argmax1()].id;
    out["argmax2"] = d1[delta.argmax2()].id;
  }
  emit(out);
  return 0;
}

int cmd_shift(const std::string& path, bool require_finite,
              const std::optional<std::array<double, 3>>& grid) {
  const auto [d1, d2] = load_pair(path);
  const auto sigma = teich::optimal_shift(d1, d2);
  if (require_finite) require_finite_or_throw(sigma.has_value());
  Json out;
  out["comparable"] = sigma.has_value();
  if (sigma) {
    out["sigma"] = sigma->sigma();
    out["exp4_sigma"] = teich::to_string(sigma->exp4());
  } else {
    out["sigma"] = nullptr;
    out["exp4_sigma"] = nullptr;
  }
  out["min_distance"] = teich::to_json(teich::min_limiting_distance(d1, d2));
  if (grid) {
    const auto scan = teich::sigma_scan(d1, d2, (*grid)[0], (*grid)[1], (*grid)[2]);
    Json js;
    js["argmin"] = scan.argmin;
    js["min_value"] = std::isinf(scan.min_value) ? Json("+inf") : Json(scan.min_value);
    js["evaluations"] = scan.evaluations;
    out["scan"] = std::move(js);
  }
  emit(out);
  return 0;
}

int cmd_equiv(const std::string& path) {
  const auto [d1, d2] = load_pair(path);
  const auto ratio = teich::modular_equivalence(d1, d2);
  Json out;
  out["comparable"] = teich::align(d1, d2).comparable();
  out["asymptotic"] = ratio.has_value();
  out["busemann_equal"] = teich::busemann_equal(d1, d2);
  out["modular_ratio"] = ratio ? Json(teich::to_string(*ratio)) : Json(nullptr);
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// limit

int cmd_limit(const std::string& path) {
  const Json in = load_json(path);
  const teich::RayDecomposition d =
      teich::decomposition_from_json(field(in, "ray", "limit input"));
  const teich::FoliationSpec f =
      teich::foliation_from_json(field(in, "foliation", "limit input"), d.size());

  // A basis foliation is disjoint from every component, so its shrink limit
  // vanishes; otherwise the closed form runs on the supplied pairings.
  teich::ShrinkRoot shrink{Rat(0), 0.0};
  if (const auto* gen = std::get_if<teich::GeneralFoliation>(&f))
    shrink = teich::shrink_limit_root(d, gen->u);

  Json out;
  Json js;
  js["value"] = teich::as_double(shrink.square);
  js["exact"] = teich::to_string(shrink.square);
  js["sqrt_value"] = shrink.root;
  out["shrink"] = std::move(js);
  out["grow"] = teich::to_json(teich::grow_limit(d, f));
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// torus-verify

teich::TorusPoint torus_point(const Json& j, const char* what) {
  return teich::TorusPoint(number_field(j, "re", what), number_field(j, "im", what));
}

teich::CurveClass curve_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw teich::schema_error("curve: expected [p, q]");
  return teich::CurveClass(teich::detail::integer_from_json(j[0], "curve p"),
                           teich::detail::integer_from_json(j[1], "curve q"));
}

std::vector<double> grid_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw teich::schema_error(std::string(what) + ": expected a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_number())
      throw teich::schema_error(std::string(what) + ": entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Json curve_json(const teich::CurveClass& c) { return Json::array({c.p, c.q}); }

int cmd_torus_verify(const std::string& path) {
  const Json in = load_json(path);
  const teich::TorusPoint w = torus_point(field(in, "omega", "torus-verify"), "omega");
  std::vector<teich::CurveClass> curves;
  const Json& jc = field(in, "curves", "torus-verify");
  if (!jc.is_array() || jc.empty())
    throw teich::schema_error("torus-verify: \"curves\" must be a nonempty array");
  for (const Json& c : jc) curves.push_back(curve_from_json(c));
  const auto t_grid = grid_from_json(field(in, "t_grid", "torus-verify"), "t_grid");
  double tol = 1e-9;
  if (in.contains("tol")) tol = number_field(in, "tol", "torus-verify");

  const auto report = teich::verify_limits(w, curves, t_grid, tol);
  Json out;
  out["ok"] = report.ok();
  out["max_shrink_mismatch"] = report.max_shrink_mismatch;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json je;
    je["curve"] = curve_json(e.curve);
    je["t"] = e.t;
    je["shrink_measured"] = e.shrink_measured;
    je["shrink_limit"] = teich::to_string(e.shrink_limit_exact);
    je["shrink_residual"] = teich::to_string(e.shrink_residual);
    je["shrink_mismatch"] = e.shrink_mismatch;
    je["walsh_ok"] = e.walsh_ok;
    je["grow_measured"] = e.grow_measured;
    je["grow_limit"] = teich::to_json(e.grow_limit);
    entries.push_back(std::move(je));
  }
  out["entries"] = std::move(entries);
  std::size_t equalities = 0;
  for (const auto& chk : report.pair_checks) equalities += chk.equality ? 1 : 0;
  Json pc;
  pc["count"] = report.pair_checks.size();
  pc["equalities"] = equalities;
  out["pair_checks"] = std::move(pc);
  out["failures"] = report.failures;

  if (in.contains("omega2")) {
    const teich::TorusPoint w2 = torus_point(in.at("omega2"), "omega2");
    long bound = 50;
    if (in.contains("kerckhoff_bound"))
      bound = teich::detail::integer_from_json(in.at("kerckhoff_bound"),
                                               "kerckhoff_bound");
    const auto k = teich::kerckhoff_sup(w, w2, bound);
    const double exact = teich::teich_dist_exact(w, w2);
    Json jk;
    jk["bound"] = bound;
    jk["value"] = k.value;
    jk["argmax"] = curve_json(k.argmax);
    jk["ratio"] = teich::to_string(k.ratio);
    jk["hyperbolic_value"] = exact;
    jk["gap"] = exact - k.value;
    out["kerckhoff"] = std::move(jk);
  }
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// origami-analyze

Json cells_json(const std::vector<int>& cells) {
  Json out = Json::array();
  for (const int c : cells) out.push_back(c + 1);  // cells are 1-indexed outside
  return out;
}

teich::Direction direction_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "vertical") return teich::Direction::vertical;
    if (s == "horizontal") return teich::Direction::horizontal;
  }
  throw teich::schema_error("direction must be \"vertical\" or \"horizontal\"");
}

Json direction_report(const teich::Origami& o, teich::Direction dir) {
  const auto cyls = teich::cylinders(o, dir);
  const auto d = teich::ray_data(o, dir);
  Json jcyls = Json::array();
  Json jmod = Json::array();
  Json jgrow = Json::array();
  for (std::size_t j = 0; j < cyls.size(); ++j) {
    Json jc;
    jc["cells"] = cells_json(cyls[j].cells);
    jc["width"] = cyls[j].width;
    jc["circumference"] = cyls[j].circumference;
    jc["core_cells"] = cells_json(cyls[j].core_cells);
    jcyls.push_back(std::move(jc));
    jmod.push_back(teich::to_string(d.modulus(j)));
    // growth constant of the core curve: lim e^{2t} Ext = 1/modulus
    std::vector<Rat> c(cyls.size(), Rat(0));
    c[j] = 1;
    jgrow.push_back(teich::to_string(teich::grow_limit_basis(d, {std::move(c)})));
  }
  Json out;
  out["cylinders"] = std::move(jcyls);
  out["moduli"] = std::move(jmod);
  out["area"] = teich::to_string(d.area());
  out["grow_limits"] = std::move(jgrow);
  return out;
}

int cmd_origami_analyze(const std::string& path) {
  const Json in = load_json(path);
  const bool composite = in.is_object() && in.contains("origami");
  const teich::Origami o =
      teich::origami_from_json(composite ? in.at("origami") : in);

  Json out;
  out["n"] = o.size();
  out["genus"] = o.genus();
  out["cone_orders"] = o.cone_orders();
  out["vertical"] = direction_report(o, teich::Direction::vertical);
  out["horizontal"] = direction_report(o, teich::Direction::horizontal);
  out["core_intersections"] = teich::core_intersections(o);

  if (composite && in.contains("compare_to")) {
    const teich::Origami other = teich::origami_from_json(in.at("compare_to"));
    teich::Direction dir = teich::Direction::vertical;
    if (in.contains("direction")) dir = direction_from_json(in.at("direction"));
    const Json& jm = field(in, "matching", "origami comparison");
    if (!jm.is_array())
      throw teich::schema_error("origami comparison: \"matching\" must be an array");
    std::vector<std::pair<std::size_t, std::size_t>> matching;
    for (const Json& e : jm) {
      if (!e.is_array() || e.size() != 2)
        throw teich::schema_error("origami comparison: matching entries are [j, k]");
      const long a = teich::detail::integer_from_json(e[0], "matching");
      const long b = teich::detail::integer_from_json(e[1], "matching");
      if (a < 0 || b < 0)
        throw teich::schema_error("origami comparison: matching indices are 0-based "
                                  "and nonnegative");
      matching.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    const auto report = teich::compare_rays(o, other, matching, dir);
    Json jr;
    jr["comparable"] = report.alignment.comparable();
    jr["limiting"] = teich::to_json(report.limiting);
    jr["detour"] = teich::to_json(report.detour.as_log_distance());
    jr["asymptotic"] = report.asymptotic;
    jr["busemann_equal"] = report.busemann;
    jr["modular_ratio"] =
        report.modular_ratio ? Json(teich::to_string(*report.modular_ratio)) : Json(nullptr);
    if (report.shift) {
      jr["sigma"] = report.shift->sigma();
      jr["exp4_sigma"] = teich::to_string(report.shift->exp4());
    } else {
      jr["sigma"] = nullptr;
      jr["exp4_sigma"] = nullptr;
    }
    jr["min_distance"] = teich::to_json(report.min_distance);
    out["comparison"] = std::move(jr);
  }
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// trace

void csv_row(std::ostream& os, double t, const char* quantity, double value,
             double lo, double hi, double limit) {
  os << format_double(t) << ',' << quantity << ',' << format_double(value) << ','
     << format_double(lo) << ',' << format_double(hi) << ','
     << format_double(limit) << "\n";
}

int cmd_trace(const std::string& path) {
  const Json in = load_json(path);
  std::cout << "t,quantity,value,bound_low,bound_high,limit\n";

  if (in.is_object() && in.contains("origami")) {
    const teich::Origami o = teich::origami_from_json(in.at("origami"));
    teich::Direction dir = teich::Direction::vertical;
    if (in.contains("direction")) dir = direction_from_json(in.at("direction"));
    const long j = teich::detail::integer_from_json(field(in, "cylinder", "trace"),
                                                    "trace \"cylinder\"");
    if (j < 0) throw teich::schema_error("trace: \"cylinder\" must be >= 0");
    const auto t_grid = grid_from_json(field(in, "t_grid", "trace"), "t_grid");
    for (const double t : t_grid) {
      const auto b = teich::finite_t_bounds(o, static_cast<std::size_t>(j), t, dir);
      // no exact finite-t value exists at genus >= 2; the limit is the
      // reciprocal modulus, which the upper bound realizes
      csv_row(std::cout, t, "core_ext", std::nan(""), b.lower, b.upper, b.upper);
    }
    return 0;
  }

  const teich::TorusPoint w = torus_point(field(in, "omega", "trace"), "omega");
  const teich::CurveClass c = curve_from_json(field(in, "curve", "trace"));
  const auto t_grid = grid_from_json(field(in, "t_grid", "trace"), "t_grid");
  const auto report = teich::verify_limits(w, {c}, t_grid);
  for (const auto& e : report.entries) {
    const double limit = teich::as_double(e.shrink_limit_exact);
    const double high = teich::as_double(e.shrink_limit_exact + e.shrink_residual);
    csv_row(std::cout, e.t, "shrink", e.shrink_measured, limit, high, limit);
    if (e.grow_limit.is_finite()) {
      const double g = e.grow_limit.as_double();
      csv_row(std::cout, e.t, "grow", e.grow_measured, g, g, g);
    }
  }
  return 0;
}

std::array<double, 3> parse_sigma_grid(const std::string& s) {
  std::array<double, 3> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t next = i < 2 ? s.find(':', pos) : s.size();
    if (next == std::string::npos)
      throw teich::schema_error("--sigma-grid expects lo:hi:step");
    const std::string part = s.substr(pos, next - pos);
    const char* begin = part.data();
    const char* end = begin + part.size();
    const auto res = std::from_chars(begin, end, out[i]);
    if (res.ec != std::errc() || res.ptr != end)
      throw teich::schema_error("--sigma-grid expects lo:hi:step");
    pos = next + 1;
  }
  if (!(out[2] > 0) || !(out[0] <= out[1]))
    throw teich::schema_error("--sigma-grid needs lo <= hi and step > 0");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotic invariants of Teichmüller rays"};
  app.require_subcommand(1);
  bool no_banner = false;
  app.add_flag("--no-banner", no_banner, "suppress the version header line");

  std::string input;
  bool require_finite = false;
  std::string sigma_grid;

  auto add_input = [&input](CLI::App* sub) {
    sub->add_option("input", input, "input JSON path, or - for stdin")->required();
  };

  CLI::App* limit = app.add_subcommand("limit", "shrink/grow limits of a foliation");
  add_input(limit);
  CLI::App* distance = app.add_subcommand("distance", "limiting distance of two rays");
  add_input(distance);
  distance->add_flag("--require-finite", require_finite,
                     "fail (exit 2) when the rays are not comparable");
  CLI::App* detour = app.add_subcommand("detour", "detour distance of two rays");
  add_input(detour);
  detour->add_flag("--require-finite", require_finite,
                   "fail (exit 2) when the rays are not comparable");
  CLI::App* shift = app.add_subcommand("shift", "optimal shift and minimal distance");
  add_input(shift);
  shift->add_flag("--require-finite", require_finite,
                  "fail (exit 2) when the rays are not comparable");
  shift->add_option("--sigma-grid", sigma_grid,
                    "scan shifts on lo:hi:step and report the grid minimum");
  CLI::App* equiv = app.add_subcommand("equiv", "asymptoticity / Busemann equality");
  add_input(equiv);
  CLI::App* torus = app.add_subcommand("torus-verify",
                                       "check the limit formulas on a flat torus");
  add_input(torus);
  CLI::App* origami = app.add_subcommand("origami-analyze",
                                         "cylinders, moduli and limits of an origami");
  add_input(origami);
  CLI::App* trace = app.add_subcommand("trace", "CSV convergence trace over a t-grid");
  add_input(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (!no_banner) std::cout << kBanner << "\n";

  try {
    if (limit->parsed()) return cmd_limit(input);
    if (distance->parsed()) return cmd_distance(input, require_finite);
    if (detour->parsed()) return cmd_detour(input, require_finite);
    if (shift->parsed()) {
      std::optional<std::array<double, 3>> grid;
      if (!sigma_grid.empty()) grid = parse_sigma_grid(sigma_grid);
      return cmd_shift(input, require_finite, grid);
    }
    if (equiv->parsed()) return cmd_equiv(input);
    if (torus->parsed()) return cmd_torus_verify(input);
    if (origami->parsed()) return cmd_origami_analyze(input);
    if (trace->parsed()) return cmd_trace(input);
    return 1;  // unreachable: require_subcommand(1)
  } catch (const teich::schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
