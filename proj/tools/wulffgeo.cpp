// wulffgeo: anisotropic crystals, distances and geodesic certificates from
// the command line.
//
//   wulffgeo crystal  SPEC [--crystal-out F] [--polar-out F]
//   wulffgeo distance SPEC X Y [--construct]
//   wulffgeo verify   SPEC PATH
//   wulffgeo suite    SPEC
//   wulffgeo sample   arc|bezier ...
//
// Global flags: --grid M, --tol T, --seed S, --format json|csv, --svg FILE.
// Exit codes: 0 success, 1 negative verdict or failed invariant, 2 usage or
// parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wulff/wulff.hpp"

using namespace wulff;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t grid = 0;  // 0: from the spec file, else the default
  double tol = -1.0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string svg;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a, enough to tell inputs apart in a report.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Vec2 parse_point(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  double x = 0, y = 0;
  std::string rest;
  if (!(in >> x >> y) || (in >> rest)) throw UsageError("expected a planar point 'x,y', got '" + s + "'");
  return {x, y};
}

struct Loaded {
  std::string text;
  IntegrandSpec spec;
  SphereGrid grid;
};

Loaded load(const std::string& path, const Options& opt) {
  std::string text = slurp(path);
  IntegrandSpec spec = parse_integrand_spec(text);
  if (spec.integrand.dimension() != 2) throw UsageError("only planar integrands are supported by this command");
  std::size_t m = SphereGrid::kDefaultPlanarSize;
  if (spec.grid_resolution) m = *spec.grid_resolution;
  if (opt.grid) m = opt.grid;
  return {std::move(text), std::move(spec), SphereGrid::circle(m)};
}

Json inputs(const std::string& path, const Loaded& in, const Context& ctx, const Options& opt) {
  return {{"spec", path},
          {"spec_digest", digest(in.text)},
          {"grid", ctx.grid().size()},
          {"resolution", report_value(ctx.resolution())},
          {"seed", opt.seed}};
}

void emit(const Json& report, const Options& opt) {
  if (opt.format == "csv")
    std::cout << to_csv(report);
  else
    std::cout << report.dump(2) << "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

Json points(const std::vector<Vec2>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(report_point(p));
  return a;
}

Json path_points(const Path& p) {
  Json a = Json::array();
  for (const auto& x : p.breakpoints()) a.push_back(report_point(as_vec2(x)));
  return a;
}

int cmd_crystal(const std::string& spec_path, const std::string& crystal_out, const std::string& polar_out,
                const Options& opt) {
  const Loaded in = load(spec_path, opt);
  const Context ctx(in.spec.integrand, in.grid);
  std::vector<Vec2> graph;
  for (const auto& v : ctx.grid().directions()) graph.push_back(ctx.integrand()(v) * as_vec2(v));
  Json report = {{"command", "crystal"},
                 {"inputs", inputs(spec_path, in, ctx, opt)},
                 {"results",
                  {{"crystal", {{"vertices", points(ctx.crystal().vertices())}, {"area", report_value(ctx.crystal().area())}}},
                   {"polar_body", {{"vertices", points(ctx.polar_body().vertices())}, {"area", report_value(ctx.polar_body().area())}}},
                   {"extremal_points", points(extremal_points(ctx.polar_body()))},
                   {"graph", points(graph)}}}};
  if (!crystal_out.empty()) write_file(crystal_out, region_to_json(ctx.crystal()).dump(1) + "\n");
  if (!polar_out.empty()) write_file(polar_out, region_to_json(ctx.polar_body()).dump(1) + "\n");
  if (!opt.svg.empty()) write_file(opt.svg, svg_figure(ctx));
  emit(report, opt);
  return kOk;
}

int cmd_distance(const std::string& spec_path, const std::string& from, const std::string& to, bool construct,
                 const Options& opt) {
  const Loaded in = load(spec_path, opt);
  const Vec2 x = parse_point(from), y = parse_point(to);
  if ((y - x).norm() == 0.0) throw UsageError("endpoints coincide");
  const Context ctx(in.spec.integrand, in.grid);
  const auto kind = classify(ctx, x, y);
  Json results = {{"distance", report_value(geodesic_distance(ctx, x, y))}, {"classification", to_string(kind)}};
  std::vector<SvgPath> figure;
  if (construct || !opt.svg.empty()) {
    const Path g = construct_geodesic(ctx, x, y);
    const auto cert = is_geodesic(ctx, g, opt.tol);
    results["geodesic"] = path_points(g);
    results["certificate"] = certificate_to_json(cert);
    const auto dec = decompose_direction(ctx, y - x);
    Json terms = Json::array();
    for (const auto& t : dec.terms) terms.push_back({{"weight", report_value(t.weight)}, {"direction", report_point(t.direction)}});
    results["decomposition"] = terms;
    figure.push_back({g, "red"});
    if (kind == Multiplicity::InfinitelyMany) figure.push_back({geodesic_family(ctx, x, y, 0.5), "orange"});
  }
  Json report = {{"command", "distance"},
                 {"inputs", inputs(spec_path, in, ctx, opt)},
                 {"results", results},
                 {"tolerances", {{"verify", report_value(opt.tol < 0 ? ctx.default_tol() : opt.tol)}, {"extremal", report_value(ctx.extremal_tol())}}}};
  if (!opt.svg.empty()) write_file(opt.svg, svg_figure(ctx, figure));
  emit(report, opt);
  return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& path_file, const Options& opt) {
  const Loaded in = load(spec_path, opt);
  std::istringstream path_text(slurp(path_file));
  const Path path = read_path(path_text);
  if (path.dimension() != 2) throw UsageError("path is not planar");
  if (as_vec2(path.displacement()).norm() <= Path::kMinSegment) throw UsageError("path endpoints coincide");
  const Context ctx(in.spec.integrand, in.grid);
  const auto cert = is_geodesic(ctx, path, opt.tol);
  Json ins = inputs(spec_path, in, ctx, opt);
  ins["path"] = path_file;
  ins["path_digest"] = digest(slurp(path_file));
  Json report = {{"command", "verify"},
                 {"inputs", ins},
                 {"results", certificate_to_json(cert)},
                 {"tolerances", {{"verify", report_value(cert.tolerance)}}},
                 {"pass", cert.verdict}};
  if (!opt.svg.empty()) write_file(opt.svg, svg_figure(ctx, {{path, cert.verdict ? "red" : "orange"}}));
  emit(report, opt);
  return cert.verdict ? kOk : kNegative;
}

// ---------------------------------------------------------------- suite

struct Check {
  std::string name;
  bool pass;
  double value;
  double bound;
  std::string note;
};

std::vector<Check> run_suite(const Integrand& f, const SphereGrid& grid, std::uint64_t seed) {
  std::vector<Check> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const Context ctx(f, grid);
  const double res = ctx.resolution();
  const double maxf = ctx.max_value();
  // the sampled envelope sits O(res^2) below the exact one
  const double contact_tol = 10 * res * res * maxf;

  const double hd = hausdorff_distance(polar(ctx.polar_body()), ctx.crystal());
  out.push_back({"polar_duality", hd <= 5 * res, hd, 5 * res, "Hausdorff(polar(O_F), K_F)"});

  const auto d = convex_envelope(f, ctx.grid());
  double below = 0.0, support_gap = 0.0, fixed_gap = 0.0;
  std::vector<double> non_contact;
  for (std::size_t i = 0; i < ctx.grid().size(); ++i) {
    const Vector& v = ctx.grid()[i];
    below = std::max(below, d[i] - f(v));
    support_gap = std::max(support_gap, std::abs(d[i] - ctx.crystal().support(as_vec2(v))));
    fixed_gap = std::max(fixed_gap, std::abs(d[i] - f(v)));
    if (!contact_contains(f, d, v, contact_tol)) non_contact.push_back(ctx.grid().angles()[i]);
  }
  out.push_back({"envelope_below_integrand", below <= 1e-12, below, 1e-12, "max (D(F) - F) over the grid"});
  out.push_back({"envelope_is_crystal_support", support_gap <= 2 * res * maxf, support_gap, 2 * res * maxf, "max |D(F) - support(K_F)|"});
  if (f.is_convex())
    out.push_back({"envelope_fixes_convex", fixed_gap <= 2 * res * maxf, fixed_gap, 2 * res * maxf, "max |D(F) - F|"});

  std::size_t ort_fail = 0;
  for (const auto& h : ctx.crystal().halfspaces())
    if (!contact_contains(f, d, as_vector(h.normal), contact_tol)) ++ort_fail;
  out.push_back({"ort_in_cont", ort_fail == 0, static_cast<double>(ort_fail), 0, "crystal edge normals outside Cont(F)"});

  // non-contact directions, merged into arcs, reported in degrees
  std::string arcs;
  for (std::size_t i = 0; i < non_contact.size();) {
    std::size_t j = i;
    while (j + 1 < non_contact.size() && non_contact[j + 1] - non_contact[j] <= 1.5 * res) ++j;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s[%.4g, %.4g]", arcs.empty() ? "" : " ", non_contact[i] * 180 / std::numbers::pi,
                  non_contact[j] * 180 / std::numbers::pi);
    arcs += buf;
    i = j + 1;
  }
  out.push_back({"contact_set", true, static_cast<double>(non_contact.size()), 0,
                 non_contact.empty() ? "Cont(F) is everything" : "non-contact arcs (deg): " + arcs});

  const auto w = wulff_transform(f, ctx.grid());
  std::size_t disagree = 0;
  for (int k = 0; k < 2000; ++k) {
    const Vec2 x(1.5 * ctx.crystal().radius() * unif(rng), 1.5 * ctx.crystal().radius() * unif(rng));
    const double g = ctx.crystal().gauge(x);
    if (std::abs(g - 1.0) < 1e-3) continue;
    if (hypograph_contains(w, as_vector(x)) != (g <= 1.0)) ++disagree;
  }
  out.push_back({"crystal_is_hypograph", disagree == 0, static_cast<double>(disagree), 0, "membership disagreements K_F vs Hypo(W(F))"});

  const auto wr = wulff_identity_check(ctx);
  const double wulff_bound = f.is_convex() ? 1e-6 : 5 * res;
  out.push_back({"wulff_identity", wr.relative_difference <= wulff_bound, wr.relative_difference, wulff_bound,
                 "|Per_F - 2|K_F|| / Per_F; ratio " + std::to_string(wr.ratio) + " vs 2 sqrt(pi) = " + std::to_string(wr.euclidean_constant)});

  const double ball = hausdorff_distance(polar(geodesic_ball(ctx, {0, 0}, 1.0)), ctx.crystal());
  out.push_back({"ball_is_polar", ball <= 5 * res, ball, 5 * res, "Hausdorff(polar(ball(0,1)), K_F)"});

  std::size_t bad = 0;
  for (int k = 0; k < 200; ++k) {
    const Vec2 x(unif(rng), unif(rng)), y(unif(rng), unif(rng));
    if ((y - x).norm() < 1e-3) continue;
    if (!is_geodesic(ctx, construct_geodesic(ctx, x, y)).verdict) ++bad;
  }
  out.push_back({"constructed_geodesics_verify", bad == 0, static_cast<double>(bad), 0, "failures among 200 random pairs"});

  const Context lattice_ctx(f, grid.with_directions(lattice_directions(6)));
  double sandwich = 0.0, cross = 0.0;
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int k = 0; k < 20; ++k) {
    const LatticeVector v{coord(rng), coord(rng)};
    if (v[0] == 0 && v[1] == 0) continue;
    for (int order = 1; order <= 3; ++order) {
      sandwich = std::max(sandwich, lattice_ctx.envelope(to_vec2(v)) - oracle_distance(f, v, Stencil::order(order)));
      cross = std::max(cross, oracle_cross_check(f, v, Stencil::order(order)).relative_gap);
    }
  }
  out.push_back({"oracle_sandwich", sandwich <= 1e-9, sandwich, 1e-9, "max (distance - oracle distance)"});
  out.push_back({"oracle_solvers_agree", cross <= 1e-6, cross, 1e-6, "max relative gap LP vs Dijkstra"});
  return out;
}

int cmd_suite(const std::string& spec_path, const Options& opt) {
  const Loaded in = load(spec_path, opt);
  const auto checks = run_suite(in.spec.integrand, in.grid, opt.seed);
  const Context ctx(in.spec.integrand, in.grid);
  Json table = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    table.push_back({{"invariant", c.name}, {"pass", c.pass}, {"value", report_value(c.value)}, {"bound", report_value(c.bound)}, {"note", c.note}});
    if (!c.pass) std::cerr << "wulffgeo: invariant failed: " << c.name << "\n";
  }
  Json report = {{"command", "suite"}, {"inputs", inputs(spec_path, in, ctx, opt)}, {"results", table}, {"pass", all}};
  if (!opt.svg.empty()) write_file(opt.svg, svg_figure(ctx));
  emit(report, opt);
  return all ? kOk : kNegative;
}

int cmd_sample(const std::string& curve, const std::vector<std::string>& pts, double radius, double a0, double a1,
               std::size_t count) {
  Path p = Path::segment(make_vector({0, 0}), make_vector({1, 0}));
  if (curve == "arc") {
    if (pts.size() != 1) throw UsageError("arc needs exactly one --points entry, the center");
    if (!(radius > 0.0)) throw UsageError("arc needs a positive --radius");
    const Vec2 c = parse_point(pts[0]);
    p = sample_curve([&](double t) { return as_vector(c + radius * unit_at(a0 + t * (a1 - a0))); }, count);
  } else if (curve == "bezier") {
    if (pts.size() < 2) throw UsageError("bezier needs at least two control points");
    std::vector<Vec2> ctrl;
    for (const auto& s : pts) ctrl.push_back(parse_point(s));
    p = sample_curve(
        [&](double t) {
          std::vector<Vec2> q = ctrl;  // de Casteljau
          for (std::size_t r = q.size() - 1; r > 0; --r)
            for (std::size_t i = 0; i < r; ++i) q[i] = (1 - t) * q[i] + t * q[i + 1];
          return as_vector(q[0]);
        },
        count);
  } else {
    throw UsageError("unknown curve '" + curve + "' (expected arc or bezier)");
  }
  write_path(std::cout, p);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic crystals, distances and geodesic certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--grid", opt.grid, "number of planar grid directions (default: spec value or 720)")->check(CLI::Range(3, 1000000));
  app.add_option("--tol", opt.tol, "verification tolerance (default: 1e-7 closed-form, 5*res*maxF otherwise)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--svg", opt.svg, "write an SVG figure to this file");

  std::string spec, path_file, from, to, crystal_out, polar_out, curve;
  bool construct = false;
  std::vector<std::string> ctrl;
  double radius = 1.0, a0 = 0.0, a1 = 1.0;
  std::size_t count = 16;

  auto* crystal = app.add_subcommand("crystal", "crystal K_F, polar body O_F and the polar graph of F");
  crystal->add_option("spec", spec, "integrand spec file")->required();
  crystal->add_option("--crystal-out", crystal_out, "write K_F as a region file");
  crystal->add_option("--polar-out", polar_out, "write O_F as a region file");

  auto* distance = app.add_subcommand("distance", "anisotropic distance and geodesic multiplicity");
  distance->add_option("spec", spec, "integrand spec file")->required();
  distance->add_option("x", from, "start point 'x,y'")->required();
  distance->add_option("y", to, "end point 'x,y'")->required();
  distance->add_flag("--construct", construct, "also construct and certify a geodesic");

  auto* verify = app.add_subcommand("verify", "certify a polyline as a geodesic (exit 0 iff it is one)");
  verify->add_option("spec", spec, "integrand spec file")->required();
  verify->add_option("path", path_file, "path file, one breakpoint per row")->required();

  auto* suite = app.add_subcommand("suite", "run every invariant check for one integrand");
  suite->add_option("spec", spec, "integrand spec file")->required();

  auto* sample = app.add_subcommand("sample", "sample a curve into a path file");
  sample->add_option("curve", curve, "arc or bezier")->required();
  sample->add_option("--points", ctrl, "arc center, or bezier control points, as 'x,y'");
  sample->add_option("--radius", radius, "arc radius");
  sample->add_option("--from", a0, "arc start angle (radians)");
  sample->add_option("--to", a1, "arc end angle (radians)");
  sample->add_option("--count", count, "number of segments")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*crystal) return cmd_crystal(spec, crystal_out, polar_out, opt);
    if (*distance) return cmd_distance(spec, from, to, construct, opt);
    if (*verify) return cmd_verify(spec, path_file, opt);
    if (*suite) return cmd_suite(spec, opt);
    if (*sample) return cmd_sample(curve, ctrl, radius, a0, a1, count);
  } catch (const ParseError& e) {
    std::cerr << "wulffgeo: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "wulffgeo: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "wulffgeo: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
