#ifndef WULFF_IO_HPP
#define WULFF_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wulff/geodesics.hpp"
#include "wulff/isoperimetry.hpp"

namespace wulff {

using Json = nlohmann::ordered_json;

/// Malformed input file. The message names the offending field or row.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits, the precision of every report.
inline double report_value(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline Json report_point(const Vec2& p) { return Json::array({report_value(p.x()), report_value(p.y())}); }

// ---------------------------------------------------------------- integrand spec

struct IntegrandSpec {
  Integrand integrand;
  std::optional<std::size_t> grid_resolution;
};

namespace detail {

[[noreturn]] inline void spec_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) spec_fail(where, "missing field '" + key + "'");
  return obj.at(key);
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) spec_fail(where, "expected a number");
  return j.get<double>();
}

inline Vector direction(const Json& j, const std::string& where, int n) {
  if (!j.is_array()) spec_fail(where, "expected an array of numbers");
  if (static_cast<int>(j.size()) != n) spec_fail(where, "expected " + std::to_string(n) + " components");
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

inline const Json& list(const Json& obj, const std::string& key, const std::string& where) {
  const Json& j = field(obj, key, where);
  if (!j.is_array() || j.empty()) spec_fail(where + "." + key, "expected a nonempty array");
  return j;
}

inline Integrand parse_integrand(const Json& j, const std::string& where) {
  if (!j.is_object()) spec_fail(where, "expected an object");
  const Json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) spec_fail(where + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  int n = 2;
  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_integer()) spec_fail(where + ".dimension", "expected an integer");
    n = j["dimension"].get<int>();
    if (n < 2) spec_fail(where + ".dimension", "must be >= 2");
  }
  try {
    if (kind == "pnorm") {
      const Json& p = field(j, "p", where);
      if (p.is_string() && p.get<std::string>() == "inf") return Integrand::pnorm(n, std::numeric_limits<double>::infinity());
      return Integrand::pnorm(n, number(p, where + ".p"));
    }
    if (kind == "constant") return Integrand::constant(n, number(field(j, "c", where), where + ".c"));
    if (kind == "crystalline") {
      std::vector<Integrand::Facet> facets;
      const Json& fs = list(j, "facets", where);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string w = where + ".facets[" + std::to_string(i) + "]";
        facets.push_back({direction(field(fs[i], "direction", w), w + ".direction", n),
                          number(field(fs[i], "weight", w), w + ".weight")});
      }
      return Integrand::crystalline(std::move(facets));
    }
    if (kind == "table") {
      if (n != 2) spec_fail(where + ".dimension", "table integrands are planar");
      std::vector<Integrand::TableSample> samples;
      const Json& ss = list(j, "samples", where);
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string w = where + ".samples[" + std::to_string(i) + "]";
        double angle = 0.0;
        if (ss[i].contains("angle")) {
          angle = number(ss[i]["angle"], w + ".angle");
        } else if (ss[i].contains("direction")) {
          angle = polar_angle(as_vec2(direction(ss[i]["direction"], w + ".direction", 2)));
        } else {
          spec_fail(w, "missing field 'angle' or 'direction'");
        }
        samples.push_back({angle, number(field(ss[i], "value", w), w + ".value")});
      }
      return Integrand::table(std::move(samples));
    }
    if (kind == "dip") {
      Integrand base = parse_integrand(field(j, "base", where), where + ".base");
      if (base.dimension() != n && j.contains("dimension")) spec_fail(where + ".base", "dimension mismatch");
      n = base.dimension();
      std::vector<Integrand::DipPoint> dips;
      const Json& ds = list(j, "dips", where);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::string w = where + ".dips[" + std::to_string(i) + "]";
        dips.push_back({direction(field(ds[i], "direction", w), w + ".direction", n),
                        number(field(ds[i], "value", w), w + ".value")});
      }
      return Integrand::dip(std::move(base), std::move(dips));
    }
  } catch (const std::invalid_argument& e) {
    spec_fail(where, e.what());
  }
  spec_fail(where + ".kind", "unknown kind '" + kind + "' (expected pnorm, constant, crystalline, table or dip)");
}

}  // namespace detail

inline IntegrandSpec parse_integrand_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  IntegrandSpec out{detail::parse_integrand(j, "$"), std::nullopt};
  if (j.contains("grid_resolution")) {
    const Json& g = j["grid_resolution"];
    if (!g.is_number_integer() || g.get<long long>() < 3) detail::spec_fail("$.grid_resolution", "expected an integer >= 3");
    out.grid_resolution = g.get<std::size_t>();
  }
  return out;
}

inline IntegrandSpec read_integrand_spec(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_integrand_spec(ss.str());
}

// ---------------------------------------------------------------- paths

/// One breakpoint per row, coordinates separated by whitespace. Blank rows
/// and text after '#' are ignored.
inline Path read_path(std::istream& in) {
  std::vector<Vector> pts;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> xs;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(x)) throw ParseError("path row " + std::to_string(row) + ": bad number '" + tok + "'");
      xs.push_back(x);
    }
    if (xs.empty()) continue;
    if (!pts.empty() && xs.size() != static_cast<std::size_t>(pts.front().size()))
      throw ParseError("path row " + std::to_string(row) + ": expected " + std::to_string(pts.front().size()) +
                       " coordinates, found " + std::to_string(xs.size()));
    if (xs.size() < 2) throw ParseError("path row " + std::to_string(row) + ": need at least 2 coordinates");
    pts.push_back(Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size())));
  }
  try {
    return Path(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("path: ") + e.what());
  }
}

inline void write_path(std::ostream& out, const Path& path) {
  char buf[40];
  for (const auto& p : path.breakpoints()) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i]);
      out << (i ? " " : "") << buf;
    }
    out << '\n';
  }
}

/// Polyline with `count` segments through t -> curve(t), t in [0, 1].
template <class Curve>
Path sample_curve(Curve&& curve, std::size_t count) {
  if (count < 1) throw std::invalid_argument("sample_curve: need at least one segment");
  std::vector<Vector> pts;
  for (std::size_t i = 0; i <= count; ++i) pts.push_back(curve(static_cast<double>(i) / static_cast<double>(count)));
  return Path(std::move(pts));
}

// ---------------------------------------------------------------- regions

/// Full precision, so that a region read back is the same region.
inline Json region_to_json(const ConvexRegion& r) {
  Json vs = Json::array(), hs = Json::array();
  for (const auto& v : r.vertices()) vs.push_back({v.x(), v.y()});
  for (const auto& h : r.halfspaces()) hs.push_back({{"normal", {h.normal.x(), h.normal.y()}}, {"offset", h.offset}});
  return {{"provenance", to_string(r.provenance())}, {"vertices", vs}, {"halfspaces", hs}};
}

inline ConvexRegion region_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("region: expected an object");
  Provenance prov = Provenance::user;
  try {
    if (j.contains("provenance")) prov = provenance_from_string(j.at("provenance").get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("region.provenance: ") + e.what());
  }
  const Json& vs = detail::list(j, "vertices", "region");
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < vs.size(); ++i)
    pts.push_back(as_vec2(detail::direction(vs[i], "region.vertices[" + std::to_string(i) + "]", 2)));
  try {
    ConvexRegion r = ConvexRegion::from_vertices(std::move(pts), prov);
    if (j.contains("halfspaces")) {
      for (std::size_t i = 0; i < j["halfspaces"].size(); ++i) {
        const std::string w = "region.halfspaces[" + std::to_string(i) + "]";
        const Json& h = j["halfspaces"][i];
        const Vec2 n = as_vec2(detail::direction(detail::field(h, "normal", w), w + ".normal", 2));
        const double off = detail::number(detail::field(h, "offset", w), w + ".offset");
        for (const auto& v : r.vertices())
          if (v.dot(n) > off + 1e-9 * std::max(1.0, std::abs(off))) throw ParseError(w + ": violated by a vertex");
      }
    }
    return r;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("region: ") + e.what());
  }
}

// ---------------------------------------------------------------- reports

inline Json certificate_to_json(const GeodesicCertificate& c) {
  Json segs = Json::array();
  for (const auto& s : c.per_segment)
    segs.push_back({{"direction", report_point(s.direction)}, {"contact_ok", s.contact_ok}, {"support_ok", s.support_ok}});
  Json face = {{"normal", report_point(c.contact_face.normal)},
               {"first", report_point(c.contact_face.first)},
               {"last", report_point(c.contact_face.last)},
               {"representative", report_point(c.contact_face.representative)}};
  return {{"verdict", c.verdict},
          {"tangency", c.tangency},
          {"achieved_length", report_value(c.achieved_length)},
          {"target_norm", report_value(c.target_norm)},
          {"tolerance", report_value(c.tolerance)},
          {"contact_face", face},
          {"common_point", c.common_point ? report_point(*c.common_point) : Json(nullptr)},
          {"per_segment", segs}};
}

inline Json wulff_report_to_json(const WulffReport& r) {
  return {{"perimeter", report_value(r.perimeter)},
          {"area", report_value(r.area)},
          {"n_times_area", report_value(r.n_times_area)},
          {"relative_difference", report_value(r.relative_difference)},
          {"ratio", report_value(r.ratio)},
          {"reference_ratio", report_value(r.reference_ratio)},
          {"euclidean_constant", report_value(r.euclidean_constant)}};
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

/// Two-column key,value rendering of a report, nested keys joined by dots.
inline std::string to_csv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(j, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
  return out;
}

// ---------------------------------------------------------------- svg

struct SvgPath {
  Path path;
  std::string color = "red";
};

/// Figure with K_F (blue), the polar graph of F (black), O_F (gray) and any
/// paths. y points up; the view box fits everything with a 10% margin.
inline std::string svg_figure(const Context& ctx, const std::vector<SvgPath>& paths = {}, std::size_t graph_samples = 720) {
  std::vector<Vec2> graph;
  for (std::size_t i = 0; i < graph_samples; ++i) {
    const Vec2 u = unit_at(kTwoPi * static_cast<double>(i) / static_cast<double>(graph_samples));
    graph.push_back(ctx.integrand()(u) * u);
  }
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  auto extend = [&](const Vec2& p) {
    lo_x = std::min(lo_x, p.x()), hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y()), hi_y = std::max(hi_y, p.y());
  };
  for (const auto& p : graph) extend(p);
  for (const auto& p : ctx.crystal().vertices()) extend(p);
  for (const auto& p : ctx.polar_body().vertices()) extend(p);
  for (const auto& sp : paths)
    for (const auto& p : sp.path.breakpoints()) extend(as_vec2(p));
  const double w = hi_x - lo_x, h = hi_y - lo_y;
  const double mx = 0.1 * w, my = 0.1 * h;
  const double stroke = 0.004 * std::max(w, h);

  auto coords = [](const std::vector<Vec2>& pts) {
    std::string s;
    char buf[64];
    for (const auto& p : pts) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g ", p.x(), -p.y());
      s += buf;
    }
    return s;
  };
  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.12g %.12g %.12g %.12g\" width=\"600\" height=\"%.0f\">\n",
                lo_x - mx, -hi_y - my, w + 2 * mx, h + 2 * my, 600.0 * (h + 2 * my) / (w + 2 * mx));
  std::string s = head;
  char attr[128];
  std::snprintf(attr, sizeof attr, "fill=\"none\" stroke-width=\"%.6g\"", stroke);
  s += "  <polygon id=\"polar-body\" stroke=\"gray\" " + std::string(attr) + " points=\"" + coords(ctx.polar_body().vertices()) + "\"/>\n";
  s += "  <polygon id=\"graph\" stroke=\"black\" " + std::string(attr) + " points=\"" + coords(graph) + "\"/>\n";
  s += "  <polygon id=\"crystal\" stroke=\"blue\" " + std::string(attr) + " points=\"" + coords(ctx.crystal().vertices()) + "\"/>\n";
  for (const auto& sp : paths) {
    std::vector<Vec2> pts;
    for (const auto& p : sp.path.breakpoints()) pts.push_back(as_vec2(p));
    s += "  <polyline stroke=\"" + sp.color + "\" " + attr + " points=\"" + coords(pts) + "\"/>\n";
  }
  return s + "</svg>\n";
}

}  // namespace wulff

#endif  // WULFF_IO_HPP
