#include "caustic/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "caustic/error.hpp"

namespace caustic {

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const char* event_token(EventKind kind) {
  return kind == EventKind::none ? "-" : to_string(kind);
}

EventKind parse_event_token(const std::string& token) {
  for (auto k : {EventKind::none, EventKind::cusp, EventKind::inflexion, EventKind::endpoint,
                 EventKind::degenerate})
    if (token == event_token(k)) return k;
  throw InputError("csv: unknown event token '" + token + "'");
}

std::vector<CsvRow> csv_rows(const EquidistantSet& set) {
  std::vector<CsvRow> rows;
  const double per_lambda = set.kind == SetKind::css ? std::nan("") : set.lambda;
  for (std::size_t b = 0; b < set.branches.size(); ++b)
    for (const auto& q : set.branches[b].points) {
      CsvRow r;
      r.branch = static_cast<int>(b);
      r.s_a = q.source.s_a;
      r.s_b = q.source.s_b;
      r.lambda = per_lambda;
      r.x = q.p.x;
      r.y = q.p.y;
      r.tangent_angle = angle_of(q.tangent_dir);
      r.kappa = q.kappa;
      r.event = q.event;
      rows.push_back(r);
    }
  return rows;
}

void write_csv(const EquidistantSet& set, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& r : csv_rows(set)) {
    os << r.branch << ',' << format_number(r.s_a) << ',' << format_number(r.s_b) << ','
       << format_number(r.lambda) << ',' << format_number(r.x) << ',' << format_number(r.y) << ','
       << format_number(r.tangent_angle) << ',' << format_number(r.kappa) << ','
       << event_token(r.event) << '\n';
  }
}

std::string csv_string(const EquidistantSet& set) {
  std::ostringstream os;
  write_csv(set, os);
  return os.str();
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InputError("csv: bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("csv: bad number '" + s + "'");
  }
}

}  // namespace

std::vector<CsvRow> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw InputError("csv: missing or wrong header");
  std::vector<CsvRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw InputError("csv: line " + std::to_string(lineno) + " has " +
                                        std::to_string(f.size()) + " fields");
    CsvRow r;
    r.branch = static_cast<int>(parse_double(f[0]));
    r.s_a = parse_double(f[1]);
    r.s_b = parse_double(f[2]);
    r.lambda = parse_double(f[3]);
    r.x = parse_double(f[4]);
    r.y = parse_double(f[5]);
    r.tangent_angle = parse_double(f[6]);
    r.kappa = parse_double(f[7]);
    r.event = parse_event_token(f[8]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> parse_csv_file(const std::string& path) {
  std::istringstream is(read_text_file(path));
  return parse_csv(is);
}

SvgLayer curve_layer(const SampledCurve& sc, bool dashed, const std::string& stroke) {
  SvgLayer layer;
  layer.dashed = dashed;
  layer.stroke = stroke;
  SvgPath path;
  path.closed = true;
  for (const auto& j : sc.jets) path.points.push_back(j.p);
  layer.paths.push_back(std::move(path));
  return layer;
}

SvgLayer set_layer(const EquidistantSet& set, const std::string& stroke) {
  SvgLayer layer;
  layer.stroke = stroke;
  for (const auto& b : set.branches) {
    SvgPath path;
    path.closed = b.closing.has_value();
    for (const auto& q : b.points) path.points.push_back(q.p);
    layer.paths.push_back(std::move(path));
  }
  for (const auto& e : set.events)
    if (e.kind == EventKind::cusp) layer.markers.push_back(e.location);
  return layer;
}

SvgLayer csv_layer(const std::vector<CsvRow>& rows, const std::string& stroke) {
  SvgLayer layer;
  layer.stroke = stroke;
  int current = -1;
  for (const auto& r : rows) {
    if (r.branch != current) {
      layer.paths.emplace_back();
      current = r.branch;
    }
    layer.paths.back().points.push_back({r.x, r.y});
    if (r.event == EventKind::cusp) layer.markers.push_back({r.x, r.y});
  }
  return layer;
}

std::string render_svg(const std::vector<SvgLayer>& layers, double width_px) {
  std::vector<Vec2> all;
  for (const auto& l : layers) {
    for (const auto& p : l.paths) all.insert(all.end(), p.points.begin(), p.points.end());
    all.insert(all.end(), l.markers.begin(), l.markers.end());
  }
  if (layers.empty() || all.empty()) throw InputError("render: nothing to draw");
  Vec2 lo = all[0], hi = all[0];
  for (const auto& p : all) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  double w = hi.x - lo.x, h = hi.y - lo.y;
  const double span = std::max({w, h, 1e-9});
  w = std::max(w, 1e-3 * span);
  h = std::max(h, 1e-3 * span);
  const double mx = 0.05 * w, my = 0.05 * h;
  const double vx = lo.x - mx, vw = w + 2 * mx, vh = h + 2 * my;
  // The y axis points up in curve coordinates: flip it.
  const double top = -(hi.y + my);
  const double stroke_scale = span / width_px;

  std::ostringstream os;
  auto num = [](double v) { return format_number(v, 8); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_px) << "\" height=\""
     << num(width_px * vh / vw) << "\" viewBox=\"" << num(vx) << ' ' << num(top) << ' ' << num(vw)
     << ' ' << num(vh) << "\">\n";
  for (const auto& l : layers) {
    const double sw = l.width * stroke_scale;
    os << "<g fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"" << num(sw) << '"';
    if (l.dashed) os << " stroke-dasharray=\"" << num(6 * sw) << ' ' << num(4 * sw) << '"';
    os << ">\n";
    for (const auto& p : l.paths) {
      if (p.points.empty()) continue;
      os << (p.closed ? "<polygon" : "<polyline") << " points=\"";
      for (std::size_t i = 0; i < p.points.size(); ++i)
        os << (i ? " " : "") << num(p.points[i].x) << ',' << num(-p.points[i].y);
      os << "\"/>\n";
    }
    os << "</g>\n";
    if (!l.markers.empty()) {
      os << "<g fill=\"" << l.stroke << "\" stroke=\"none\">\n";
      for (const auto& m : l.markers)
        os << "<circle class=\"cusp\" cx=\"" << num(m.x) << "\" cy=\"" << num(-m.y) << "\" r=\""
           << num(4 * sw) << "\"/>\n";
      os << "</g>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw NumericError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw NumericError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string RunReport::to_json() const {
  using nlohmann::ordered_json;
  auto number = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json j;
  j["command"] = command;
  j["inputs"] = ordered_json::array();
  for (const auto& in : inputs) j["inputs"].push_back({{"name", in.name}, {"digest", in.digest}});
  j["checks"] = ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"verdict", to_string(c.verdict)},
                           {"measured", number(c.measured)},
                           {"tolerance", number(c.expected)},
                           {"detail", c.detail}});
  j["artifacts"] = artifacts;
  if (!message.empty()) j["message"] = message;
  return j.dump(2);
}

}  // namespace caustic
