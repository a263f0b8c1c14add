#include "caustic/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "caustic/error.hpp"
#include "polyline_data.hpp"

namespace caustic {

namespace {

constexpr int kValidationSamples = 8192;
constexpr double kIrregularSpeed = 1e-12;

// cos(k t + n pi / 2) and sin(k t + n pi / 2) without accumulating phase error.
double shifted_cos(double kt, int n) {
  switch (n & 3) {
    case 0: return std::cos(kt);
    case 1: return -std::sin(kt);
    case 2: return -std::cos(kt);
    default: return std::sin(kt);
  }
}

double shifted_sin(double kt, int n) {
  switch (n & 3) {
    case 0: return std::sin(kt);
    case 1: return std::cos(kt);
    case 2: return -std::sin(kt);
    default: return -std::cos(kt);
  }
}

// Jet from the parameter derivatives d1..d3 of a regular curve.
Jet2 jet_from_derivatives(double t, Vec2 p, Vec2 d1, Vec2 d2, Vec2 d3) {
  const double speed = norm(d1);
  if (!(speed >= kIrregularSpeed)) {
    std::ostringstream os;
    os << "irregular point at t=" << t << " (|gamma'|=" << speed << ")";
    throw NumericError(os.str());
  }
  const double c12 = cross(d1, d2);
  const double s3 = speed * speed * speed;
  const double kappa = c12 / s3;
  const double dkappa_dt = cross(d1, d3) / s3 - 3.0 * c12 * dot(d1, d2) / (s3 * speed * speed);
  return Jet2{t, p, d1 / speed, kappa, dkappa_dt / speed, speed};
}

struct Derivs {
  Vec2 p, d1, d2, d3;
};

Derivs support_derivs(const FourierSeries& h, double th) {
  const double h0 = h.eval(th, 0), h1 = h.eval(th, 1), h2 = h.eval(th, 2), h3 = h.eval(th, 3),
               h4 = h.eval(th, 4);
  const double r = h0 + h2, r1 = h1 + h3, r2 = h2 + h4;
  const Vec2 e{std::cos(th), std::sin(th)};
  const Vec2 n = perp(e);
  return {h0 * e + h1 * n, r * n, r1 * n - r * e, (r2 - r) * n - 2.0 * r1 * e};
}

Derivs param_derivs(const FourierSeries& x, const FourierSeries& y, double t) {
  return {{x.eval(t, 0), y.eval(t, 0)},
          {x.eval(t, 1), y.eval(t, 1)},
          {x.eval(t, 2), y.eval(t, 2)},
          {x.eval(t, 3), y.eval(t, 3)}};
}

Derivs oriented(const CurveSpec& spec, double t) {
  const bool cw = spec.orientation == Orientation::cw;
  const double u = cw ? -t : t;
  Derivs d = spec.kind == CurveKind::support_fourier ? support_derivs(spec.support, u)
                                                     : param_derivs(spec.x, spec.y, u);
  if (cw) {
    d.d1 = -d.d1;
    d.d3 = -d.d3;
  }
  return d;
}

void validate_series(const FourierSeries& f, const char* what) {
  if (!std::isfinite(f.c0)) throw InputError(std::string(what) + ": c0 is not finite");
  for (const auto& h : f.harmonics) {
    if (h.k < 1) throw InputError(std::string(what) + ": harmonic order k must be >= 1");
    if (!std::isfinite(h.a) || !std::isfinite(h.b))
      throw InputError(std::string(what) + ": harmonic coefficient is not finite");
  }
}

FourierSeries series_from_json(const nlohmann::json& j, const char* what) {
  FourierSeries f;
  if (!j.is_object()) throw InputError(std::string(what) + " must be an object");
  f.c0 = j.value("c0", 0.0);
  if (j.contains("harmonics")) {
    for (const auto& h : j.at("harmonics")) {
      f.harmonics.push_back(Harmonic{h.at("k").get<int>(), h.value("a", 0.0), h.value("b", 0.0)});
    }
  }
  return f;
}

nlohmann::json series_to_json(const FourierSeries& f) {
  nlohmann::json j;
  j["c0"] = f.c0;
  j["harmonics"] = nlohmann::json::array();
  for (const auto& h : f.harmonics) j["harmonics"].push_back({{"k", h.k}, {"a", h.a}, {"b", h.b}});
  return j;
}

}  // namespace

double FourierSeries::eval(double t, int order) const {
  double v = order == 0 ? c0 : 0.0;
  for (const auto& h : harmonics) {
    const double kt = h.k * t;
    const double scale = std::pow(static_cast<double>(h.k), order);
    v += scale * (h.a * shifted_cos(kt, order) + h.b * shifted_sin(kt, order));
  }
  return v;
}

double CurveSpec::period() const {
  return kind == CurveKind::polyline ? static_cast<double>(polyline_data->vertex_count) : kTwoPi;
}

CurveSpec make_support_curve(FourierSeries h, Orientation orientation) {
  validate_series(h, "support function");
  for (int i = 0; i < kValidationSamples; ++i) {
    const double th = kTwoPi * i / kValidationSamples;
    const double radius = h.eval(th, 0) + h.eval(th, 2);
    if (!(radius > 0.0)) {
      std::ostringstream os;
      os << "convexity violation: h + h'' = " << radius << " at theta=" << th;
      throw InputError(os.str());
    }
  }
  CurveSpec spec;
  spec.kind = CurveKind::support_fourier;
  spec.support = std::move(h);
  spec.orientation = orientation;
  return spec;
}

CurveSpec make_param_curve(FourierSeries x, FourierSeries y, Orientation orientation) {
  validate_series(x, "x");
  validate_series(y, "y");
  for (int i = 0; i < kValidationSamples; ++i) {
    const double t = kTwoPi * i / kValidationSamples;
    const double speed = std::hypot(x.eval(t, 1), y.eval(t, 1));
    if (!(speed > kIrregularSpeed)) {
      std::ostringstream os;
      os << "regularity violation: |gamma'| = " << speed << " at t=" << t;
      throw InputError(os.str());
    }
  }
  CurveSpec spec;
  spec.kind = CurveKind::param_fourier;
  spec.x = std::move(x);
  spec.y = std::move(y);
  spec.orientation = orientation;
  return spec;
}

CurveSpec make_polyline_curve(std::vector<Vec2> points, std::vector<int> breaks, int excision,
                              Orientation orientation) {
  for (const auto& q : points)
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw InputError("polyline: non-finite point");
  if (points.size() >= 2 && distance(points.front(), points.back()) == 0.0) points.pop_back();
  if (points.size() < 8) throw InputError("polyline: at least 8 distinct vertices required");
  const int v = static_cast<int>(points.size());
  for (int i = 0; i < v; ++i) {
    if (distance(points[i], points[(i + 1) % v]) == 0.0)
      throw InputError("polyline: repeated consecutive vertex at index " + std::to_string(i));
  }
  for (int b : breaks)
    if (b < 0 || b >= v) throw InputError("polyline: break index out of range");
  if (excision < 0) throw InputError("polyline: excision must be non-negative");
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  CurveSpec spec;
  spec.kind = CurveKind::polyline;
  spec.points = std::move(points);
  spec.breaks = std::move(breaks);
  spec.excision = excision;
  spec.orientation = orientation;

  std::vector<Vec2> ordered = spec.points;
  std::vector<int> ordered_breaks = spec.breaks;
  if (orientation == Orientation::cw) {
    // Vertex i moves to v-1-i, so the gap (k, k+1) becomes (v-2-k, v-1-k).
    std::reverse(ordered.begin(), ordered.end());
    for (int& b : ordered_breaks) b = ((v - 2 - b) % v + v) % v;
    std::sort(ordered_breaks.begin(), ordered_breaks.end());
  }
  auto data = std::make_shared<PolylineData>(build_polyline_data(ordered, ordered_breaks, excision));
  if (data->retained.size() < 8)
    throw InputError("polyline: fewer than 8 vertices survive break excision");
  spec.polyline_data = std::move(data);
  return spec;
}

CurveSpec parse_curve_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed curve document: ") + e.what());
  }
  try {
    if (!j.is_object()) throw InputError("curve document must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    const std::string orient = j.value("orientation", std::string("ccw"));
    Orientation orientation;
    if (orient == "ccw") orientation = Orientation::ccw;
    else if (orient == "cw") orientation = Orientation::cw;
    else throw InputError("orientation must be \"ccw\" or \"cw\"");

    if (kind == "support_fourier") {
      return make_support_curve(series_from_json(j, "support function"), orientation);
    }
    if (kind == "param_fourier") {
      return make_param_curve(series_from_json(j.at("x"), "x"), series_from_json(j.at("y"), "y"),
                              orientation);
    }
    if (kind == "polyline") {
      std::vector<Vec2> pts;
      for (const auto& q : j.at("points")) {
        if (!q.is_array() || q.size() != 2) throw InputError("polyline points must be [x, y]");
        pts.push_back({q[0].get<double>(), q[1].get<double>()});
      }
      std::vector<int> breaks = j.value("breaks", std::vector<int>{});
      return make_polyline_curve(std::move(pts), std::move(breaks), j.value("excision", 2),
                                 orientation);
    }
    throw InputError("unknown curve kind \"" + kind + "\"");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed curve document: ") + e.what());
  }
}

CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open curve file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_spec(ss.str());
}

std::string curve_spec_to_json(const CurveSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case CurveKind::support_fourier: {
      auto s = series_to_json(spec.support);
      j["c0"] = s["c0"];
      j["harmonics"] = s["harmonics"];
      break;
    }
    case CurveKind::param_fourier:
      j["x"] = series_to_json(spec.x);
      j["y"] = series_to_json(spec.y);
      break;
    case CurveKind::polyline:
      j["points"] = nlohmann::json::array();
      for (const auto& q : spec.points) j["points"].push_back({q.x, q.y});
      if (!spec.breaks.empty()) j["breaks"] = spec.breaks;
      j["excision"] = spec.excision;
      break;
  }
  j["orientation"] = spec.orientation == Orientation::ccw ? "ccw" : "cw";
  return j.dump();
}

CurveSpec reversed(const CurveSpec& spec) {
  const Orientation flipped =
      spec.orientation == Orientation::ccw ? Orientation::cw : Orientation::ccw;
  switch (spec.kind) {
    case CurveKind::support_fourier: return make_support_curve(spec.support, flipped);
    case CurveKind::param_fourier: return make_param_curve(spec.x, spec.y, flipped);
    case CurveKind::polyline:
      return make_polyline_curve(spec.points, spec.breaks, spec.excision, flipped);
  }
  return spec;
}

Jet2 evaluate_jet(const CurveSpec& spec, double t) {
  if (spec.kind == CurveKind::polyline) return polyline_jet(*spec.polyline_data, t);
  const Derivs d = oriented(spec, t);
  return jet_from_derivatives(t, d.p, d.d1, d.d2, d.d3);
}

// ---------------------------------------------------------------------------
// SampledCurve

Vec2 SampledCurve::tangent(std::size_t i) const {
  if (i < size()) return jets[i].tangent;
  // Reuse the first tangent bit for bit (a front may close reversed).
  const Vec2 t0 = jets.front().tangent;
  return dot(unit_from_angle(phi.back()), t0) >= 0.0 ? t0 : Vec2{-t0.x, -t0.y};
}

double SampledCurve::unwrapped_param(std::size_t i) const {
  return i == size() ? jets.front().t_param + period() : jets[i].t_param;
}

double SampledCurve::max_step() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    m = std::max(m, unwrapped_param(i + 1) - unwrapped_param(i));
  return m;
}

double SampledCurve::diameter() const {
  // Exact over samples; O(N^2) but only used for tolerances and reports.
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, distance(jets[i].p, jets[j].p));
  return best;
}

std::size_t SampledCurve::locate(double t) const {
  const double tm = positive_mod(t, period());
  if (tm < jets.front().t_param) return size() - 1;
  auto it = std::upper_bound(jets.begin(), jets.end(), tm,
                             [](double v, const Jet2& j) { return v < j.t_param; });
  return static_cast<std::size_t>(std::distance(jets.begin(), it)) - 1;
}

double SampledCurve::phi_at(double t) const {
  const double per = period();
  const double turns = std::floor(t / per);
  const double tm = t - turns * per;
  const double turn_angle = phi.back() - phi.front();
  const std::size_t i = locate(tm);
  const Jet2 j = jet_at(tm);
  double value = phi[i] + wrap_angle(angle_of(j.tangent) - phi[i]);
  if (tm < jets.front().t_param) value -= turn_angle;
  return value + turns * turn_angle;
}

SampledCurve sample_curve(const CurveSpec& spec, int n) {
  return sample_curve(std::make_shared<const CurveSpec>(spec), n);
}

SampledCurve sample_curve(std::shared_ptr<const CurveSpec> spec, int n) {
  SampledCurve sc;
  sc.spec = std::move(spec);
  const CurveSpec& cs = *sc.spec;

  if (cs.kind == CurveKind::polyline) {
    // Every vertex is a sample; excised ones get interpolated jets.
    const auto& data = *cs.polyline_data;
    for (int k = 0; k < data.vertex_count; ++k) {
      sc.jets.push_back(polyline_jet(data, k));
      const double a = angle_of(sc.jets.back().tangent);
      sc.phi.push_back(sc.phi.empty() ? a : sc.phi.back() + wrap_angle(a - sc.phi.back()));
    }
    const double a0 = angle_of(sc.jets.front().tangent);
    sc.phi.push_back(sc.phi.back() + wrap_half_turn(a0 - sc.phi.back()));
  } else {
    if (n < 64) throw InputError("sampling density must be at least 64");
    sc.jets.reserve(n);
    for (int i = 0; i < n; ++i) sc.jets.push_back(evaluate_jet(cs, kTwoPi * i / n));
    sc.phi.reserve(n + 1);
    sc.phi.push_back(angle_of(sc.jets[0].tangent));
    for (int i = 0; i < n; ++i) {
      const Jet2& a = sc.jets[i];
      const Jet2& b = sc.jets[(i + 1) % n];
      const double dt = kTwoPi / n;
      const double step = wrap_angle(angle_of(b.tangent) - angle_of(a.tangent));
      const double predicted = 0.5 * (a.kappa * a.speed + b.kappa * b.speed) * dt;
      if (std::abs(step - predicted) > kPi / 2) {
        std::ostringstream os;
        os << "tangent angle lift failed near t=" << a.t_param
           << "; sample more densely (n=" << n << ")";
        throw NumericError(os.str());
      }
      sc.phi.push_back(sc.phi.back() + step);
    }
  }

  const std::size_t count = sc.jets.size();
  sc.arclen.assign(count + 1, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double dt = sc.unwrapped_param(i + 1) - sc.unwrapped_param(i);
    const Jet2& a = sc.jets[i];
    const Jet2& b = sc.jets[(i + 1) % count];
    const double ds = cs.kind == CurveKind::polyline ? distance(a.p, b.p)
                                                     : 0.5 * (a.speed + b.speed) * dt;
    sc.arclen[i + 1] = sc.arclen[i] + ds;
  }
  sc.rotation_number = (sc.phi.back() - sc.phi.front()) / kTwoPi;
  return sc;
}

double rotation_number(const SampledCurve& sc) {
  return (sc.phi.back() - sc.phi.front()) / kTwoPi;
}

std::vector<double> inflexion_parameters(const CurveSpec& spec, int scan) {
  std::vector<double> params;
  std::vector<double> kappa;
  if (spec.kind == CurveKind::polyline) {
    for (const auto& v : spec.polyline_data->retained) {
      params.push_back(v.index);
      kappa.push_back(v.kappa);
    }
  } else {
    for (int i = 0; i < scan; ++i) {
      params.push_back(kTwoPi * i / scan);
      kappa.push_back(evaluate_jet(spec, params.back()).kappa);
    }
  }
  const double per = spec.period();
  const std::size_t n = params.size();

  int flat_run = 0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    flat_run = std::abs(kappa[i % n]) < 1e-12 ? flat_run + 1 : 0;
    if (flat_run >= 3) {
      std::ostringstream os;
      os << "curvature vanishes identically near t=" << params[i % n];
      throw NumericError(os.str());
    }
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const double k0 = kappa[i];
    const double k1 = kappa[(i + 1) % n];
    if (k0 == 0.0) {
      roots.push_back(params[i]);
      continue;
    }
    if (k1 == 0.0 || (k0 > 0.0) == (k1 > 0.0)) continue;
    double lo = params[i];
    double hi = i + 1 < n ? params[i + 1] : params[0] + per;
    double klo = k0;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
      mid = 0.5 * (lo + hi);
      const double km = evaluate_jet(spec, mid).kappa;
      if (std::abs(km) < 1e-10 || hi - lo < 1e-15 * per) break;
      if ((km > 0.0) == (klo > 0.0)) {
        lo = mid;
        klo = km;
      } else {
        hi = mid;
      }
    }
    // A sign change through a pole (a cusp of a front) is not an inflexion.
    if (std::abs(evaluate_jet(spec, mid).kappa) > std::min(std::abs(k0), std::abs(k1))) continue;
    roots.push_back(positive_mod(mid, per));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::support_fourier: return "support_fourier";
    case CurveKind::param_fourier: return "param_fourier";
    case CurveKind::polyline: return "polyline";
  }
  return "?";
}

const char* to_string(LoopConvexity c) {
  return c == LoopConvexity::convex_loop ? "convex_loop" : "nonconvex_loop";
}

}  // namespace caustic
