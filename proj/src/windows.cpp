#include <algorithm>
#include <cmath>
#include <sstream>

#include "caustic/error.hpp"
#include "caustic/singularity.hpp"

namespace caustic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAngleTol = 1e-6;
constexpr double kRotationTol = 1e-6;

struct ArcView {
  const SampledCurve& sc;
  Arc arc;

  Jet2 jet(double s) const {
    Jet2 j = sc.jet_at(s);
    j.p += arc.offset;
    return j;
  }
  Jet2 start() const { return jet(arc.s0); }
  Jet2 end() const { return jet(arc.s1); }
  double rotation() const { return (sc.phi_at(arc.s1) - sc.phi_at(arc.s0)) / kTwoPi; }
  // Sample parameters strictly inside the arc, unwrapped into (s0, s1).
  std::vector<double> interior() const {
    std::vector<double> out;
    const double per = sc.period();
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const double s = arc.s0 + positive_mod(sc.param(i) - arc.s0, per);
      if (s > arc.s0 && s < arc.s1) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Sign of the curvature if it does not vanish on the arc (endpoints included
  // unless excluded), else 0.
  int curvature_sign(bool skip_start = false, bool skip_end = false) const {
    std::vector<double> ks;
    if (!skip_start) ks.push_back(start().kappa);
    for (double s : interior()) ks.push_back(sc.jet_at(s).kappa);
    if (!skip_end) ks.push_back(end().kappa);
    int sign = 0;
    for (double k : ks) {
      if (!(std::abs(k) > 0.0)) return 0;
      const int sg = k > 0 ? 1 : -1;
      if (sign == 0) sign = sg;
      if (sg != sign) return 0;
    }
    return sign;
  }
};

bool parallel(const Jet2& a, const Jet2& b) {
  return std::abs(cross(a.tangent, b.tangent)) < std::sin(kAngleTol);
}

// Every tangent direction of `of` (mod pi) appears on `in`.
bool covered(const ArcView& in, const ArcView& of) {
  const SampledCurve& sc = in.sc;
  const double a = sc.phi_at(in.arc.s0), b = sc.phi_at(in.arc.s1);
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> ss{of.arc.s0, of.arc.s1};
  for (double s : of.interior()) ss.push_back(s);
  for (double s : ss) {
    const double r = positive_mod(sc.phi_at(s) - lo, kPi);
    if (!(r <= hi - lo + kAngleTol || r >= kPi - kAngleTol)) return false;
  }
  return true;
}

std::optional<Vec2> intersect(Vec2 p, Vec2 u, Vec2 q, Vec2 v) {
  const double den = cross(u, v);
  if (std::abs(den) < 1e-14) return std::nullopt;
  const double s = cross(q - p, v) / den;
  return p + s * u;
}

// Signed ratio (x - base) / (ref - base) of collinear vectors.
double collinear_ratio(Vec2 x, Vec2 base, Vec2 ref) {
  const Vec2 d = ref - base;
  return dot(x - base, d) / dot(d, d);
}

// Partner of tangent t on the arc, by a sign-change scan over its samples.
std::optional<Jet2> partner_in(const ArcView& v, Vec2 t) {
  std::vector<double> ss{v.arc.s0};
  for (double s : v.interior()) ss.push_back(s);
  ss.push_back(v.arc.s1);
  auto f = [&](double s) { return cross(t, v.sc.jet_at(s).tangent); };
  double prev = f(ss[0]);
  if (prev == 0.0) return v.jet(ss[0]);
  for (std::size_t k = 1; k < ss.size(); ++k) {
    const double cur = f(ss[k]);
    if (cur == 0.0) return v.jet(ss[k]);
    if ((cur > 0) != (prev > 0)) {
      double lo = ss[k - 1], hi = ss[k], flo = prev;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * v.sc.period(); ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = f(m);
        if ((fm > 0) == (flo > 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      return v.jet(0.5 * (lo + hi));
    }
    prev = cur;
  }
  return std::nullopt;
}

struct Conditions {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

void add_mirrored(LambdaSet& set, Interval iv) {
  set.intervals.push_back(iv);
  Interval m{1 - iv.hi, 1 - iv.lo, iv.hi_closed, iv.lo_closed};
  const bool same = std::abs(m.lo - iv.lo) < 1e-15 && std::abs(m.hi - iv.hi) < 1e-15;
  if (!same) set.intervals.push_back(m);
}

void add_value(LambdaSet& set, double v) {
  for (double x : set.values)
    if (std::abs(x - v) < 1e-15) return;
  set.values.push_back(v);
}

double scale_of(const SampledCurve& sc) {
  Vec2 lo = sc.jets[0].p, hi = lo;
  for (const auto& j : sc.jets) {
    lo = {std::min(lo.x, j.p.x), std::min(lo.y, j.p.y)};
    hi = {std::max(hi.x, j.p.x), std::max(hi.y, j.p.y)};
  }
  return std::max(norm(hi - lo), 1e-300);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void curvature_ratio_window(const SampledCurve&, const ArcView& f0, const ArcView& f1,
                            bool same_side, ExistenceWindow& w, Conditions& cond) {
  const Jet2 p0 = f0.start(), q0 = f0.end(), p1 = f1.start(), q1 = f1.end();
  cond.require(parallel(p0, p1), "(i) tangents at p0, p1 are not parallel");
  cond.require(parallel(q0, q1), "(i) tangents at q0, q1 are not parallel");
  cond.require(covered(f0, f1), "(ii) some point of F1 has no parallel partner on F0");
  cond.require(f0.curvature_sign() != 0, "(iii) curvature of F0 vanishes or changes sign");
  const bool k1 = p1.kappa != 0.0 && q1.kappa != 0.0 && (p1.kappa > 0) == (q1.kappa > 0);
  cond.require(k1, "(iii) curvature of F1 at p1, q1 is zero or of opposite signs");
  const double rot = std::abs(f0.rotation());
  cond.require(rot < 0.5 + kRotationTol, "(iv) rotation number of F0 is not below 1/2 (" + fmt(rot) + ")");
  const CurvedSide want = same_side ? CurvedSide::same_side : CurvedSide::different_side;
  cond.require(curved_side(p0, p1) == want && curved_side(q0, q1) == want,
               same_side ? "(v) F0, F1 are not curved in the same side at the endpoint pairs"
                         : "(v) F0, F1 are not curved in different sides at the endpoint pairs");
  if (p0.kappa == 0.0 || q0.kappa == 0.0) return;
  const double ra = std::abs(p1.kappa / p0.kappa), rb = std::abs(q1.kappa / q0.kappa);
  w.rho_min = std::min(ra, rb);
  w.rho_max = std::max(ra, rb);
  const double lo = w.rho_min, hi = w.rho_max;
  if (!same_side) {
    add_mirrored(w.lambdas, {lo / (1 + lo), hi / (1 + hi)});
  } else if (lo > 1) {
    add_mirrored(w.lambdas, {hi / (hi - 1), lo / (lo - 1)});
  } else if (lo < 1 && hi > 1) {
    add_mirrored(w.lambdas, {hi / (hi - 1), kInf, true, false});
  } else {
    w.diagnostics.push_back("note: rho_max <= 1 gives no guaranteed window on the same side");
  }
}

void limiting_window(const SampledCurve& sc, const ArcView& f0, const ArcView& f1, bool same_side,
                     ExistenceWindow& w, Conditions& cond) {
  const Jet2 p0 = f0.start(), q0 = f0.end(), p1 = f1.start(), q1 = f1.end();
  cond.require(parallel(p0, p1), "(i) tangents at p0, p1 are not parallel");
  cond.require(parallel(q0, q1), "(i) tangents at q0, q1 are not parallel");
  cond.require(covered(f0, f1), "(ii) some point of F1 has no parallel partner on F0");
  cond.require(std::abs(p0.kappa) < 1e-6, "(iii) p0 is not an inflexion of F0");
  cond.require(std::abs(q1.kappa) < 1e-6, "(iii) q1 is not an inflexion of F1");
  cond.require(f0.curvature_sign(true, false) != 0,
               "(iii) curvature of F0 vanishes or changes sign away from p0");
  cond.require(std::abs(p1.kappa) >= 1e-6, "(iii) curvature of F1 vanishes at p1");
  const double rot = std::abs(f0.rotation());
  cond.require(rot < 0.5 + kRotationTol, "(iv) rotation number of F0 is not below 1/2 (" + fmt(rot) + ")");
  // Curved side at pairs a little inside the arcs.
  const double d0 = 1e-3 * (f0.arc.s1 - f0.arc.s0);
  const CurvedSide want = same_side ? CurvedSide::same_side : CurvedSide::different_side;
  bool sides_ok = true;
  for (double s : {f0.arc.s0 + d0, f0.arc.s1 - d0}) {
    const Jet2 a = f0.jet(s);
    auto b = partner_in(f1, a.tangent);
    sides_ok = sides_ok && b && curved_side(a, *b) == want;
  }
  cond.require(sides_ok, same_side ? "(v) arcs are not curved in the same side near the endpoints"
                                   : "(v) arcs are not curved in different sides near the endpoints");
  (void)sc;
  if (!same_side) {
    w.lambdas.intervals.push_back({0.0, 1.0, false, false});
  } else {
    w.lambdas.intervals.push_back({-kInf, 0.0, false, false});
    w.lambdas.intervals.push_back({1.0, kInf, false, false});
  }
}

struct CommonPoint {
  Jet2 p0, q0, p1, q1;  // p0 and p1 are the common point seen from F0 and F1
};

CommonPoint common_point(const SampledCurve& sc, const ArcView& f0, const ArcView& f1,
                         Conditions& cond) {
  CommonPoint c{f0.start(), f0.end(), f1.end(), f1.start()};
  cond.require(distance(c.p0.p, c.p1.p) <= 1e-6 * scale_of(sc),
               "arcs do not share the common endpoint p (start of F0, end of F1)");
  return c;
}

void shared_checks(const ArcView& f0, const ArcView& f1, Conditions& cond, bool halfturn) {
  cond.require(f0.curvature_sign() != 0, "(ii) curvature of F0 vanishes");
  cond.require(f1.curvature_sign() != 0, "(ii) curvature of F1 vanishes");
  const double r0 = std::abs(f0.rotation()), r1 = std::abs(f1.rotation());
  if (halfturn) {
    cond.require(std::abs(r0 - 0.5) < kRotationTol && std::abs(r1 - 0.5) < kRotationTol,
                 "(iii) rotation numbers are not 1/2 (" + fmt(r0) + ", " + fmt(r1) + ")");
  } else {
    cond.require(std::abs(r0 - r1) < kRotationTol && r0 < 0.5 + kRotationTol,
                 "(iii) rotation numbers differ or are not below 1/2 (" + fmt(r0) + ", " + fmt(r1) + ")");
    cond.require(covered(f0, f1) && covered(f1, f0),
                 "(iv) some point has no parallel partner on the other arc");
  }
}

void side_check(const ArcView& f0, const ArcView& f1, bool same_side, Conditions& cond) {
  // Parallel pairs keep their relation and the curvature signs are constant, so
  // one interior pair decides the side for all of them.
  const Jet2 a = f0.jet(0.5 * (f0.arc.s0 + f0.arc.s1));
  const auto b = partner_in(f1, a.tangent);
  const CurvedSide want = same_side ? CurvedSide::same_side : CurvedSide::different_side;
  cond.require(b && curved_side(a, *b) == want,
               same_side ? "(v) arcs are not curved in the same side at their parallel pairs"
                         : "(v) arcs are not curved in different sides at their parallel pairs");
}

void parallelogram_window(const SampledCurve& sc, const ArcView& f0, const ArcView& f1,
                          ExistenceWindow& w, Conditions& cond) {
  const CommonPoint c = common_point(sc, f0, f1, cond);
  cond.require(parallel(c.p0, c.q1), "(i) tangent of F0 at p is not parallel to F1 at q1");
  cond.require(parallel(c.q0, c.p1), "(i) tangent of F0 at q0 is not parallel to F1 at p");
  shared_checks(f0, f1, cond, false);
  side_check(f0, f1, false, cond);
  const Vec2 p = c.p0.p;
  const auto cc = intersect(c.q1.p, c.p0.tangent, c.q0.p, c.p1.tangent);
  const auto b0 = intersect(c.q1.p, c.p0.tangent, p, c.p1.tangent);
  const auto b1 = intersect(c.q0.p, c.p1.tangent, p, c.p0.tangent);
  if (!cc || !b0 || !b1) {
    cond.require(false, "degenerate parallelogram: tangent lines at p are parallel");
    return;
  }
  // q1 lies on l0 = (b0, c) and q0 on l1 = (b1, c).
  const double r1 = collinear_ratio(c.q1.p, *b0, *cc);
  const double r0 = collinear_ratio(c.q0.p, *b1, *cc);
  w.rho_min = std::min(r0, r1);
  w.rho_max = std::max(r0, r1);
  if (w.rho_max < 1) {
    add_mirrored(w.lambdas, {w.rho_max / (w.rho_max + 1), 1 / (w.rho_max + 1)});
  } else if (w.rho_min > 1) {
    add_mirrored(w.lambdas, {1 / (w.rho_min + 1), w.rho_min / (w.rho_min + 1)});
  } else {
    w.diagnostics.push_back("note: ratios straddle 1; no guaranteed window");
  }
}

void tangent_cone_window(const SampledCurve& sc, const ArcView& f0, const ArcView& f1,
                         ExistenceWindow& w, Conditions& cond) {
  const CommonPoint c = common_point(sc, f0, f1, cond);
  cond.require(parallel(c.p0, c.p1), "(i) tangent lines at p differ");
  cond.require(parallel(c.q0, c.q1), "(i) tangents at q0, q1 are not parallel");
  shared_checks(f0, f1, cond, false);
  side_check(f0, f1, true, cond);
  const Vec2 p = c.p0.p;
  const auto cc = intersect(c.q0.p, c.p0.tangent, c.q1.p, c.q1.tangent);
  const auto b0 = intersect(c.q0.p, c.p0.tangent, p, c.q0.tangent);
  const auto b1 = intersect(p, c.p1.tangent, c.q1.p, c.q1.tangent);
  if (!cc || !b0 || !b1) {
    cond.require(false, "degenerate tangent cone: tangent lines at p and q are parallel");
    return;
  }
  const double ra = collinear_ratio(*cc, *b1, c.q1.p);
  const double rb = collinear_ratio(*cc, *b0, c.q0.p);
  w.rho_min = std::min(ra, rb);
  w.rho_max = std::max(ra, rb);
  if (w.rho_max < 1) {
    const double r = w.rho_max;
    add_mirrored(w.lambdas, {-kInf, -r / (1 - r), false, true});
  } else if (w.rho_min > 1) {
    const double r = w.rho_min;
    add_mirrored(w.lambdas, {-kInf, 1 / (1 - r), false, true});
  } else {
    w.diagnostics.push_back("note: ratios straddle 1; no guaranteed window");
  }
}

void halfturn_window(const SampledCurve& sc, const ArcView& f0, const ArcView& f1,
                     ExistenceWindow& w, Conditions& cond) {
  const CommonPoint c = common_point(sc, f0, f1, cond);
  cond.require(parallel(c.p0, c.q0) && parallel(c.p0, c.p1) && parallel(c.p0, c.q1),
               "(i) the four endpoint tangents are not parallel");
  shared_checks(f0, f1, cond, true);
  const Jet2 a = f0.jet(0.5 * (f0.arc.s0 + f0.arc.s1));
  const auto b = partner_in(f1, a.tangent);
  const auto side = b ? curved_side(a, *b) : std::nullopt;
  cond.require(side.has_value(), "(v) no parallel pair found between the arcs");
  const Vec2 p = c.p0.p;
  const Vec2 q1 = c.q1.p;
  const auto cc = intersect(p, q1 - p, c.q0.p, c.q0.tangent);
  if (!cc || distance(*cc, p) == 0.0 || distance(q1, p) == 0.0) {
    cond.require(false, "degenerate configuration: line p q1 misses the tangent at q0");
    return;
  }
  w.rho = distance(q1, p) / distance(*cc, p);
  if (!side) return;
  if (*side == CurvedSide::different_side) {
    add_value(w.lambdas, 1 / (1 + w.rho));
    add_value(w.lambdas, w.rho / (1 + w.rho));
  } else if (std::abs(w.rho - 1) < 1e-9) {
    cond.require(false, "rho = 1 on same-side arcs: the guaranteed values are undefined");
  } else {
    add_value(w.lambdas, -1 / (w.rho - 1));
    add_value(w.lambdas, w.rho / (w.rho - 1));
  }
  std::sort(w.lambdas.values.begin(), w.lambdas.values.end());
}

bool in_arc(double s, const Arc& arc, double per) {
  const double tol = 1e-9 * per;
  const double d = positive_mod(s - arc.s0 + tol, per) - tol;
  return d >= -tol && d <= arc.s1 - arc.s0 + tol;
}

}  // namespace

bool LambdaSet::contains(double lambda, double tol) const {
  for (const auto& iv : intervals) {
    const bool above = iv.lo_closed ? lambda >= iv.lo - tol : lambda > iv.lo - tol;
    const bool below = iv.hi_closed ? lambda <= iv.hi + tol : lambda < iv.hi + tol;
    if (above && below) return true;
  }
  for (double v : values)
    if (std::abs(lambda - v) <= tol) return true;
  return false;
}

std::vector<double> LambdaSet::probes() const {
  std::vector<double> out;
  for (const auto& iv : intervals) {
    if (std::isinf(iv.lo) && std::isinf(iv.hi)) {
      out.insert(out.end(), {-1.0, 2.0});
      continue;
    }
    if (std::isinf(iv.lo) || std::isinf(iv.hi)) {
      const double a = std::isinf(iv.lo) ? iv.hi : iv.lo;
      const double dir = std::isinf(iv.lo) ? -1.0 : 1.0;
      const bool closed = std::isinf(iv.lo) ? iv.hi_closed : iv.lo_closed;
      out.push_back(closed ? a : a + dir * 0.01);
      out.push_back(a + dir * 0.5);
      out.push_back(a + dir * 5.0);
      continue;
    }
    const double width = iv.hi - iv.lo;
    out.push_back(iv.lo_closed ? iv.lo : iv.lo + 0.01 * width);
    out.push_back(0.5 * (iv.lo + iv.hi));
    out.push_back(iv.hi_closed ? iv.hi : iv.hi - 0.01 * width);
  }
  out.insert(out.end(), values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [](double v) { return v == 0.0 || v == 1.0; }),
            out.end());
  return out;
}

std::string LambdaSet::to_string() const {
  std::ostringstream os;
  os.precision(9);
  bool first = true;
  for (const auto& iv : intervals) {
    if (!first) os << " U ";
    first = false;
    os << (iv.lo_closed ? '[' : '(') << iv.lo << ", " << iv.hi << (iv.hi_closed ? ']' : ')');
  }
  if (!values.empty()) {
    if (!first) os << " U ";
    first = false;
    os << '{';
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
    os << '}';
  }
  if (first) os << "{}";
  return os.str();
}

ExistenceWindow existence_windows(const SampledCurve& sc, const Arc& arc0, const Arc& arc1,
                                  WindowMode mode) {
  if (!(arc0.s1 > arc0.s0) || !(arc1.s1 > arc1.s0))
    throw InputError("arcs need s0 < s1");
  if (arc0.s1 - arc0.s0 > sc.period() || arc1.s1 - arc1.s0 > sc.period())
    throw InputError("an arc may not exceed one period");
  ExistenceWindow w;
  w.mode = mode;
  w.arc0 = arc0;
  w.arc1 = arc1;
  const ArcView f0{sc, arc0}, f1{sc, arc1};
  Conditions cond;
  switch (mode) {
    case WindowMode::curvature_ratio_diff_side: curvature_ratio_window(sc, f0, f1, false, w, cond); break;
    case WindowMode::curvature_ratio_same_side: curvature_ratio_window(sc, f0, f1, true, w, cond); break;
    case WindowMode::limiting_diff_side: limiting_window(sc, f0, f1, false, w, cond); break;
    case WindowMode::limiting_same_side: limiting_window(sc, f0, f1, true, w, cond); break;
    case WindowMode::parallelogram: parallelogram_window(sc, f0, f1, w, cond); break;
    case WindowMode::tangent_cone: tangent_cone_window(sc, f0, f1, w, cond); break;
    case WindowMode::halfturn_pair: halfturn_window(sc, f0, f1, w, cond); break;
  }
  w.assumptions_ok = cond.failures.empty();
  w.diagnostics.insert(w.diagnostics.begin(), cond.failures.begin(), cond.failures.end());
  if (!w.assumptions_ok) w.lambdas = {};
  return w;
}

std::pair<Arc, Arc> loop_parallelogram_arcs(const SampledCurve& sc, const LoopSegment& loop) {
  const double a = loop.s_start, b = loop.s_end;
  const Vec2 ta = sc.jet_at(a).tangent, tb = sc.jet_at(b).tangent;
  const ArcView inner{sc, Arc{a, b, {}}};
  auto root = [&](Vec2 t) -> double {
    // Restrict the scan to the open loop so the endpoints themselves are skipped.
    const double h = 1e-9 * sc.period();
    const ArcView v{sc, Arc{a + h, b - h, {}}};
    auto j = partner_in(v, t);
    if (!j) throw NumericError("loop has no interior parallel tangent");
    return a + positive_mod(j->t_param - a, sc.period());
  };
  (void)inner;
  const double m0 = root(tb);
  const double m1 = root(ta);
  return {Arc{a, m0, {}}, Arc{m1, b, {}}};
}

Arc partner_arc(const SampledCurve& sc, const Arc& arc0, double guess0, double guess1) {
  auto p0 = refine_partner(sc, arc0.s0, guess0);
  auto p1 = refine_partner(sc, arc0.s1, guess1);
  if (!p0 || !p1) throw NumericError("partner arc: no partner near the guessed parameters");
  Arc out;
  out.s0 = p0->s_b;
  out.s1 = p0->s_b + positive_mod(p1->s_b - p0->s_b, sc.period());
  return out;
}

std::vector<SingularEvent> arc_cusp_events(const SampledCurve& sc,
                                           const std::vector<PairFamily>& families,
                                           const Arc& arc0, const Arc& arc1, double lambda) {
  const double per = sc.period();
  std::vector<SingularEvent> out;
  for (const auto& e : cusp_events(sc, families, lambda)) {
    const bool inside = (in_arc(e.s_a, arc0, per) && in_arc(e.s_b, arc1, per)) ||
                        (in_arc(e.s_a, arc1, per) && in_arc(e.s_b, arc0, per));
    if (inside) out.push_back(e);
  }
  if (out.empty()) {
    // Roots exactly at the boundary pairs.
    for (auto [sa, sb] : {std::pair{arc0.s0, arc1.s0}, std::pair{arc0.s1, arc1.s1},
                          std::pair{arc0.s0, arc1.s1}, std::pair{arc0.s1, arc1.s0}}) {
      const Jet2 a = sc.jet_at(sa), b = sc.jet_at(sb);
      if (!parallel(a, b)) continue;
      const double h = (1 - lambda) * a.kappa - lambda * frame_kappa_b(a, b);
      const double hs = lambda * a.kappa - (1 - lambda) * frame_kappa_b(a, b);
      if (std::abs(h) < 1e-9 || std::abs(hs) < 1e-9) {
        SingularEvent ev;
        ev.kind = EventKind::cusp;
        ev.lambda = lambda;
        ev.s_a = positive_mod(sa, per);
        ev.s_b = positive_mod(sb, per);
        ev.location = std::abs(h) < 1e-9 ? lambda * a.p + (1 - lambda) * b.p
                                         : (1 - lambda) * a.p + lambda * b.p;
        ev.tangent = a.tangent;
        ev.residual = std::min(std::abs(h), std::abs(hs));
        out.push_back(ev);
      }
    }
  }
  return out;
}

ExistenceReport verify_existence(const SampledCurve& sc, const ExistenceWindow& window) {
  return verify_existence(sc, pair_families(sc), window);
}

ExistenceReport verify_existence(const SampledCurve& sc, const std::vector<PairFamily>& families,
                                 const ExistenceWindow& window) {
  if (!window.assumptions_ok)
    throw InputError("window hypotheses not satisfied: " +
                     (window.diagnostics.empty() ? std::string("unknown") : window.diagnostics.front()));
  ExistenceReport rep;
  const double per = sc.period();
  std::size_t cross_pairs = 0;
  for (const auto& fam : families)
    for (const auto& p : fam.samples)
      if ((in_arc(p.s_a, window.arc0, per) && in_arc(p.s_b, window.arc1, per)) ||
          (in_arc(p.s_a, window.arc1, per) && in_arc(p.s_b, window.arc0, per)))
        ++cross_pairs;
  if (cross_pairs == 0) {
    rep.vacuous = true;
    rep.message = "vacuous: no parallel pair joins the two arcs";
    return rep;
  }
  rep.pass = true;
  for (double lambda : window.lambdas.probes()) {
    const auto ev = arc_cusp_events(sc, families, window.arc0, window.arc1, lambda);
    rep.probes.push_back({lambda, ev.size()});
    if (ev.empty()) rep.pass = false;
  }
  if (rep.probes.empty()) {
    rep.message = "no guaranteed lambda to probe";
  } else {
    std::ostringstream os;
    std::size_t ok = 0;
    for (const auto& p : rep.probes) ok += p.events > 0;
    os << ok << "/" << rep.probes.size() << " probed lambdas have a singular point";
    rep.message = os.str();
  }
  return rep;
}

const char* to_string(WindowMode m) {
  switch (m) {
    case WindowMode::curvature_ratio_diff_side: return "curvature_ratio_diff_side";
    case WindowMode::curvature_ratio_same_side: return "curvature_ratio_same_side";
    case WindowMode::limiting_diff_side: return "limiting_diff_side";
    case WindowMode::limiting_same_side: return "limiting_same_side";
    case WindowMode::parallelogram: return "parallelogram";
    case WindowMode::tangent_cone: return "tangent_cone";
    case WindowMode::halfturn_pair: return "halfturn_pair";
  }
  return "?";
}

std::optional<WindowMode> parse_window_mode(const std::string& name) {
  for (auto m : {WindowMode::curvature_ratio_diff_side, WindowMode::curvature_ratio_same_side,
                 WindowMode::limiting_diff_side, WindowMode::limiting_same_side,
                 WindowMode::parallelogram, WindowMode::tangent_cone, WindowMode::halfturn_pair})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

}  // namespace caustic
