#include <algorithm>
#include <cmath>

#include "caustic/curve.hpp"
#include "caustic/error.hpp"

namespace caustic {

namespace {

bool segments_cross(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, double& u, double& v) {
  const Vec2 da = a1 - a0, db = b1 - b0;
  const double den = cross(da, db);
  if (den == 0.0) return false;
  const Vec2 w = b0 - a0;
  u = cross(w, db) / den;
  v = cross(w, da) / den;
  return u >= 0.0 && u < 1.0 && v >= 0.0 && v < 1.0;
}

// Newton on gamma(s) - gamma(t) = 0, kept inside the bracketing parameter cells.
void refine_crossing(const SampledCurve& sc, double s_lo, double s_hi, double t_lo, double t_hi,
                     double& s, double& t) {
  for (int it = 0; it < 40; ++it) {
    const Jet2 js = sc.jet_at(s), jt = sc.jet_at(t);
    const Vec2 f = js.p - jt.p;
    const Vec2 ds = js.speed * js.tangent;
    const Vec2 dt = -(jt.speed * jt.tangent);
    const double det = cross(ds, dt);
    if (det == 0.0) return;
    const double step_s = cross(f, dt) / det;
    const double step_t = cross(ds, f) / det;
    s = std::clamp(s - step_s, s_lo, s_hi);
    t = std::clamp(t - step_t, t_lo, t_hi);
    if (std::abs(step_s) + std::abs(step_t) < 1e-13 * sc.period()) return;
  }
}

bool inside_open(double x, double lo, double hi, double period) {
  double y = lo + positive_mod(x - lo, period);
  return y > lo && y < hi;
}

}  // namespace

std::vector<SelfIntersection> self_intersections(const SampledCurve& sc) {
  const std::size_t n = sc.size();
  const double per = sc.period();
  std::vector<SelfIntersection> out;
  auto pt = [&](std::size_t i) { return sc.jets[i % n].p; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      double u, v;
      if (!segments_cross(pt(i), pt(i + 1), pt(j), pt(j + 1), u, v)) continue;
      const double s0 = sc.unwrapped_param(i), s1 = sc.unwrapped_param(i + 1);
      const double t0 = sc.unwrapped_param(j), t1 = sc.unwrapped_param(j + 1);
      double s = s0 + u * (s1 - s0);
      double t = t0 + v * (t1 - t0);
      refine_crossing(sc, s0, s1, t0, t1, s, t);
      SelfIntersection x;
      x.s = positive_mod(s, per);
      x.t = positive_mod(t, per);
      if (x.s > x.t) std::swap(x.s, x.t);
      const Jet2 js = sc.jet_at(x.s), jt = sc.jet_at(x.t);
      x.point = 0.5 * (js.p + jt.p);
      x.transversal = std::abs(cross(js.tangent, jt.tangent)) >= 1e-6;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const SelfIntersection& y) {
        return std::abs(cyclic_offset(x.s, y.s, per)) < 1e-7 * per &&
               std::abs(cyclic_offset(x.t, y.t, per)) < 1e-7 * per;
      });
      if (!dup) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SelfIntersection& a, const SelfIntersection& b) { return a.s < b.s; });
  return out;
}

std::vector<LoopSegment> detect_loops(const SampledCurve& sc, const LoopOptions& options) {
  const double per = sc.period();
  const auto crossings = self_intersections(sc);
  for (const auto& x : crossings) {
    if (!x.transversal) throw NumericError("non-transversal self-intersection; loops undefined");
  }

  auto qualifies = [&](double lo, double hi, std::size_t self, LoopSegment& seg) {
    for (std::size_t k = 0; k < crossings.size(); ++k) {
      if (k == self) continue;
      if (inside_open(crossings[k].s, lo, hi, per) && inside_open(crossings[k].t, lo, hi, per))
        return false;
    }
    int sign = 0;
    auto check = [&](double kappa) {
      if (!(std::abs(kappa) > 0.0)) return false;
      const int sg = kappa > 0.0 ? 1 : -1;
      if (sign == 0) sign = sg;
      return sg == sign;
    };
    if (!check(sc.jet_at(lo).kappa) || !check(sc.jet_at(hi).kappa)) return false;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      if (inside_open(sc.param(i), lo, hi, per) && !check(sc.jets[i].kappa)) return false;
    }
    seg.s_start = lo;
    seg.s_end = hi;
    seg.node = crossings[self].point;
    seg.rotation = (sc.phi_at(hi) - sc.phi_at(lo)) / kTwoPi;
    seg.convexity = std::abs(seg.rotation) <= 1.0 + 1e-9 ? LoopConvexity::convex_loop
                                                         : LoopConvexity::nonconvex_loop;
    return true;
  };

  std::vector<LoopSegment> loops;
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const auto& x = crossings[k];
    LoopSegment inner, outer;
    const bool a = qualifies(x.s, x.t, k, inner);
    const bool b = qualifies(x.t, x.s + per, k, outer);
    if (a && b && !options.both_complements) {
      loops.push_back(std::abs(inner.rotation) <= std::abs(outer.rotation) ? inner : outer);
    } else {
      if (a) loops.push_back(inner);
      if (b) loops.push_back(outer);
    }
  }
  return loops;
}

}  // namespace caustic
