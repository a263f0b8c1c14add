#include <doctest.h>

#include <cmath>

#include "caustic/algebra.hpp"
#include "caustic/equidistant.hpp"
#include "caustic/error.hpp"
#include "oracles.hpp"

using namespace caustic;
using oracle::pi;

namespace {

EquidistantPoint at_param(const EquidistantSet& set, double s) {
  const EquidistantPoint* best = nullptr;
  double d = 1e9;
  for (const auto& b : set.branches)
    for (const auto& p : b.points) {
      const double e = std::abs(cyclic_offset(p.source.s_a, s, 2 * pi));
      if (e < d) {
        d = e;
        best = &p;
      }
    }
  REQUIRE(best != nullptr);
  REQUIRE(d < 1e-9);
  return *best;
}

bool near_event(const Branch& b, std::size_t i, std::size_t radius) {
  const std::size_t n = b.points.size();
  for (std::size_t k = 0; k <= 2 * radius; ++k) {
    const std::size_t j = (i + n + k - radius) % n;
    if (b.points[j].event != EventKind::none || !b.points[j].regular) return true;
  }
  return false;
}

bool matches_any(double s, const std::vector<double>& targets, double tol) {
  for (double t : targets)
    if (std::abs(cyclic_offset(s, t, 2 * pi)) < tol) return true;
  return false;
}

double circum_kappa(Vec2 a, Vec2 b, Vec2 c) {
  return 2 * std::abs(cross(b - a, c - a)) / (norm(b - a) * norm(c - b) * norm(c - a));
}

}  // namespace

TEST_CASE("circle equidistants are concentric circles") {
  const SampledCurve sc = oracle::load("circle.json", 512);
  for (double lam : {0.0, 0.2, 0.3, 0.7, 1.0}) {
    const EquidistantSet e = equidistant(sc, lam);
    for (const Vec2& p : e.points()) CHECK(norm(p) == doctest::Approx(std::abs(1 - 2 * lam)).epsilon(1e-12));
  }
  const EquidistantSet w = wigner_caustic(sc);
  CHECK(w.degenerate);
  for (const Vec2& p : w.points()) CHECK(norm(p) < 1e-8);
  for (const Vec2& p : css(sc).points()) CHECK(norm(p) < 1e-8);
}

TEST_CASE("ellipse wigner caustic degenerates to its centre") {
  const EquidistantSet w = wigner_caustic(oracle::load("ellipse.json", 1024));
  CHECK(w.degenerate);
  for (const Vec2& p : w.points()) CHECK(norm(p) < 1e-8);
}

TEST_CASE("o3 points") {
  const SampledCurve sc = oracle::load("o3.json", 2048);
  const EquidistantPoint e = at_param(equidistant(sc, 0.3), 0.0);
  CHECK(e.p.x == doctest::Approx(-0.3));
  CHECK(std::abs(e.p.y) < 1e-12);
  const EquidistantSet w = wigner_caustic(sc);
  CHECK_FALSE(w.degenerate);
  const Vec2 m = at_param(w, 0.0).p;
  CHECK(std::abs(m.x - 0.1) < 1e-12);
  CHECK(std::abs(m.y) < 1e-12);
  const Vec2 q = at_param(css(sc), 0.0).p;
  CHECK(q.x == doctest::Approx(0.9));
  CHECK(std::abs(q.y) < 1e-12);
  // lambda = 0 reproduces the curve
  std::vector<Vec2> curve;
  for (const auto& j : sc.jets) curve.push_back(j.p);
  CHECK(hausdorff(equidistant(sc, 0.0).points(), curve).hausdorff < 1e-9);
}

TEST_CASE("o3 events") {
  const SampledCurve sc = oracle::load("o3.json", 2048);
  const EquidistantSet w = wigner_caustic(sc);
  CHECK(w.count(EventKind::cusp) == 3);
  for (const auto& ev : w.events) {
    if (ev.kind != EventKind::cusp) continue;
    CHECK(matches_any(std::fmod(ev.s_a, pi), {pi / 6, pi / 2, 5 * pi / 6}, 1e-6));
  }
  const EquidistantSet e = equidistant(sc, 0.3);
  CHECK(e.count(EventKind::cusp) == 6);
  for (const auto& ev : e.events) {
    if (ev.kind != EventKind::cusp) continue;
    CHECK(matches_any(ev.s_a, {2 * pi / 9, 4 * pi / 9, 8 * pi / 9, 10 * pi / 9, 14 * pi / 9, 16 * pi / 9}, 1e-6));
  }
  CHECK(css(sc).count(EventKind::cusp) == 3);
}

TEST_CASE("rotation numbers of sets") {
  const SampledCurve sc = oracle::load("o3.json", 2048);
  CHECK(std::abs(wigner_caustic(sc).rotation_number - 0.5) < 1e-6);
  CHECK(std::abs(equidistant(sc, 0.3).rotation_number - 1.0) < 1e-6);
  CHECK(std::abs(equidistant(sc, 0.8).rotation_number - 1.0) < 1e-6);
  const SampledCurve cw = oracle::load("o3_cw.json", 2048);
  CHECK(std::abs(wigner_caustic(cw).rotation_number + 0.5) < 1e-6);
}

TEST_CASE("curvature formula") {
  const CurveSpec o3 = load_curve_spec(oracle::data("o3.json"));
  const Jet2 a = evaluate_jet(o3, 0.0), b = evaluate_jet(o3, pi);
  CHECK(*equidistant_curvature(a, b, 0.5) == doctest::Approx(1.25));
  CHECK(*equidistant_curvature(a, b, 0.3) == doctest::Approx(5.0 / 6.0));
  const CurveSpec circle = load_curve_spec(oracle::data("circle.json"));
  const Jet2 ca = evaluate_jet(circle, 1.0), cb = evaluate_jet(circle, 1.0 + pi);
  CHECK(*equidistant_curvature(ca, cb, 0.3) == doctest::Approx(2.5));
  CHECK_FALSE(equidistant_curvature(ca, cb, 0.5).has_value());
  // singular exactly where lambda* = kappa(a) / (kappa(a) + kappa(b))
  const double lam_star = a.kappa / (a.kappa + b.kappa);
  CHECK_FALSE(equidistant_curvature(a, b, lam_star).has_value());
}

TEST_CASE("css helpers") {
  const CurveSpec circle = load_curve_spec(oracle::data("circle.json"));
  CHECK_FALSE(css_curvature(evaluate_jet(circle, 0.4), evaluate_jet(circle, 0.4 + pi)).has_value());
  const CurveSpec o3 = load_curve_spec(oracle::data("o3.json"));
  const Vec2 q = *css_point(evaluate_jet(o3, 0.0), evaluate_jet(o3, pi));
  CHECK(q.x == doctest::Approx(0.9));
  // For O3 the cusp function is a positive multiple of -sin(3 theta), so the
  // CSS cusps sit at theta = 0, pi/3, 2pi/3; pi/6 is a Wigner cusp instead.
  const oracle::O3 ref;
  for (double t : {0.2, 0.7, 1.4}) {
    const double ra = ref.radius(t), rb = ref.radius(t + pi);
    const double expected = -2.4 * std::sin(3 * t) * (1 / (rb * rb * ra * ra * ra) + 1 / (ra * ra * rb * rb * rb));
    CHECK(css_cusp_function(evaluate_jet(o3, t), evaluate_jet(o3, t + pi)) ==
          doctest::Approx(expected).epsilon(1e-8));
  }
  for (double c : {0.0, pi / 3, 2 * pi / 3}) {
    CHECK(std::abs(css_cusp_function(evaluate_jet(o3, c), evaluate_jet(o3, c + pi))) < 1e-10);
    double prev = 0;
    for (double off : {1e-2, 1e-3, 1e-4}) {
      const auto k = css_curvature(evaluate_jet(o3, c + off), evaluate_jet(o3, c + off + pi));
      REQUIRE(k.has_value());
      CHECK(std::abs(*k) > prev);
      prev = std::abs(*k);
    }
  }
  CHECK(std::abs(css_cusp_function(evaluate_jet(o3, pi / 6), evaluate_jet(o3, pi / 6 + pi))) > 1.0);
}

TEST_CASE("css curvature against finite differences") {
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const EquidistantSet c = css(sc);
  for (const auto& b : c.branches) {
    const std::size_t n = b.points.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (std::abs(cyclic_offset(b.points[i].source.s_a, 0.2, 2 * pi)) > 2e-3) continue;
      const double fd = circum_kappa(b.points[i - 1].p, b.points[i].p, b.points[i + 1].p);
      const auto k = css_curvature(b.points[i].source.a, b.points[i].source.b);
      REQUIRE(k.has_value());
      CHECK(std::abs(*k) == doctest::Approx(fd).epsilon(1e-2));
    }
  }
}

TEST_CASE("normals") {
  const CurveSpec circle = load_curve_spec(oracle::data("circle.json"));
  const Vec2 n = equidistant_normal(evaluate_jet(circle, 0.0), 0.3);
  CHECK(n.x == doctest::Approx(-1.0));
  CHECK(std::abs(n.y) < 1e-12);
  const CurveSpec o3 = load_curve_spec(oracle::data("o3.json"));
  CHECK(equidistant_normal(evaluate_jet(o3, 0.0), 0.3).x == doctest::Approx(-1.0));
  const Vec2 n0 = equidistant_normal(evaluate_jet(o3, 0.0), 0.5);
  const Vec2 n1 = equidistant_normal(evaluate_jet(o3, pi), 0.5);
  CHECK(dot(n0, n1) == doctest::Approx(-1.0));
}

TEST_CASE("tangent line counts") {
  const SampledCurve sc = oracle::load("o3.json", 2048);
  // (1, 0) is the tangent of the Wigner cusp at pi/2, so use a generic direction
  const Vec2 generic{std::cos(0.1), std::sin(0.1)};
  CHECK(tangent_parallel_count(wigner_caustic(sc), generic) == 1);
  CHECK(tangent_parallel_count(equidistant(sc, 0.3), generic) == 2);
  CHECK_THROWS_AS(tangent_parallel_count(wigner_caustic(sc), {1, 0}), InputError);
  CHECK(tangent_parallel_count(css(sc), {0, 1}) == 1);
  const Vec2 cusp_dir{-std::sin(pi / 6), std::cos(pi / 6)};
  CHECK_THROWS_AS(tangent_parallel_count(wigner_caustic(sc), cusp_dir), InputError);
}

TEST_CASE("branch tangency and curvature agree with finite differences") {
  const SampledCurve sc = oracle::load("o3.json", 4096);
  for (double lam : {0.3, 0.5}) {
    const EquidistantSet e = lam == 0.5 ? wigner_caustic(sc) : equidistant(sc, lam);
    int checked = 0;
    for (const auto& b : e.branches) {
      const std::size_t n = b.points.size();
      for (std::size_t i = 1; i + 1 < n; i += 7) {
        if (near_event(b, i, 12)) continue;
        const EquidistantPoint& p = b.points[i];
        const Vec2 d = b.points[i + 1].p - b.points[i - 1].p;
        CHECK(oracle::line_angle(d.x, d.y, p.source.a.tangent.x, p.source.a.tangent.y) < 1e-4);
        const double fd = circum_kappa(b.points[i - 1].p, p.p, b.points[i + 1].p);
        CHECK(std::abs(p.kappa) == doctest::Approx(fd).epsilon(1e-3));
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("no inflexions on equidistants of a convex curve") {
  const SampledCurve sc = oracle::load("o3.json", 2048);
  for (const EquidistantSet& e : {equidistant(sc, 0.3), wigner_caustic(sc), css(sc)}) {
    int pos = 0, neg = 0;
    for (const auto& b : e.branches)
      for (const auto& p : b.points) {
        if (!std::isfinite(p.kappa)) continue;
        (p.kappa > 0 ? pos : neg)++;
      }
    CHECK((pos == 0 || neg == 0));
    CHECK(e.count(EventKind::inflexion) == 0);
  }
}

TEST_CASE("css is an envelope of chords") {
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const EquidistantSet c = css(sc);
  int checked = 0;
  for (const auto& b : c.branches) {
    for (std::size_t i = 1; i + 1 < b.points.size(); i += 5) {
      if (near_event(b, i, 12)) continue;
      const EquidistantPoint& p = b.points[i];
      // collinear with the generating chord
      CHECK(std::abs(cross(p.source.chord, p.p - p.source.a.p)) < 1e-8 * norm(p.source.chord));
      const Vec2 d = b.points[i + 1].p - b.points[i - 1].p;
      CHECK(oracle::line_angle(d.x, d.y, p.source.chord.x, p.source.chord.y) < 1e-3);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("e_lambda and e_1-lambda coincide") {
  for (const char* name : {"o3.json", "ellipse.json", "limacon.json"}) {
    const SampledCurve sc = oracle::load(name, 2048);
    for (double lam : {0.2, 0.3, 0.45}) {
      CHECK(hausdorff(equidistant(sc, lam).points(), equidistant(sc, 1 - lam).points()).hausdorff < 1e-8);
    }
  }
}
