#include <doctest.h>

#include <cmath>

#include "caustic/error.hpp"
#include "caustic/parallel.hpp"
#include "oracles.hpp"

using namespace caustic;
using oracle::pi;

namespace {

bool has_partner(const std::vector<Partner>& ps, double s, double per, double tol) {
  for (const auto& p : ps)
    if (std::abs(cyclic_offset(p.s, s, per)) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("antipodal family of a support curve") {
  const CurveSpec circle = load_curve_spec(oracle::data("circle.json"));
  const PairFamily fc = antipodal_pairs_convex(circle, 64);
  REQUIRE(fc.samples.size() == 64);
  CHECK(fc.cyclic);
  for (const auto& p : fc.samples) {
    CHECK(p.chord.x == doctest::Approx(-2 * std::cos(p.s_a)));
    CHECK(p.chord.y == doctest::Approx(-2 * std::sin(p.s_a)));
    CHECK(p.relation == PairRelation::opposite_direction);
  }
  const PairFamily fo = antipodal_pairs_convex(load_curve_spec(oracle::data("o3.json")), 128);
  CHECK(fo.samples.size() == 128);
  CHECK(fo.s_b_shift == doctest::Approx(2 * pi));
  CHECK(fo.samples[0].chord.x == doctest::Approx(-2.0));
  CHECK(std::abs(fo.samples[0].chord.y) < 1e-12);
  CHECK_THROWS_AS(antipodal_pairs_convex(load_curve_spec(oracle::data("limacon.json")), 64),
                  InputError);
}

TEST_CASE("partners on convex curves") {
  const SampledCurve circle = oracle::load("circle.json", 512);
  auto pc = parallel_partners(circle, 0.0);
  REQUIRE(pc.size() == 1);
  CHECK(pc[0].s == doctest::Approx(pi).epsilon(1e-10));
  const SampledCurve o3 = oracle::load("o3.json", 1024);
  for (double s : {0.0, 0.4, 2.5, 5.9}) {
    auto ps = parallel_partners(o3, s);
    REQUIRE(ps.size() == 1);
    CHECK(std::abs(cyclic_offset(ps[0].s, s + pi, 2 * pi)) < 1e-9);
    CHECK(ps[0].relation == PairRelation::opposite_direction);
  }
}

TEST_CASE("partners on the limacon") {
  const SampledCurve sc = oracle::load("limacon.json", 2048);
  const oracle::Limacon ref;
  // brute-force residual scan
  const double s = pi;
  const oracle::P d0 = ref.deriv(s);
  const int m = 8192;
  std::vector<double> roots;
  auto res = [&](double t) {
    const oracle::P d = ref.deriv(t);
    return d0.x * d.y - d0.y * d.x;
  };
  // grid shifted off the exact roots at 0 and pi
  for (int i = 0; i < m; ++i) {
    const double a = 2 * pi * (i + 0.37) / m, b = 2 * pi * (i + 1.37) / m;
    if (a < s && s < b) continue;
    if ((res(a) > 0) != (res(b) > 0)) roots.push_back(0.5 * (a + b));
  }
  const auto ps = parallel_partners(sc, s);
  CHECK(ps.size() >= 3);
  CHECK(ps.size() == roots.size());
  for (double r : roots) CHECK(has_partner(ps, r, 2 * pi, 2 * pi / m));
}

TEST_CASE("partner relation is symmetric") {
  const SampledCurve sc = oracle::load("limacon.json", 2048);
  for (double s : {0.3, 1.7, 2.4, 3.3, 5.0}) {
    for (const auto& p : parallel_partners(sc, s)) {
      CHECK(has_partner(parallel_partners(sc, p.s), s, 2 * pi, 1e-8));
    }
  }
}

TEST_CASE("family counts") {
  CHECK(pair_families(oracle::load("circle.json", 512)).size() == 1);
  const auto fo = pair_families(oracle::load("o3.json", 1024));
  REQUIRE(fo.size() == 1);
  CHECK(fo[0].cyclic);
  CHECK(fo[0].samples.size() == 1024);
  const auto fl = pair_families(oracle::load("limacon.json", 2048));
  CHECK(fl.size() >= 2);
  bool same = false, opposite = false;
  for (const auto& f : fl) {
    same = same || f.relation == PairRelation::same_direction;
    opposite = opposite || f.relation == PairRelation::opposite_direction;
  }
  CHECK(same);
  CHECK(opposite);
}

TEST_CASE("families are continuous") {
  const SampledCurve sc = oracle::load("wavy.json", 2048);
  const auto fams = pair_families(sc);
  CHECK(!fams.empty());
  for (const auto& f : fams) {
    for (std::size_t i = 0; i + 1 < f.samples.size(); ++i) {
      CHECK(f.samples[i + 1].s_a > f.samples[i].s_a);
      CHECK(std::abs(f.samples[i + 1].s_b - f.samples[i].s_b) < 0.5);
    }
    for (const auto& p : f.samples) CHECK(std::abs(cross(p.a.tangent, p.b.tangent)) < 1e-8);
  }
}

TEST_CASE("matching derivative") {
  const SampledCurve circle = oracle::load("circle.json", 512);
  const auto fc = pair_families(circle);
  for (double s : {0.0, 1.0, 4.0}) CHECK(*matching_derivative(circle, fc[0], s) == doctest::Approx(1.0));
  const SampledCurve o3 = oracle::load("o3.json", 1024);
  const auto fo = pair_families(o3);
  CHECK(*matching_derivative(o3, fo[0], 0.0) == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(*matching_derivative(o3, fo[0], pi / 6) == doctest::Approx(1.0).epsilon(1e-9));
  // against the arc-length rate of the antipodal map
  const oracle::O3 ref;
  for (double s : {0.3, 1.1, 2.9}) {
    const double expected = ref.radius(s + pi) / ref.radius(s);
    CHECK(*matching_derivative(o3, fo[0], s) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("curved side") {
  const CurveSpec o3 = load_curve_spec(oracle::data("o3.json"));
  for (double s : {0.0, 0.8, 3.1}) {
    CHECK(curved_side(evaluate_jet(o3, s), evaluate_jet(o3, s + pi)) == CurvedSide::different_side);
  }
  // inner-loop point and the outer point with the same tangent direction
  const CurveSpec lim = load_curve_spec(oracle::data("limacon.json"));
  const Jet2 a = evaluate_jet(lim, pi);
  const Jet2 b = evaluate_jet(lim, 0.0);
  REQUIRE(std::abs(cross(a.tangent, b.tangent)) < 1e-12);
  CHECK(dot(a.tangent, b.tangent) > 0);
  CHECK(curved_side(a, b) == CurvedSide::same_side);
  CHECK(frame_kappa_b(a, b) == doctest::Approx(-b.kappa));
  Jet2 flat = b;
  flat.kappa = 0.0;
  CHECK_FALSE(curved_side(a, flat).has_value());
}
