// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "caustic/algebra.hpp"
#include "caustic/cli.hpp"
#include "caustic/error.hpp"
#include "caustic/io.hpp"
#include "oracles.hpp"

using namespace caustic;
using oracle::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) { return format_number(v, 6); }

double diameter_oracle(const oracle::O3& ref) {
  std::vector<oracle::P> pts;
  for (int i = 0; i < 2000; ++i) pts.push_back(ref.point(2 * pi * i / 2000));
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, oracle::dist(pts[i], pts[j]));
  return d;
}

oracle::P o3_branch(const oracle::O3& ref, double t, double lam) {
  return oracle::lerp(ref.point(t), ref.point(t + pi), lam);
}

// d/dt of the branch lam gamma(t) + (1 - lam) gamma(t + pi).
oracle::P o3_branch_deriv(const oracle::O3& ref, double t, double lam) {
  return oracle::lerp(ref.deriv(t), ref.deriv(t + pi), lam);
}

double nearest(const std::vector<Vec2>& set, Vec2 p) {
  double best = 1e300;
  for (const Vec2& q : set) best = std::min(best, distance(p, q));
  return best;
}

bool near_event(const Branch& b, std::size_t i, std::size_t radius) {
  const std::size_t n = b.points.size();
  for (std::size_t k = 0; k <= 2 * radius; ++k) {
    const std::size_t j = (i + n + k - radius) % n;
    if (b.points[j].event != EventKind::none || !b.points[j].regular) return true;
  }
  return false;
}

// Derivative at point i of the interpolating polynomial through points i-2..i+2,
// with s_a (unwrapped around point i) as the abscissa.
Vec2 lagrange_derivative(const Branch& b, std::size_t i) {
  double x[5];
  for (int k = 0; k < 5; ++k)
    x[k] = cyclic_offset(b.points[i].source.s_a, b.points[i + k - 2].source.s_a, 2 * pi);
  Vec2 d;
  for (int j = 0; j < 5; ++j) {
    if (j == 2) continue;
    // l_j'(x_2) = 1/(x_j - x_2) * prod_{m != j, 2} (x_2 - x_m)/(x_j - x_m)
    double w = 1 / (x[j] - x[2]);
    for (int m = 0; m < 5; ++m)
      if (m != j && m != 2) w *= (x[2] - x[m]) / (x[j] - x[m]);
    d += w * (b.points[i + j - 2].p - b.points[i].p);
  }
  return d;
}

Outcome circle_degeneracy() {
  Outcome o;
  const SampledCurve sc = oracle::load("circle.json", 4096);
  const int n = 4096;
  for (double lam : {0.0, 0.2, 0.3, 0.5, 0.7, 1.0}) {
    std::vector<Vec2> ref;
    const double r = 1 - 2 * lam;
    for (int i = 0; i < n; ++i) ref.push_back({r * std::cos(2 * pi * i / n), r * std::sin(2 * pi * i / n)});
    const EquidistantSet e = lam == 0.5 ? wigner_caustic(sc) : equidistant(sc, lam);
    const double h = hausdorff(e.points(), ref).hausdorff;
    o.require(h < 1e-6, "lambda=" + num(lam) + " hausdorff=" + num(h));
  }
  const EquidistantSet w = wigner_caustic(sc);
  double far = 0;
  for (const Vec2& p : w.points()) far = std::max(far, norm(p));
  o.require(far < 1e-6, "wigner spread " + num(far));
  o.require(w.degenerate, "wigner not flagged degenerate");
  if (o.pass) o.detail = "E_lambda concentric, wigner collapses (max " + num(far) + ")";
  return o;
}

Outcome o3_cusps() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const EquidistantSet w = wigner_caustic(sc);
  o.require(w.count(EventKind::cusp) == 3, "wigner cusps " + std::to_string(w.count(EventKind::cusp)));
  for (const auto& ev : w.events) {
    if (ev.kind != EventKind::cusp) continue;
    const double t = std::fmod(ev.s_a, pi);
    double best = 1;
    for (double want : {pi / 6, pi / 2, 5 * pi / 6}) best = std::min(best, std::abs(t - want));
    o.require(best < 1e-6, "wigner cusp at " + num(ev.s_a));
  }
  const EquidistantSet e = equidistant(sc, 0.3);
  o.require(e.count(EventKind::cusp) == 6, "E_0.3 cusps " + std::to_string(e.count(EventKind::cusp)));
  for (const auto& ev : e.events) {
    if (ev.kind != EventKind::cusp) continue;
    // cos(3 theta) = -1/2 within 1e-6 in theta
    const double c = std::cos(3 * ev.s_a) + 0.5;
    o.require(std::abs(c) < 3 * std::sin(2 * pi / 3) * 1e-6, "E_0.3 cusp at " + num(ev.s_a));
  }
  const ParityReport p3 = parity_report(sc, 0.3), p5 = parity_report(sc, 0.5);
  o.require(p3.parity == Verdict::pass, "E_0.3 parity");
  o.require(p5.parity == Verdict::pass && p5.minimum == Verdict::pass, "wigner parity/minimum");
  o.require(p5.css_minimum == Verdict::pass && p5.css_count >= 3, "css count " + std::to_string(p5.css_count));
  if (o.pass)
    o.detail = "wigner 3, E_0.3 6, css " + std::to_string(p5.css_count) + ", parity pass";
  return o;
}

Outcome curvature_formula() {
  Outcome o;
  const CurveSpec spec = load_curve_spec(oracle::data("o3.json"));
  const oracle::O3 ref;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  double worst = 0;
  int used = 0;
  for (double lam : {0.3, 0.5}) {
    for (int k = 0; k < 64;) {
      const double t = u(rng);
      // skip pairs close to a cusp, where the branch curvature blows up
      if (std::abs(0.8 * std::cos(3 * t) - (2 * lam - 1)) < 0.05) continue;
      ++k;
      const double h = 1e-4;
      const oracle::P m = o3_branch(ref, t - h, lam), c = o3_branch(ref, t, lam), p = o3_branch(ref, t + h, lam);
      const double dx = (p.x - m.x) / (2 * h), dy = (p.y - m.y) / (2 * h);
      const double ddx = (p.x - 2 * c.x + m.x) / (h * h), ddy = (p.y - 2 * c.y + m.y) / (h * h);
      const double fd = std::abs(dx * ddy - dy * ddx) / std::pow(std::hypot(dx, dy), 3);
      const auto k_e = equidistant_curvature(evaluate_jet(spec, t), evaluate_jet(spec, t + pi), lam);
      if (!k_e) {
        o.require(false, "no curvature at " + num(t));
        continue;
      }
      worst = std::max(worst, std::abs(std::abs(*k_e) - fd) / fd);
      ++used;
    }
  }
  o.require(worst < 1e-3, "max relative error " + num(worst));
  const Jet2 a = evaluate_jet(spec, 0.0), b = evaluate_jet(spec, pi);
  const double k5 = equidistant_curvature(a, b, 0.5).value_or(NAN);
  const double k3 = equidistant_curvature(a, b, 0.3).value_or(NAN);
  o.require(std::abs(k5 - 1.25) < 1e-12, "kappa(0,pi,1/2)=" + num(k5));
  o.require(std::abs(k3 - 5.0 / 6.0) < 1e-12, "kappa(0,pi,0.3)=" + num(k3));
  if (o.pass)
    o.detail = std::to_string(used) + " pairs, max rel err " + num(worst) + "; 1.25 and 5/6 exact";
  return o;
}

Outcome tangency() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const oracle::O3 ref;
  double worst_oracle = 0, worst_fd = 0;
  std::size_t samples = 0;
  for (double lam : {0.3, 0.5}) {
    const EquidistantSet e = lam == 0.5 ? wigner_caustic(sc) : equidistant(sc, lam);
    for (const auto& b : e.branches) {
      for (std::size_t i = 0; i < b.points.size(); ++i) {
        const EquidistantPoint& p = b.points[i];
        if (!p.regular || p.event != EventKind::none) continue;
        const Vec2 ta = p.source.a.tangent;
        const oracle::P d = o3_branch_deriv(ref, p.source.s_a, lam);
        worst_oracle = std::max(worst_oracle, oracle::line_angle(d.x, d.y, ta.x, ta.y));
        ++samples;
        if (i < 2 || i + 2 >= b.points.size()) continue;
        // five-point Lagrange derivative in the sample parameter; the branch is
        // smooth in it even where it has a geometric cusp
        const Vec2 c = lagrange_derivative(b, i);
        worst_fd = std::max(worst_fd, oracle::line_angle(c.x, c.y, ta.x, ta.y));
      }
    }
  }
  o.require(worst_oracle < 1e-4, "analytic branch tangent off by " + num(worst_oracle));
  o.require(worst_fd < 1e-4, "sampled branch tangent off by " + num(worst_fd));
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(samples) + " samples, max angle " +
              num(std::max(worst_oracle, worst_fd)) + " rad";
  return o;
}

Outcome tangent_lines() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const EquidistantSet w = wigner_caustic(sc), e = equidistant(sc, 0.3), c = css(sc);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  int done = 0, resampled = 0;
  while (done < 16) {
    const Vec2 d = unit_from_angle(u(rng));
    int nw, ne, nc;
    try {
      nw = tangent_parallel_count(w, d);
      ne = tangent_parallel_count(e, d);
      nc = tangent_parallel_count(c, d);
    } catch (const InputError&) {
      ++resampled;
      continue;
    }
    ++done;
    o.require(nw == 1 && ne == 2 && nc == 1, "direction " + num(angle_of(d)) + ": " + std::to_string(nw) +
                                                 "/" + std::to_string(ne) + "/" + std::to_string(nc));
  }
  if (o.pass) o.detail = "16 directions: wigner 1, E_0.3 2, css 1 (" + std::to_string(resampled) + " resampled)";
  return o;
}

Outcome rotations() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const double re = equidistant(sc, 0.3).rotation_number, rw = wigner_caustic(sc).rotation_number;
  o.require(std::abs(re - 1) < 1e-6, "E_0.3 rotation " + num(re));
  o.require(std::abs(rw - 0.5) < 1e-6, "wigner rotation " + num(rw));
  if (o.pass) o.detail = "E_0.3 " + num(re) + ", wigner " + num(rw);
  return o;
}

Outcome algebra() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const double tol = 5e-3 * diameter_oracle(oracle::O3{});
  const AlgebraReport c1 = verify_composition(sc, 0.3, 0.25, tol);
  const AlgebraReport c2 = verify_composition(sc, 0.3, 0.5, tol);
  const AlgebraReport r = verify_reconstruction(sc, 0.3, tol);
  o.require(std::abs(c1.composed - 0.4) < 1e-15, "composed lambda " + num(c1.composed));
  o.require(c1.distance.hausdorff < tol, "E_0.25(E_0.3) vs E_0.4: " + num(c1.distance.hausdorff));
  o.require(c2.distance.hausdorff < tol, "E_0.5(E_0.3) vs E_0.5: " + num(c2.distance.hausdorff));
  o.require(r.distance.hausdorff < tol, "reconstruction: " + num(r.distance.hausdorff));
  bool refused = false;
  try {
    reconstruct(wigner_caustic(sc), 0.5);
  } catch (const InputError&) {
    refused = true;
  }
  o.require(refused, "reconstruction at 1/2 not refused");
  if (o.pass)
    o.detail = "distances " + num(c1.distance.hausdorff) + ", " + num(c2.distance.hausdorff) + ", " +
               num(r.distance.hausdorff) + " < " + num(tol) + "; 1/2 refused";
  return o;
}

Outcome loop_existence() {
  Outcome o;
  const SampledCurve sc = oracle::load("limacon.json", 4096);
  const auto loops = detect_loops(sc);
  o.require(loops.size() == 1, std::to_string(loops.size()) + " loops");
  if (loops.size() != 1) return o;
  const LoopSegment& l = loops[0];
  o.require(std::abs(l.s_start - 2 * pi / 3) < 1e-6 && std::abs(l.s_end - 4 * pi / 3) < 1e-6,
            "loop [" + num(l.s_start) + ", " + num(l.s_end) + "]");
  const auto families = pair_families(sc);
  const Arc loop_arc{l.s_start, l.s_end, {}};
  const auto evs = arc_cusp_events(sc, families, loop_arc, loop_arc, 0.5);
  o.require(!evs.empty(), "no Wigner cusp from pairs inside the loop");
  const auto [f0, f1] = loop_parallelogram_arcs(sc, l);
  const ExistenceWindow w = existence_windows(sc, f0, f1, WindowMode::parallelogram);
  o.require(w.assumptions_ok, "window hypotheses: " + (w.diagnostics.empty() ? "" : w.diagnostics[0]));
  const ExistenceReport rep = verify_existence(sc, families, w);
  bool hit = false;
  for (const auto& p : rep.probes) hit = hit || (w.lambdas.contains(p.lambda) && p.events > 0);
  o.require(hit && rep.pass, "window " + w.lambdas.to_string() + " probes: " + rep.message);
  if (o.pass)
    o.detail = "loop [2pi/3, 4pi/3], " + std::to_string(evs.size()) + " wigner cusp(s), window " +
               w.lambdas.to_string();
  return o;
}

Outcome spectrum() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const auto families = pair_families(sc);
  const auto spec = singular_lambda_spectrum(sc, families);
  double lo = 1e9, hi = -1e9;
  for (const auto& f : spec) {
    lo = std::min(lo, f.lo);
    hi = std::max(hi, f.hi);
  }
  o.require(std::abs(lo - 0.1) < 1e-3 && std::abs(hi - 0.9) < 1e-3, "range [" + num(lo) + ", " + num(hi) + "]");
  int mismatches = 0;
  for (int k = 1; k < 100; ++k) {
    const double lam = k / 100.0;
    // oracle range [0.1, 0.9]
    const bool in = lam >= 0.1 - 1e-12 && lam <= 0.9 + 1e-12;
    if (in != !cusp_events(sc, families, lam).empty()) {
      ++mismatches;
      o.require(false, "grid mismatch at " + num(lam));
    }
  }
  if (o.pass) o.detail = "range [" + num(lo) + ", " + num(hi) + "], 99 grid points agree";
  return o;
}

Outcome css_relation() {
  Outcome o;
  const SampledCurve sc = oracle::load("o3.json", 4096);
  const double diam = diameter_oracle(oracle::O3{});
  const EquidistantSet c = css(sc);
  const std::vector<Vec2> cpts = c.points();
  double worst = 0;
  for (double lam : {0.2, 0.3, 0.5}) {
    for (const auto& ev : cusp_events(sc, lam)) worst = std::max(worst, nearest(cpts, ev.location));
  }
  o.require(worst < 1e-3 * diam, "cusp off the CSS by " + num(worst));
  double tang = 0;
  for (const auto& b : c.branches) {
    for (std::size_t i = 1; i + 1 < b.points.size(); ++i) {
      if (near_event(b, i, 1)) continue;
      const Vec2 d = b.points[i + 1].p - b.points[i - 1].p;
      const Vec2 ch = b.points[i].source.chord;
      tang = std::max(tang, oracle::line_angle(d.x, d.y, ch.x, ch.y));
    }
  }
  o.require(tang < 1e-3, "envelope residual " + num(tang));
  if (o.pass) o.detail = "cusp distance " + num(worst) + ", envelope residual " + num(tang) + " rad";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "caustic_acceptance";
  std::filesystem::create_directories(dir);
  const std::string o3 = oracle::data("o3.json"), lim = oracle::data("limacon.json"),
                    wavy = oracle::data("wavy.json");
  const std::string e03 = (dir / "e03.csv").string();
  {
    std::ostringstream out, err;
    run_cli({"equidist", "--curve", o3, "--lambda", "0.3", "--out", e03}, out, err);
  }
  const std::vector<std::vector<std::string>> commands{
      {"sample", "--curve", o3},
      {"equidist", "--curve", o3, "--lambda", "0.3"},
      {"wigner", "--curve", o3},
      {"css", "--curve", o3},
      {"cusps", "--curve", o3, "--lambda", "0.3"},
      {"parity", "--curve", o3, "--lambda", "0.5"},
      {"spectrum", "--curve", o3},
      {"inflexions", "--curve", wavy, "--lambda", "0.3"},
      {"loops", "--curve", lim},
      {"windows", "--curve", lim, "--mode", "parallelogram", "--split", "2.0943951023931953,4.1887902047863905"},
      {"compose-check", "--curve", o3, "--lambda", "0.3", "--delta", "0.25"},
      {"css-check", "--curve", o3, "--lambda", "0.3", "--delta", "0.2"},
      {"reconstruct", "--curve", o3, "--lambda", "0.3"},
      {"render", "--in", e03, "--curve", o3},
  };
  int compared = 0;
  for (const auto& base : commands) {
    std::string text[2], file[2];
    for (int k = 0; k < 2; ++k) {
      const std::string path = (dir / (base[0] + "_" + std::to_string(k) + ".out")).string();
      std::filesystem::remove(path);
      auto args = base;
      args.push_back("--out");
      args.push_back(path);
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      o.require(code == kExitOk, base[0] + " exited " + std::to_string(code));
      text[k] = out.str();
      std::ifstream in(path, std::ios::binary);
      file[k].assign(std::istreambuf_iterator<char>(in), {});
    }
    // the report names the output path, which differs between the two runs
    const std::string p0 = (dir / (base[0] + "_0.out")).string(), p1 = (dir / (base[0] + "_1.out")).string();
    for (std::size_t pos = text[1].find(p1); pos != std::string::npos; pos = text[1].find(p1, pos))
      text[1].replace(pos, p1.size(), p0);
    o.require(!file[0].empty(), base[0] + " wrote no artifact");
    o.require(file[0] == file[1], base[0] + " artifact differs");
    o.require(text[0] == text[1], base[0] + " output differs");
    ++compared;
  }
  if (o.pass) o.detail = std::to_string(compared) + " commands byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"circle degeneracy", circle_degeneracy},
      {"o3 cusp counts and parity", o3_cusps},
      {"equidistant curvature formula", curvature_formula},
      {"tangency of equidistant branches", tangency},
      {"tangent line counts", tangent_lines},
      {"rotation numbers", rotations},
      {"composition and reconstruction", algebra},
      {"loop existence", loop_existence},
      {"singular lambda spectrum", spectrum},
      {"css relation", css_relation},
      {"cli determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
