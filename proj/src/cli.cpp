#include "caustic/cli.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "caustic/algebra.hpp"
#include "caustic/error.hpp"
#include "caustic/io.hpp"

namespace caustic {

namespace {

struct Options {
  std::string curve;
  int n = 2048;
  std::string out;
  bool json = false;
  double lambda = std::nan("");
  double delta = std::nan("");
  double tol = std::nan("");
  std::string mode;
  std::string split;
  std::string arc1;
  std::string inputs;
  bool both = false;
  int excision = 2;
};

class Run {
 public:
  Run(std::string command, const Options& opt, std::ostream& out)
      : opt_(opt), out_(out) {
    report_.command = std::move(command);
  }

  SampledCurve load() {
    if (opt_.curve.empty()) throw InputError("--curve is required");
    const std::string text = read_text_file(opt_.curve);
    report_.inputs.push_back({opt_.curve, hex_digest(fnv1a(text))});
    auto spec = std::make_shared<const CurveSpec>(parse_curve_spec(text));
    return sample_curve(spec, opt_.n);
  }

  void artifact(const std::string& content) {
    if (opt_.out.empty()) return;
    write_text_file(opt_.out, content);
    report_.artifacts.push_back(opt_.out);
  }

  void check(Check c) { report_.checks.push_back(std::move(c)); }
  std::ostream& text() { return text_; }

  int finish() {
    int code = kExitOk;
    for (const auto& c : report_.checks)
      if (c.verdict == Verdict::fail) code = kExitVerification;
    // Commands without a data artifact write their run report to --out.
    if (!opt_.out.empty() && report_.artifacts.empty()) {
      write_text_file(opt_.out, report_.to_json() + "\n");
      report_.artifacts.push_back(opt_.out);
    }
    if (opt_.json) {
      out_ << report_.to_json() << '\n';
    } else {
      out_ << text_.str();
      for (const auto& c : report_.checks)
        out_ << "check " << c.name << ": " << to_string(c.verdict) << " (measured "
             << format_number(c.measured, 9) << ", expected " << format_number(c.expected, 9)
             << ")\n";
      for (const auto& a : report_.artifacts) out_ << "wrote " << a << '\n';
    }
    return code;
  }

  RunReport& report() { return report_; }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::ostringstream text_;
  RunReport report_;
};

void require_lambda(const Options& o) {
  if (std::isnan(o.lambda)) throw InputError("--lambda is required");
}

std::vector<double> parse_list(const std::string& s, std::size_t want, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError(std::string(flag) + ": bad number '" + tok + "'");
    }
  }
  if (v.size() != want)
    throw InputError(std::string(flag) + " expects " + std::to_string(want) + " comma-separated numbers");
  return v;
}

void set_summary(Run& run, const EquidistantSet& set) {
  auto& t = run.text();
  t << to_string(set.kind);
  if (set.kind != SetKind::css) t << " lambda=" << format_number(set.lambda);
  t << " branches=" << set.branches.size() << " points=" << set.points().size()
    << " cusps=" << set.count(EventKind::cusp) << " inflexions=" << set.count(EventKind::inflexion)
    << " endpoints=" << set.count(EventKind::endpoint)
    << " degenerate=" << set.count(EventKind::degenerate);
  if (!std::isnan(set.rotation_number)) t << " rotation=" << format_number(set.rotation_number, 9);
  t << '\n';
}

std::string events_csv(const std::vector<SingularEvent>& events) {
  std::ostringstream os;
  os << "kind,lambda,s_a,s_b,x,y,tangent_angle,residual,branch,family\n";
  for (const auto& e : events)
    os << to_string(e.kind) << ',' << format_number(e.lambda) << ',' << format_number(e.s_a) << ','
       << format_number(e.s_b) << ',' << format_number(e.location.x) << ','
       << format_number(e.location.y) << ',' << format_number(angle_of(e.tangent)) << ','
       << format_number(e.residual) << ',' << e.branch << ',' << e.family << '\n';
  return os.str();
}

int cmd_sample(Run& run, const Options&) {
  const SampledCurve sc = run.load();
  std::ostringstream os;
  os << "index,t,x,y,tangent_angle,kappa,kappa_prime,arclength\n";
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const Jet2& j = sc.jets[i];
    os << i << ',' << format_number(j.t_param) << ',' << format_number(j.p.x) << ','
       << format_number(j.p.y) << ',' << format_number(sc.phi[i]) << ',' << format_number(j.kappa)
       << ',' << format_number(j.kappa_prime) << ',' << format_number(sc.arclen[i]) << '\n';
  }
  run.artifact(os.str());
  run.text() << "samples=" << sc.size() << " length=" << format_number(sc.length(), 9)
             << " rotation=" << format_number(sc.rotation_number, 9) << '\n';
  return run.finish();
}

int cmd_set(Run& run, const Options& o, SetKind kind) {
  const SampledCurve sc = run.load();
  EquidistantSet set;
  if (kind == SetKind::equidistant) {
    require_lambda(o);
    set = equidistant(sc, o.lambda);
  } else if (kind == SetKind::wigner) {
    set = wigner_caustic(sc);
  } else {
    set = css(sc);
  }
  run.artifact(csv_string(set));
  set_summary(run, set);
  return run.finish();
}

int cmd_cusps(Run& run, const Options& o) {
  require_lambda(o);
  const SampledCurve sc = run.load();
  const auto ev = cusp_events(sc, o.lambda);
  run.artifact(events_csv(ev));
  std::size_t cusps = 0;
  for (const auto& e : ev) cusps += e.kind == EventKind::cusp;
  run.text() << "lambda=" << format_number(o.lambda) << " cusps=" << cusps
             << " degenerate=" << ev.size() - cusps << '\n';
  for (const auto& e : ev)
    run.text() << "  " << to_string(e.kind) << " s_a=" << format_number(e.s_a, 9)
               << " s_b=" << format_number(e.s_b, 9) << " at (" << format_number(e.location.x, 9)
               << ", " << format_number(e.location.y, 9) << ")\n";
  return run.finish();
}

int cmd_parity(Run& run, const Options& o) {
  require_lambda(o);
  const SampledCurve sc = run.load();
  const ParityReport rep = parity_report(sc, o.lambda);
  run.text() << rep.summary() << '\n';
  run.report().message = rep.summary();
  for (auto c : rep.checks()) run.check(std::move(c));
  return run.finish();
}

int cmd_spectrum(Run& run, const Options&) {
  const SampledCurve sc = run.load();
  const auto spec = singular_lambda_spectrum(sc);
  std::ostringstream os;
  os << "family,s_a,s_b,lambda_star\n";
  for (const auto& f : spec) {
    for (const auto& g : f.graph)
      os << f.family << ',' << format_number(g.s_a) << ',' << format_number(g.s_b) << ','
         << format_number(g.lambda_star) << '\n';
    run.text() << "family " << f.family << " (" << to_string(f.relation) << "): lambda* in ["
               << format_number(f.lo, 9) << ", " << format_number(f.hi, 9) << "]";
    if (f.skipped) run.text() << " skipped=" << f.skipped;
    run.text() << '\n';
  }
  run.artifact(os.str());
  return run.finish();
}

int cmd_inflexions(Run& run, const Options& o) {
  require_lambda(o);
  const SampledCurve sc = run.load();
  const auto ev = inflexion_events(sc, o.lambda);
  run.artifact(events_csv(ev));
  run.text() << "inflexion points=" << ev.size() << '\n';
  return run.finish();
}

int cmd_loops(Run& run, const Options& o) {
  const SampledCurve sc = run.load();
  LoopOptions lo;
  lo.both_complements = o.both;
  const auto loops = detect_loops(sc, lo);
  std::ostringstream os;
  os << "loop,s_start,s_end,node_x,node_y,rotation,convexity\n";
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& l = loops[i];
    os << i << ',' << format_number(l.s_start) << ',' << format_number(l.s_end) << ','
       << format_number(l.node.x) << ',' << format_number(l.node.y) << ','
       << format_number(l.rotation) << ',' << to_string(l.convexity) << '\n';
    run.text() << "loop " << i << ": [" << format_number(l.s_start, 9) << ", "
               << format_number(l.s_end, 9) << "] rotation=" << format_number(l.rotation, 9) << ' '
               << to_string(l.convexity) << '\n';
  }
  if (loops.empty()) run.text() << "no loops\n";
  run.artifact(os.str());
  return run.finish();
}

// --split s0,s1 names F0 = [s0, s1]. The second arc, unless given by --arc1, is
// the partner arc (ratio and limiting modes), the loop split into its two
// parallelogram arcs (parallelogram), or the rest of the curve [s1, s0 + period]
// (tangent cone and half-turn).
int cmd_windows(Run& run, const Options& o) {
  const auto mode = parse_window_mode(o.mode);
  if (!mode) throw InputError("unknown --mode '" + o.mode + "'");
  if (o.split.empty()) throw InputError("--split s0,s1 is required");
  const auto sp = parse_list(o.split, 2, "--split");
  const SampledCurve sc = run.load();
  const double per = sc.period();
  Arc f0{sp[0], sp[1], {}};
  Arc f1;
  if (!o.arc1.empty()) {
    const auto a1 = parse_list(o.arc1, 2, "--arc1");
    f1 = {a1[0], a1[1], {}};
  } else if (*mode == WindowMode::parallelogram) {
    LoopSegment loop;
    loop.s_start = sp[0];
    loop.s_end = sp[1];
    std::tie(f0, f1) = loop_parallelogram_arcs(sc, loop);
  } else if (*mode == WindowMode::tangent_cone || *mode == WindowMode::halfturn_pair) {
    f1 = {sp[1], sp[0] + per, {}};
  } else {
    const auto partners = parallel_partners(sc, sp[0]);
    if (partners.empty()) throw InputError("no parallel partner of s0 to start the second arc");
    const Partner& first = partners.front();
    // End guess: the partner of s1 of the same kind reached first going forward.
    std::optional<double> g1;
    for (const auto& p : parallel_partners(sc, sp[1])) {
      if (p.relation != first.relation) continue;
      if (!g1 || positive_mod(p.s - first.s, per) < positive_mod(*g1 - first.s, per)) g1 = p.s;
    }
    if (!g1) throw InputError("no parallel partner of s1 to end the second arc");
    f1 = partner_arc(sc, f0, first.s, *g1);
  }
  const ExistenceWindow w = existence_windows(sc, f0, f1, *mode);
  auto& t = run.text();
  t << "mode=" << to_string(w.mode) << " F0=[" << format_number(f0.s0, 9) << ", "
    << format_number(f0.s1, 9) << "] F1=[" << format_number(f1.s0, 9) << ", "
    << format_number(f1.s1, 9) << "]\n";
  if (!std::isnan(w.rho_min))
    t << "rho_min=" << format_number(w.rho_min, 9) << " rho_max=" << format_number(w.rho_max, 9) << '\n';
  if (!std::isnan(w.rho)) t << "rho=" << format_number(w.rho, 9) << '\n';
  t << "assumptions " << (w.assumptions_ok ? "ok" : "violated") << '\n';
  for (const auto& d : w.diagnostics) t << "  " << d << '\n';
  t << "lambda set: " << w.lambdas.to_string() << '\n';
  run.report().message = w.lambdas.to_string();
  if (!w.assumptions_ok) {
    run.finish();
    throw InputError("window hypotheses not satisfied: " + w.diagnostics.front());
  }
  const ExistenceReport rep = verify_existence(sc, w);
  t << rep.message << '\n';
  for (const auto& p : rep.probes)
    t << "  lambda=" << format_number(p.lambda, 9) << " events=" << p.events << '\n';
  if (!rep.vacuous && !rep.probes.empty()) {
    std::size_t ok = 0;
    for (const auto& p : rep.probes) ok += p.events > 0;
    run.check({"window_existence", rep.pass ? Verdict::pass : Verdict::fail, double(ok),
               double(rep.probes.size()), "probes with a singular point"});
  }
  std::ostringstream os;
  os << "lambda,events\n";
  for (const auto& p : rep.probes) os << format_number(p.lambda) << ',' << p.events << '\n';
  run.artifact(os.str());
  return run.finish();
}

int cmd_compose(Run& run, const Options& o) {
  require_lambda(o);
  if (std::isnan(o.delta)) throw InputError("--delta is required");
  const SampledCurve sc = run.load();
  const AlgebraReport r = verify_composition(sc, o.lambda, o.delta, o.tol);
  run.text() << "E_" << format_number(o.delta) << "(E_" << format_number(o.lambda) << ") vs E_"
             << format_number(r.composed) << ": hausdorff=" << format_number(r.distance.hausdorff, 6)
             << " tol=" << format_number(r.tol, 6) << '\n';
  run.check(r.check);
  return run.finish();
}

int cmd_css_check(Run& run, const Options& o) {
  require_lambda(o);
  if (std::isnan(o.delta)) throw InputError("--delta is required");
  const SampledCurve sc = run.load();
  const AlgebraReport r = verify_css_invariance(sc, o.lambda, o.delta, o.tol);
  run.text() << "CSS(E_" << format_number(o.lambda) << ") vs CSS(E_" << format_number(o.delta)
             << "): hausdorff=" << format_number(r.distance.hausdorff, 6)
             << " tol=" << format_number(r.tol, 6) << '\n';
  run.check(r.check);
  return run.finish();
}

int cmd_reconstruct(Run& run, const Options& o) {
  require_lambda(o);
  if (o.lambda == 0.5) throw InputError("reconstruction from the Wigner caustic (lambda = 1/2) is excluded");
  const SampledCurve sc = run.load();
  const EquidistantSet rec = reconstruct(equidistant(sc, o.lambda), o.lambda, o.excision);
  run.artifact(csv_string(rec));
  const AlgebraReport r = verify_reconstruction(sc, o.lambda, o.tol);
  run.text() << "reconstruction with delta=" << format_number(r.delta, 9)
             << ": hausdorff=" << format_number(r.distance.hausdorff, 6)
             << " tol=" << format_number(r.tol, 6) << '\n';
  run.check(r.check);
  return run.finish();
}

int cmd_render(Run& run, const Options& o) {
  if (o.out.empty()) throw InputError("render needs --out");
  std::vector<SvgLayer> layers;
  if (!o.curve.empty()) layers.push_back(curve_layer(run.load(), true));
  std::stringstream ss(o.inputs);
  std::string path;
  while (std::getline(ss, path, ',')) {
    if (path.empty()) continue;
    const std::string text = read_text_file(path);
    run.report().inputs.push_back({path, hex_digest(fnv1a(text))});
    std::istringstream is(text);
    layers.push_back(csv_layer(parse_csv(is)));
  }
  if (layers.empty()) throw InputError("render: no layers (give --in and/or --curve)");
  run.artifact(render_svg(layers));
  run.text() << "layers=" << layers.size() << '\n';
  return run.finish();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine equidistants, Wigner caustics and centre symmetry sets of planar curves",
               "caustic"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool curve_required) {
    auto* c = sub->add_option("--curve", o.curve, "curve spec (JSON)");
    if (curve_required) c->required();
    sub->add_option("--n", o.n, "sampling density")->capture_default_str();
    sub->add_option("--out", o.out, "output file");
    sub->add_flag("--json", o.json, "print a JSON run report");
    return sub;
  };
  auto lambda = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--lambda", o.lambda, "equidistant ratio");
    if (required) opt->required();
  };

  std::map<CLI::App*, std::function<int(Run&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, bool curve_required,
                 std::function<int(Run&)> fn) {
    CLI::App* sub = common(app.add_subcommand(name, help), curve_required);
    handlers[sub] = std::move(fn);
    return sub;
  };

  add("sample", "sample the curve", true, [&](Run& r) { return cmd_sample(r, o); });
  lambda(add("equidist", "affine lambda-equidistant", true,
             [&](Run& r) { return cmd_set(r, o, SetKind::equidistant); }),
         true);
  add("wigner", "Wigner caustic", true, [&](Run& r) { return cmd_set(r, o, SetKind::wigner); });
  add("css", "centre symmetry set", true, [&](Run& r) { return cmd_set(r, o, SetKind::css); });
  lambda(add("cusps", "cusps of E_lambda", true, [&](Run& r) { return cmd_cusps(r, o); }), true);
  lambda(add("parity", "cusp parity check", true, [&](Run& r) { return cmd_parity(r, o); }), true);
  add("spectrum", "singular lambda spectrum", true, [&](Run& r) { return cmd_spectrum(r, o); });
  lambda(add("inflexions", "inflexion points of E_lambda", true,
             [&](Run& r) { return cmd_inflexions(r, o); }),
         true);
  add("loops", "loops of the curve", true, [&](Run& r) { return cmd_loops(r, o); })
      ->add_flag("--both", o.both, "report both complements of a self-intersection");
  {
    auto* sub = add("windows", "guaranteed lambda windows for two arcs", true,
                    [&](Run& r) { return cmd_windows(r, o); });
    sub->add_option("--mode", o.mode, "window mode")->required();
    sub->add_option("--split", o.split, "s0,s1")->required();
    sub->add_option("--arc1", o.arc1, "u0,u1 (second arc)");
  }
  {
    auto* sub = add("compose-check", "verify the composition law", true,
                    [&](Run& r) { return cmd_compose(r, o); });
    lambda(sub, true);
    sub->add_option("--delta", o.delta, "outer ratio")->required();
    sub->add_option("--tol", o.tol, "Hausdorff tolerance");
  }
  {
    auto* sub = add("css-check", "verify CSS invariance", true,
                    [&](Run& r) { return cmd_css_check(r, o); });
    lambda(sub, true);
    sub->add_option("--delta", o.delta, "second ratio")->required();
    sub->add_option("--tol", o.tol, "Hausdorff tolerance");
  }
  {
    auto* sub = add("reconstruct", "recover the curve from E_lambda", true,
                    [&](Run& r) { return cmd_reconstruct(r, o); });
    lambda(sub, true);
    sub->add_option("--tol", o.tol, "Hausdorff tolerance");
    sub->add_option("--excision", o.excision, "vertices dropped around each cusp")->capture_default_str();
  }
  add("render", "render CSV sets (and the curve, dashed) to SVG", false,
      [&](Run& r) { return cmd_render(r, o); })
      ->add_option("--in", o.inputs, "file[,file...]");

  std::vector<const char*> argv{"caustic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "caustic: " << e.what() << '\n' << app.help();
    return kExitInput;
  }

  for (auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    Run run(sub->get_name(), o, out);
    try {
      return fn(run);
    } catch (const Error& e) {
      err << "caustic " << sub->get_name() << ": " << e.what() << '\n';
      switch (e.kind()) {
        case ErrorKind::input: return kExitInput;
        case ErrorKind::numeric: return kExitNumeric;
        case ErrorKind::verification: return kExitVerification;
      }
    } catch (const std::exception& e) {
      err << "caustic " << sub->get_name() << ": " << e.what() << '\n';
      return kExitNumeric;
    }
  }
  err << app.help();
  return kExitInput;
}

}  // namespace caustic
