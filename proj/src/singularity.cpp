#include "caustic/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "caustic/error.hpp"

namespace caustic {

namespace {

std::vector<SingularEvent> cusp_like(const EquidistantSet& set) {
  std::vector<SingularEvent> out;
  for (const auto& e : set.events)
    if (e.kind == EventKind::cusp || e.kind == EventKind::degenerate) out.push_back(e);
  return out;
}

double lambda_star(const ParallelPair& p) {
  const double ka = p.a.kappa;
  return ka / (ka + frame_kappa_b(p.a, p.b));
}

// Golden-section search for the extreme of g over s_a in [p0.s_a, p2.s_a].
std::optional<double> golden_extreme(const SampledCurve& sc, const ParallelPair& p0,
                                     const ParallelPair& p2, bool maximize) {
  const double gr = (std::sqrt(5.0) - 1) / 2;
  auto eval = [&](double s) -> std::optional<double> {
    const double u = (s - p0.s_a) / (p2.s_a - p0.s_a);
    auto pr = refine_partner(sc, s, p0.s_b + u * (p2.s_b - p0.s_b));
    if (!pr) return std::nullopt;
    const double v = lambda_star(*pr);
    return maximize ? -v : v;
  };
  double a = p0.s_a, b = p2.s_a;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  auto fc = eval(c), fd = eval(d);
  for (int it = 0; it < 80 && fc && fd && b - a > 1e-14 * sc.period(); ++it) {
    if (*fc < *fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = eval(d);
    }
  }
  if (!fc || !fd) return std::nullopt;
  const double v = std::min(*fc, *fd);
  return maximize ? -v : v;
}

}  // namespace

std::vector<SingularEvent> cusp_events(const SampledCurve& sc, double lambda) {
  return cusp_events(sc, pair_families(sc), lambda);
}

std::vector<SingularEvent> cusp_events(const SampledCurve& sc,
                                       const std::vector<PairFamily>& families, double lambda) {
  if (lambda == 0.0 || lambda == 1.0) throw InputError("cusp detection needs lambda other than 0 and 1");
  return cusp_like(equidistant(sc, families, lambda));
}

std::vector<SingularEvent> css_cusp_events(const SampledCurve& sc,
                                           const std::vector<PairFamily>& families) {
  return cusp_like(css(sc, families));
}

ParityReport parity_report(const SampledCurve& sc, double lambda) {
  return parity_report(sc, pair_families(sc), lambda);
}

ParityReport parity_report(const SampledCurve& sc, const std::vector<PairFamily>& families,
                           double lambda) {
  if (lambda == 0.0 || lambda == 1.0) throw InputError("parity needs lambda other than 0 and 1");
  ParityReport r;
  r.lambda = lambda;
  const EquidistantSet e = equidistant(sc, families, lambda);
  const EquidistantSet c = css(sc, families);
  r.count = static_cast<int>(e.count(EventKind::cusp));
  r.css_count = static_cast<int>(c.count(EventKind::cusp));
  r.degenerate = e.degenerate || e.count(EventKind::degenerate) > 0;
  const bool css_degenerate = c.degenerate || c.count(EventKind::degenerate) > 0;
  const bool wigner = lambda == 0.5;
  if (!r.degenerate) {
    r.parity = (r.count % 2 == (wigner ? 1 : 0)) ? Verdict::pass : Verdict::fail;
    if (wigner) r.minimum = r.count >= 3 ? Verdict::pass : Verdict::fail;
  }
  if (!css_degenerate) r.css_minimum = r.css_count >= 3 ? Verdict::pass : Verdict::fail;

  if (r.degenerate) {
    r.overall = Verdict::inconclusive;
  } else if (r.parity == Verdict::fail || (wigner && r.minimum == Verdict::fail) ||
             r.css_minimum == Verdict::fail) {
    r.overall = Verdict::fail;
  } else {
    r.overall = Verdict::pass;
  }
  return r;
}

std::string ParityReport::summary() const {
  std::ostringstream os;
  os << "count=" << count;
  if (degenerate) {
    os << " inconclusive (degenerate events)";
    return os.str();
  }
  const bool wigner = lambda == 0.5;
  os << (wigner ? " odd ≥3: " : " even: ");
  const bool ok = parity == Verdict::pass && (!wigner || minimum == Verdict::pass);
  os << (ok ? "pass" : "fail");
  return os.str();
}

std::vector<Check> ParityReport::checks() const {
  std::vector<Check> out;
  const bool wigner = lambda == 0.5;
  out.push_back({wigner ? "cusp_count_odd" : "cusp_count_even", parity, double(count),
                 wigner ? 1.0 : 0.0, "count mod 2"});
  if (wigner) out.push_back({"cusp_count_min3", minimum, double(count), 3.0, "count >= 3"});
  out.push_back({"css_cusp_count_min3", css_minimum, double(css_count), 3.0, "count >= 3"});
  return out;
}

std::vector<SingularEvent> inflexion_events(const SampledCurve& sc, double lambda) {
  if (lambda == 0.0 || lambda == 1.0)
    throw InputError("inflexion events need lambda other than 0 and 1");
  const double per = sc.period();
  std::vector<SingularEvent> out;
  for (double s : inflexion_parameters(*sc.spec)) {
    const Jet2 a = sc.jet_at(s);
    for (const auto& partner : parallel_partners(sc, s)) {
      if (partner.degenerate) continue;  // tangency at the partner: pair undefined
      const Jet2 b = sc.jet_at(partner.s);
      for (int side = 0; side < 2; ++side) {
        SingularEvent ev;
        ev.kind = EventKind::inflexion;
        ev.lambda = lambda;
        ev.s_a = positive_mod(side == 0 ? s : partner.s, per);
        ev.s_b = positive_mod(side == 0 ? partner.s : s, per);
        ev.location = side == 0 ? lambda * a.p + (1 - lambda) * b.p
                                : (1 - lambda) * a.p + lambda * b.p;
        ev.tangent = a.tangent;
        ev.residual = a.kappa;
        out.push_back(ev);
      }
    }
  }
  return out;
}

std::vector<SpectrumFamily> singular_lambda_spectrum(const SampledCurve& sc) {
  return singular_lambda_spectrum(sc, pair_families(sc));
}

std::vector<SpectrumFamily> singular_lambda_spectrum(const SampledCurve& sc,
                                                     const std::vector<PairFamily>& families) {
  std::vector<SpectrumFamily> out;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    SpectrumFamily sf;
    sf.family = static_cast<int>(f);
    sf.relation = fam.relation;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < fam.samples.size(); ++k) {
      const auto& p = fam.samples[k];
      if (std::abs(p.a.kappa + frame_kappa_b(p.a, p.b)) < 1e-10) {
        ++sf.skipped;
        continue;
      }
      sf.graph.push_back({p.s_a, p.s_b, lambda_star(p)});
      kept.push_back(k);
    }
    if (!sf.graph.empty()) {
      auto lo = std::min_element(sf.graph.begin(), sf.graph.end(),
                                 [](auto& x, auto& y) { return x.lambda_star < y.lambda_star; });
      auto hi = std::max_element(sf.graph.begin(), sf.graph.end(),
                                 [](auto& x, auto& y) { return x.lambda_star < y.lambda_star; });
      sf.lo = lo->lambda_star;
      sf.hi = hi->lambda_star;
      const std::size_t n = fam.samples.size();
      // Refine each extreme between its sample neighbours.
      for (int which = 0; which < 2; ++which) {
        const std::size_t k = kept[(which == 0 ? lo : hi) - sf.graph.begin()];
        const bool interior = k > 0 && k + 1 < n;
        if (!interior) continue;
        if (auto v = golden_extreme(sc, fam.samples[k - 1], fam.samples[k + 1], which == 1)) {
          if (which == 0) sf.lo = std::min(sf.lo, *v);
          else sf.hi = std::max(sf.hi, *v);
        }
      }
    }
    out.push_back(std::move(sf));
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace caustic
