#include "caustic/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "caustic/error.hpp"

namespace caustic {

namespace {

constexpr double kTangencyThreshold = 1e-6;

struct RawPartner {
  double s = 0.0;  // [0, period)
  Jet2 jet;
  bool degenerate = false;
};

// Bisection on cross(t, tangent(x)) inside [lo, hi] where the residual changes
// sign. Rejects apparent roots that are jumps of the tangent (front seams).
std::optional<RawPartner> bisect_partner(const SampledCurve& sc, Vec2 t, double lo, double hi,
                                         double flo) {
  const double per = sc.period();
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * per; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = cross(t, sc.jet_at(mid).tangent);
    if (fm == 0.0) break;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
  }
  RawPartner r;
  r.s = positive_mod(mid, per);
  r.jet = sc.jet_at(r.s);
  if (std::abs(cross(t, r.jet.tangent)) > 1e-6) return std::nullopt;
  r.degenerate = std::abs(r.jet.kappa) * r.jet.speed < kTangencyThreshold;
  return r;
}

// Partner scan against the sample tangents; `self` is the sample index of s or -1.
std::vector<RawPartner> scan_partners(const SampledCurve& sc, const std::vector<Vec2>& tangents,
                                      double s, Vec2 t, long self) {
  const std::size_t n = sc.size();
  const double per = sc.period();
  std::vector<double> vals(n + 1);
  for (std::size_t j = 0; j <= n; ++j) vals[j] = cross(t, tangents[j]);

  std::vector<RawPartner> out;
  for (std::size_t j = 0; j < n; ++j) {
    const double pj = sc.unwrapped_param(j);
    const double pj1 = sc.unwrapped_param(j + 1);
    if (static_cast<long>(j) == self) continue;
    if (vals[j] == 0.0) {
      if (std::abs(cyclic_offset(pj, s, per)) <= 1e-12 * per) continue;
      RawPartner r;
      r.s = positive_mod(pj, per);
      r.jet = sc.jets[j];
      r.degenerate = std::abs(r.jet.kappa) * r.jet.speed < kTangencyThreshold;
      out.push_back(r);
      continue;
    }
    if (vals[j + 1] == 0.0 || (vals[j] > 0.0) == (vals[j + 1] > 0.0)) continue;
    if (positive_mod(s - pj, per) <= pj1 - pj) continue;  // the bracket of s itself
    if (auto r = bisect_partner(sc, t, pj, pj1, vals[j])) out.push_back(*r);
  }
  return out;
}

std::vector<Vec2> sample_tangents(const SampledCurve& sc) {
  std::vector<Vec2> t(sc.size() + 1);
  for (std::size_t j = 0; j <= sc.size(); ++j) t[j] = sc.tangent(j);
  return t;
}

PairRelation relation_of(Vec2 ta, Vec2 tb) {
  return dot(ta, tb) < 0.0 ? PairRelation::opposite_direction : PairRelation::same_direction;
}

struct Link {
  std::size_t i;  // sample index
  std::size_t k;  // partner index at that sample
  double s_b;     // unwrapped within the chain
};

}  // namespace

ParallelPair make_pair(const Jet2& a, const Jet2& b, double s_b_unwrapped) {
  ParallelPair p;
  p.s_a = a.t_param;
  p.s_b = s_b_unwrapped;
  p.relation = relation_of(a.tangent, b.tangent);
  p.chord = b.p - a.p;
  p.a = a;
  p.b = b;
  return p;
}

PairFamily antipodal_pairs_convex(const CurveSpec& spec, int n) {
  if (spec.kind != CurveKind::support_fourier)
    throw InputError("antipodal pairs need a support-function curve");
  if (n < 1) throw InputError("sample count must be positive");
  PairFamily fam;
  fam.relation = PairRelation::opposite_direction;
  fam.cyclic = true;
  fam.s_b_shift = kTwoPi;
  fam.samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * i / n;
    Jet2 a = evaluate_jet(spec, th);
    Jet2 b = evaluate_jet(spec, th + kPi);
    b.t_param = positive_mod(th + kPi, kTwoPi);
    fam.samples.push_back(make_pair(a, b, th + kPi));
  }
  return fam;
}

std::vector<Partner> parallel_partners(const SampledCurve& sc, double s) {
  const Jet2 a = sc.jet_at(s);
  const auto tangents = sample_tangents(sc);
  std::vector<Partner> out;
  for (const auto& r : scan_partners(sc, tangents, positive_mod(s, sc.period()), a.tangent, -1))
    out.push_back({r.s, relation_of(a.tangent, r.jet.tangent), r.degenerate});
  std::sort(out.begin(), out.end(), [](const Partner& x, const Partner& y) { return x.s < y.s; });
  return out;
}

namespace {

// Adds to each family the swaps (b, a) of pairs that fall inside it or just
// past an open end, so the family set is closed under exchanging the two
// points exactly rather than up to sampling. Swaps on an existing sample are
// dropped.
void close_under_swap(std::vector<PairFamily>& families, const SampledCurve& sc) {
  const double per = sc.period();
  const double dedupe = 1e-9 * sc.max_step();
  struct Slot {
    long fam = -1;
    double d = 0.0, sa = 0.0, sb = 0.0;
    bool dup = false;
  };
  std::vector<std::vector<ParallelPair>> extra(families.size());
  for (const auto& src : families) {
    for (const auto& q : src.samples) {
      const double sa = positive_mod(q.s_b, per);
      Slot best;
      // Linear model of family g through (a0, b0)-(a1, b1), valid for x in [lo, hi].
      auto consider = [&](std::size_t g, double a0, double b0, double a1, double b1, double lo,
                          double hi) {
        const double x = lo + positive_mod(sa - lo, per);
        if (x > hi) return;
        const double pred = b0 + (x - a0) / (a1 - a0) * (b1 - b0);
        const double d = std::abs(cyclic_offset(pred, q.s_a, per));
        if (d > 2.0 * std::abs(b1 - b0) + 1e-9 * per) return;
        if (best.fam != -1 && d >= best.d) return;
        best.fam = static_cast<long>(g);
        best.d = d;
        best.sa = x;
        best.sb = pred + cyclic_offset(pred, q.s_a, per);
        best.dup = std::min(std::abs(x - a0), std::abs(a1 - x)) <= dedupe;
      };
      for (std::size_t g = 0; g < families.size(); ++g) {
        const auto& s = families[g].samples;
        const std::size_t m = s.size();
        if (m < 2) continue;
        for (std::size_t j = 0; j + 1 < m; ++j)
          consider(g, s[j].s_a, s[j].s_b, s[j + 1].s_a, s[j + 1].s_b, s[j].s_a, s[j + 1].s_a);
        const ParallelPair& f = s.front();
        const ParallelPair& l = s.back();
        if (families[g].cyclic) {
          const double a1 = l.s_a + positive_mod(f.s_a - l.s_a, per);
          const double b1 = l.s_b + cyclic_offset(l.s_b, f.s_b, per);
          consider(g, l.s_a, l.s_b, a1, b1, l.s_a, a1);
        } else {
          const double h0 = s[1].s_a - f.s_a;
          const double h1 = l.s_a - s[m - 2].s_a;
          consider(g, f.s_a, f.s_b, s[1].s_a, s[1].s_b, f.s_a - h0, f.s_a);
          consider(g, s[m - 2].s_a, s[m - 2].s_b, l.s_a, l.s_b, l.s_a, l.s_a + h1);
        }
      }
      if (best.fam < 0 || best.dup) continue;
      ParallelPair p = make_pair(q.b, q.a, best.sb);
      p.s_a = best.sa;
      p.degenerate = std::abs(q.a.kappa) * q.a.speed < kTangencyThreshold;
      extra[best.fam].push_back(p);
    }
  }
  for (std::size_t g = 0; g < families.size(); ++g) {
    if (extra[g].empty()) continue;
    auto& s = families[g].samples;
    s.insert(s.end(), extra[g].begin(), extra[g].end());
    std::stable_sort(s.begin(), s.end(),
                     [](const ParallelPair& x, const ParallelPair& y) { return x.s_a < y.s_a; });
  }
}

}  // namespace

std::vector<PairFamily> pair_families(const SampledCurve& sc) {
  const std::size_t n = sc.size();
  const double per = sc.period();
  const auto tangents = sample_tangents(sc);

  std::vector<std::vector<RawPartner>> partners(n);
  for (std::size_t i = 0; i < n; ++i)
    partners[i] = scan_partners(sc, tangents, sc.param(i), tangents[i], static_cast<long>(i));

  auto rel = [&](std::size_t i, std::size_t k) {
    return relation_of(tangents[i], partners[i][k].jet.tangent);
  };
  auto step_to = [&](std::size_t i) {
    return i + 1 < n ? sc.param(i + 1) - sc.param(i) : sc.param(0) + per - sc.param(i);
  };
  auto tolerance = [&](double dt, double slope) {
    return std::min(per / 16.0, 4.0 * dt * std::max(1.0, std::abs(slope)));
  };
  // Nearest partner at sample `next` to the predicted s_b, within tolerance.
  auto best_candidate = [&](std::size_t next, double pred, double tol, PairRelation r,
                            const std::vector<std::vector<char>>* used) -> long {
    long best = -1;
    double best_d = tol;
    for (std::size_t k = 0; k < partners[next].size(); ++k) {
      if (used && (*used)[next][k]) continue;
      if (rel(next, k) != r) continue;
      const double d = std::abs(cyclic_offset(pred, partners[next][k].s, per));
      if (d <= best_d) {
        best_d = d;
        best = static_cast<long>(k);
      }
    }
    return best;
  };

  // ds_b/ds_a in parameter units from the matching condition dphi_a = dphi_b;
  // falls back to the last secant slope near a partner inflexion.
  auto local_slope = [&](std::size_t i, std::size_t k, double fallback) {
    const Jet2& a = sc.jets[i];
    const Jet2& b = partners[i][k].jet;
    const double den = b.kappa * b.speed;
    const double num = a.kappa * a.speed;
    if (!(std::abs(den) > 1e-12 * std::max(std::abs(num), 1e-300))) return fallback;
    return num / den;
  };

  std::vector<std::vector<char>> used(n);
  for (std::size_t i = 0; i < n; ++i) used[i].assign(partners[i].size(), 0);

  std::vector<std::vector<Link>> chains;
  std::vector<double> end_slope;
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    for (std::size_t k0 = 0; k0 < partners[i0].size(); ++k0) {
      if (used[i0][k0]) continue;
      used[i0][k0] = 1;
      const PairRelation r = rel(i0, k0);
      std::vector<Link> chain{{i0, k0, partners[i0][k0].s}};
      double slope = local_slope(i0, k0, 0.0);
      while (chain.back().i + 1 < n) {
        const std::size_t cur = chain.back().i;
        const double dt = step_to(cur);
        slope = local_slope(cur, chain.back().k, slope);
        const double pred = chain.back().s_b + slope * dt;
        const long k = best_candidate(cur + 1, pred, tolerance(dt, slope), r, &used);
        if (k < 0) break;
        const double sb = pred + cyclic_offset(pred, partners[cur + 1][k].s, per);
        slope = (sb - chain.back().s_b) / dt;
        used[cur + 1][k] = 1;
        chain.push_back({cur + 1, static_cast<std::size_t>(k), sb});
      }
      chains.push_back(std::move(chain));
      end_slope.push_back(slope);
    }
  }

  // Link chains that reach the last sample to chains starting at sample 0.
  std::map<std::size_t, std::size_t> start_at_zero;  // partner index -> chain
  for (std::size_t c = 0; c < chains.size(); ++c)
    if (chains[c].front().i == 0) start_at_zero[chains[c].front().k] = c;
  std::vector<long> succ(chains.size(), -1);
  std::vector<char> claimed(chains.size(), 0);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const Link& last = chains[c].back();
    if (last.i + 1 != n) continue;
    const double dt = step_to(last.i);
    const double pred = last.s_b + end_slope[c] * dt;
    const long k = best_candidate(0, pred, tolerance(dt, end_slope[c]),
                                  rel(last.i, last.k), nullptr);
    if (k < 0) continue;
    auto it = start_at_zero.find(static_cast<std::size_t>(k));
    if (it == start_at_zero.end() || claimed[it->second]) continue;
    claimed[it->second] = 1;
    succ[c] = static_cast<long>(it->second);
  }

  std::vector<PairFamily> families;
  std::vector<char> emitted(chains.size(), 0);
  auto emit = [&](std::size_t head, bool cyclic) {
    PairFamily fam;
    fam.cyclic = cyclic;
    fam.relation = rel(chains[head].front().i, chains[head].front().k);
    double lap = 0.0;
    double sb_offset = 0.0;
    long c = static_cast<long>(head);
    bool first_chain = true;
    while (c >= 0 && !emitted[c]) {
      emitted[c] = 1;
      if (!first_chain) {
        const double prev = fam.samples.back().s_b;
        const double first = chains[c].front().s_b;
        sb_offset = prev - first + cyclic_offset(prev, first, per);
        lap += per;
      }
      for (const Link& l : chains[c]) {
        const Jet2& a = sc.jets[l.i];
        ParallelPair p = make_pair(a, partners[l.i][l.k].jet, l.s_b + sb_offset);
        p.s_a = a.t_param + lap;
        p.degenerate = partners[l.i][l.k].degenerate;
        fam.samples.push_back(p);
      }
      first_chain = false;
      c = succ[c];
    }
    if (cyclic) {
      const double last = fam.samples.back().s_b;
      const double first = fam.samples.front().s_b;
      const double shift = last + cyclic_offset(last, first, per) - first;
      fam.s_b_shift = per * std::round(shift / per);
    }
    families.push_back(std::move(fam));
  };
  for (std::size_t c = 0; c < chains.size(); ++c)
    if (!claimed[c]) emit(c, false);
  for (std::size_t c = 0; c < chains.size(); ++c)
    if (!emitted[c]) emit(c, true);

  std::stable_sort(families.begin(), families.end(), [](const PairFamily& x, const PairFamily& y) {
    return x.samples.front().s_a < y.samples.front().s_a;
  });
  close_under_swap(families, sc);
  return families;
}

std::optional<ParallelPair> refine_partner(const SampledCurve& sc, double s_a, double s_b_guess) {
  const double per = sc.period();
  const Jet2 a = sc.jet_at(s_a);
  const double h = sc.max_step();
  for (double w = 0.5 * h; w <= 4.0 * h; w *= 2.0) {
    const double lo = s_b_guess - w, hi = s_b_guess + w;
    const double flo = cross(a.tangent, sc.jet_at(lo).tangent);
    const double fhi = cross(a.tangent, sc.jet_at(hi).tangent);
    if ((flo > 0.0) == (fhi > 0.0) && flo != 0.0 && fhi != 0.0) continue;
    std::optional<RawPartner> r;
    if (flo == 0.0) {
      r = RawPartner{positive_mod(lo, per), sc.jet_at(lo), false};
    } else if (fhi == 0.0) {
      r = RawPartner{positive_mod(hi, per), sc.jet_at(hi), false};
    } else {
      r = bisect_partner(sc, a.tangent, lo, hi, flo);
    }
    if (!r) continue;
    if (std::abs(cyclic_offset(r->s, s_a, per)) < 1e-9 * per) return std::nullopt;
    const double unwrapped = s_b_guess + cyclic_offset(s_b_guess, r->s, per);
    ParallelPair p = make_pair(a, r->jet, unwrapped);
    p.s_a = s_a;
    p.degenerate = std::abs(r->jet.kappa) * r->jet.speed < kTangencyThreshold;
    return p;
  }
  return std::nullopt;
}

std::optional<double> matching_derivative(const SampledCurve& sc, const PairFamily& fam, double s) {
  if (fam.samples.empty()) return std::nullopt;
  const double per = sc.period();
  const ParallelPair* nearest = &fam.samples.front();
  double best = per;
  for (const auto& p : fam.samples) {
    const double d = std::abs(cyclic_offset(p.s_a, s, per));
    if (d < best) {
      best = d;
      nearest = &p;
    }
  }
  const auto pair = refine_partner(sc, s, nearest->s_b);
  if (!pair || std::abs(pair->b.kappa) < 1e-12) return std::nullopt;
  return pair->a.kappa / pair->b.kappa;
}

double frame_kappa_b(const Jet2& a, const Jet2& b) {
  return dot(a.tangent, b.tangent) < 0.0 ? b.kappa : -b.kappa;
}

std::optional<CurvedSide> curved_side(const Jet2& a, const Jet2& b) {
  if (a.kappa == 0.0 || b.kappa == 0.0) return std::nullopt;
  // Centres of curvature offset along the left normal of a by 1/kappa_a and 1/kappa~_b.
  return a.kappa * frame_kappa_b(a, b) > 0.0 ? CurvedSide::different_side
                                             : CurvedSide::same_side;
}

const char* to_string(PairRelation r) {
  return r == PairRelation::opposite_direction ? "opposite_direction" : "same_direction";
}

const char* to_string(CurvedSide c) {
  return c == CurvedSide::same_side ? "same_side" : "different_side";
}

}  // namespace caustic
