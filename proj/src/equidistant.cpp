#include "caustic/equidistant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "caustic/error.hpp"

namespace caustic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCuspTol = 1e-9;
constexpr double kFlatSlope = 1e-6;

using PairFn = std::function<double(const ParallelPair&)>;

struct Run {
  int family = -1;
  std::vector<ParallelPair> pairs;
  Closure closure = Closure::open;
  std::optional<ParallelPair> closing;
  bool head_is_end = false;  // the family really ends at the first pair
  bool tail_is_end = false;
  std::optional<ParallelPair> succ;  // family pair after the last one, if any
};

bool canonical(const ParallelPair& p, double per) {
  double a = positive_mod(p.s_a, per);
  double b = positive_mod(p.s_b, per);
  if (a > per * (1 - 1e-9)) a -= per;
  if (b > per * (1 - 1e-9)) b -= per;
  return a < b;
}

ParallelPair continue_pair(const ParallelPair& last, const ParallelPair& first, bool swap,
                           double per) {
  const Jet2& ja = swap ? first.b : first.a;
  const Jet2& jb = swap ? first.a : first.b;
  const double sa = swap ? first.s_b : first.s_a;
  const double sb = swap ? first.s_a : first.s_b;
  ParallelPair p = make_pair(ja, jb, last.s_b + cyclic_offset(last.s_b, sb, per));
  p.s_a = last.s_a + cyclic_offset(last.s_a, sa, per);
  p.degenerate = first.degenerate;
  return p;
}

std::vector<Run> full_runs(const std::vector<PairFamily>& families, double per) {
  std::vector<Run> runs;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    if (fam.samples.empty()) continue;
    Run r;
    r.family = static_cast<int>(f);
    r.pairs = fam.samples;
    if (fam.cyclic) {
      r.closure = Closure::same;
      r.closing = continue_pair(r.pairs.back(), r.pairs.front(), false, per);
    } else {
      r.head_is_end = r.tail_is_end = true;
    }
    runs.push_back(std::move(r));
  }
  return runs;
}

ParallelPair swapped(const ParallelPair& q) {
  ParallelPair p = make_pair(q.b, q.a, q.s_a);
  p.s_a = q.s_b;
  p.degenerate = q.degenerate;
  return p;
}

// Joins canonical runs: where a run leaves the canonical half, its family
// continues as the swap of another run's first pair (or of its own, closing
// the branch). Appended runs alternate between swapped and plain orientation.
std::vector<Run> link_runs(std::vector<Run> runs, double per, double step) {
  const std::size_t n = runs.size();
  std::vector<long> next(n, -1), prev(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    if (!runs[r].succ) continue;
    const ParallelPair& q = *runs[r].succ;
    long best = -1;
    double best_d = 2 * step;
    for (std::size_t y = 0; y < n; ++y) {
      const ParallelPair& f = runs[y].pairs.front();
      const double d = std::max(std::abs(cyclic_offset(q.s_b, f.s_a, per)),
                                std::abs(cyclic_offset(q.s_a, f.s_b, per)));
      if (d < best_d && prev[y] < 0) {
        best_d = d;
        best = static_cast<long>(y);
      }
    }
    if (best >= 0) {
      next[r] = best;
      prev[best] = static_cast<long>(r);
    }
  }

  std::vector<Run> out;
  std::vector<char> done(n, 0);
  auto build = [&](std::size_t head) {
    Run run = runs[head];
    run.succ.reset();
    done[head] = 1;
    bool flipped = false;
    std::size_t cur = head;
    while (next[cur] >= 0 && !done[next[cur]]) {
      cur = static_cast<std::size_t>(next[cur]);
      done[cur] = 1;
      flipped = !flipped;
      for (const auto& q0 : runs[cur].pairs) {
        const ParallelPair q = flipped ? swapped(q0) : q0;
        const ParallelPair& last = run.pairs.back();
        ParallelPair p = make_pair(q.a, q.b, last.s_b + cyclic_offset(last.s_b, q.s_b, per));
        p.s_a = last.s_a + cyclic_offset(last.s_a, q.s_a, per);
        p.degenerate = q.degenerate;
        run.pairs.push_back(p);
      }
      run.tail_is_end = runs[cur].tail_is_end;
    }
    if (next[cur] == static_cast<long>(head)) {
      // In the orientation the last run was appended with, its continuation is
      // the head's first pair swapped (not flipped) or plain (flipped).
      run.closure = flipped ? Closure::same : Closure::swapped;
      run.closing = continue_pair(run.pairs.back(), runs[head].pairs.front(), !flipped, per);
    }
    out.push_back(std::move(run));
  };
  for (std::size_t r = 0; r < n; ++r)
    if (prev[r] < 0 && !runs[r].closing) build(r);
  for (std::size_t r = 0; r < n; ++r)
    if (!done[r]) build(r);
  return out;
}

// Runs of pairs with s_a < s_b, so that (a, b) and (b, a) are identified.
std::vector<Run> canonical_runs(const std::vector<PairFamily>& families, double per, double step) {
  std::vector<Run> runs;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& s = families[f].samples;
    const std::size_t len = s.size();
    if (len == 0) continue;
    std::vector<char> keep(len);
    for (std::size_t k = 0; k < len; ++k) keep[k] = canonical(s[k], per);
    const bool cyclic = families[f].cyclic;
    if (std::all_of(keep.begin(), keep.end(), [](char c) { return c; })) {
      auto all = full_runs({families[f]}, per);
      all.front().family = static_cast<int>(f);
      runs.push_back(std::move(all.front()));
      continue;
    }
    if (std::none_of(keep.begin(), keep.end(), [](char c) { return c; })) continue;
    std::size_t start = 0;
    if (cyclic) {
      while (!(keep[start] && !keep[(start + len - 1) % len])) ++start;
    }
    std::size_t k = 0;
    while (k < len) {
      const std::size_t i = (start + k) % len;
      if (!keep[i]) {
        ++k;
        continue;
      }
      Run r;
      r.family = static_cast<int>(f);
      std::size_t m = k;
      double lap = 0.0;
      while (m < len && keep[(start + m) % len]) {
        const std::size_t idx = (start + m) % len;
        ParallelPair p = s[idx];
        if (!r.pairs.empty() && p.s_a < r.pairs.back().s_a) {
          // Wrapped past the end of a cyclic family.
          lap = r.pairs.back().s_a - p.s_a + cyclic_offset(r.pairs.back().s_a, p.s_a, per);
        }
        if (lap != 0.0) {
          const double sb_prev = r.pairs.back().s_b;
          p.s_a += lap;
          p.s_b = sb_prev + cyclic_offset(sb_prev, p.s_b, per);
        }
        r.pairs.push_back(p);
        ++m;
      }
      const std::size_t first_idx = i;
      const std::size_t last_idx = (start + m - 1) % len;
      r.head_is_end = !cyclic && first_idx == 0;
      r.tail_is_end = !cyclic && last_idx == len - 1;
      if (cyclic || last_idx + 1 < len) r.succ = s[(last_idx + 1) % len];
      runs.push_back(std::move(r));
      k = m;
    }
  }
  return link_runs(std::move(runs), per, step);
}

double equidistant_value(const ParallelPair& p, double lambda) {
  return (1 - lambda) * p.a.kappa - lambda * frame_kappa_b(p.a, p.b);
}

struct Builder {
  const SampledCurve& sc;
  SetKind kind;
  double lambda;

  EquidistantPoint point(const ParallelPair& pr) const {
    EquidistantPoint q;
    q.lambda = lambda;
    q.source = pr;
    if (kind == SetKind::css) {
      q.p = css_point(pr.a, pr.b).value_or(Vec2{kNaN, kNaN});
      q.tangent_dir = normalized(pr.chord);
      const auto k = css_curvature(pr.a, pr.b);
      q.kappa = k.value_or(kNaN);
      q.regular = k.has_value();
    } else {
      q.p = lambda * pr.a.p + (1 - lambda) * pr.b.p;
      q.tangent_dir = pr.a.tangent;
      const auto k = equidistant_curvature(pr.a, pr.b, lambda);
      q.kappa = k.value_or(kNaN);
      q.regular = k.has_value();
    }
    return q;
  }

  // Bisection in s_a between two pairs of a branch, re-solving the partner each step.
  std::optional<ParallelPair> refine(const ParallelPair& p0, const ParallelPair& p1, double f0,
                                     const PairFn& f) const {
    double lo = p0.s_a, hi = p1.s_a;
    double flo = f0;
    std::optional<ParallelPair> best;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * sc.period(); ++it) {
      const double m = 0.5 * (lo + hi);
      const double u = (m - p0.s_a) / (p1.s_a - p0.s_a);
      auto pr = refine_partner(sc, m, p0.s_b + u * (p1.s_b - p0.s_b));
      if (!pr) return best;
      best = pr;
      const double fm = f(*pr);
      if (fm == 0.0) break;
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = m;
        flo = fm;
      } else {
        hi = m;
      }
    }
    return best;
  }

  // Golden-section minimum of |f| over s_a in [p0, p2], for double zeros.
  std::optional<std::pair<ParallelPair, double>> minimize(const ParallelPair& p0,
                                                          const ParallelPair& p2,
                                                          const PairFn& f) const {
    const double g = (std::sqrt(5.0) - 1) / 2;
    auto eval = [&](double s) -> std::optional<std::pair<ParallelPair, double>> {
      const double u = (s - p0.s_a) / (p2.s_a - p0.s_a);
      auto pr = refine_partner(sc, s, p0.s_b + u * (p2.s_b - p0.s_b));
      if (!pr) return std::nullopt;
      return std::make_pair(*pr, std::abs(f(*pr)));
    };
    double a = p0.s_a, b = p2.s_a;
    double c = b - g * (b - a), d = a + g * (b - a);
    auto fc = eval(c), fd = eval(d);
    for (int it = 0; it < 80 && fc && fd && b - a > 1e-14 * sc.period(); ++it) {
      if (fc->second < fd->second) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = eval(d);
      }
    }
    if (!fc || !fd) return std::nullopt;
    return fc->second < fd->second ? fc : fd;
  }
};

struct Found {
  std::size_t after = 0;  // inserted after this point index; npos marks an existing point
  std::size_t at = static_cast<std::size_t>(-1);
  ParallelPair pair;
  EventKind kind = EventKind::cusp;
  double residual = 0.0;
};

// Roots of f along a branch (exact zeros and strict sign changes, closure
// included), plus double zeros found as near-vanishing local minima of |f|.
void scan_branch(const Builder& bld, const Run& run, const PairFn& f, EventKind kind,
                 double accept_tol, bool detect_double, std::vector<Found>& out) {
  const auto& pr = run.pairs;
  const std::size_t m = pr.size();
  const bool closed = run.closing.has_value();
  std::vector<double> v(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) v[k] = f(pr[k]);
  if (closed) v[m] = f(*run.closing);
  auto pair_at = [&](std::size_t k) -> const ParallelPair& { return k < m ? pr[k] : *run.closing; };
  const std::size_t brackets = closed ? m : m - 1;

  double vmax = 0.0;
  for (std::size_t k = 0; k < m; ++k) vmax = std::max(vmax, std::abs(v[k]));
  if (detect_double && vmax <= accept_tol) {
    out.push_back({0, 0, pr[0], EventKind::degenerate, v[0]});
    return;
  }

  auto slope = [&](const ParallelPair& p0, const ParallelPair& p1, double f0, double f1) {
    const double ds = std::abs(p1.s_a - p0.s_a) * std::max(p0.a.speed, 1e-300);
    return ds > 0 ? std::abs(f1 - f0) / ds : 0.0;
  };

  for (std::size_t k = 0; k < m; ++k) {
    if (v[k] == 0.0) {
      Found fd;
      fd.at = k;
      fd.pair = pr[k];
      const std::size_t kp = k + 1 <= brackets ? k + 1 : k;
      const std::size_t km = k > 0 ? k - 1 : k;
      fd.kind = slope(pair_at(km), pair_at(kp), v[km], v[kp]) < kFlatSlope && detect_double
                    ? EventKind::degenerate
                    : kind;
      out.push_back(fd);
    }
  }
  for (std::size_t k = 0; k < brackets; ++k) {
    const double f0 = v[k], f1 = v[k + 1];
    if (f0 == 0.0 || f1 == 0.0 || (f0 > 0.0) == (f1 > 0.0)) continue;
    auto root = bld.refine(pair_at(k), pair_at(k + 1), f0, f);
    if (!root) continue;
    const double res = f(*root);
    if (!(std::abs(res) <= accept_tol)) continue;  // a pole, not a zero
    Found fd;
    fd.after = k;
    fd.pair = *root;
    fd.residual = res;
    // A root on a sample marks that sample instead of duplicating it.
    const double span = std::abs(pair_at(k + 1).s_a - pair_at(k).s_a);
    if (std::abs(root->s_a - pair_at(k).s_a) <= 1e-9 * span) {
      fd.at = k;
    } else if (std::abs(root->s_a - pair_at(k + 1).s_a) <= 1e-9 * span) {
      fd.at = k + 1 < m ? k + 1 : 0;
    }
    if (fd.at != static_cast<std::size_t>(-1)) fd.pair = pr[fd.at];
    fd.kind = detect_double && slope(pair_at(k), pair_at(k + 1), f0, f1) < kFlatSlope
                  ? EventKind::degenerate
                  : kind;
    out.push_back(fd);
  }
  if (!detect_double) return;
  for (std::size_t k = 0; k < m; ++k) {
    if (!closed && (k == 0 || k + 1 == m)) continue;
    const std::size_t km = k == 0 ? m - 1 : k - 1;
    const std::size_t kp = k + 1;  // index m is the closure value when closed
    if (v[k] == 0.0 || v[km] == 0.0 || v[kp] == 0.0) continue;
    if ((v[k] > 0) != (v[km] > 0) || (v[k] > 0) != (v[kp] > 0)) continue;
    if (std::abs(v[k]) > std::abs(v[km]) || std::abs(v[k]) > std::abs(v[kp])) continue;
    if (std::abs(v[k]) > 0.05 * vmax) continue;
    if (k == 0) continue;  // the wrapped neighbour is not on the same unwrapped sheet
    auto mn = bld.minimize(pr[km], pair_at(kp), f);
    if (!mn || mn->second > accept_tol) continue;
    Found fd;
    fd.after = mn->first.s_a < pr[k].s_a ? km : k;
    fd.pair = mn->first;
    fd.kind = EventKind::degenerate;
    fd.residual = mn->second;
    out.push_back(fd);
  }
}

Vec2 bbox_scale(const std::vector<Vec2>& pts, Vec2& mean) {
  Vec2 lo = pts.front(), hi = pts.front();
  mean = {};
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    mean += p;
  }
  mean = mean / static_cast<double>(pts.size());
  return hi - lo;
}

EquidistantSet assemble(const SampledCurve& sc, const std::vector<PairFamily>& families,
                        SetKind kind, double lambda) {
  const double per = sc.period();
  EquidistantSet set;
  set.kind = kind;
  set.lambda = kind == SetKind::css ? kNaN : lambda;
  const bool identify = kind != SetKind::equidistant;
  auto runs = identify ? canonical_runs(families, per, sc.max_step()) : full_runs(families, per);
  const Builder bld{sc, kind, lambda};

  // Centre symmetry collapses the Wigner caustic and the CSS to a point.
  if (identify) {
    std::vector<Vec2> pts;
    for (const auto& r : runs)
      for (const auto& p : r.pairs) pts.push_back(bld.point(p).p);
    if (!pts.empty()) {
      Vec2 mean;
      bbox_scale(pts, mean);
      double spread = 0.0;
      for (const auto& p : pts) spread = std::max(spread, distance(p, mean));
      Vec2 c0;
      const Vec2 ext = bbox_scale([&] {
        std::vector<Vec2> m;
        for (const auto& j : sc.jets) m.push_back(j.p);
        return m;
      }(), c0);
      if (spread <= 1e-8 * std::max(1.0, norm(ext))) {
        Branch b;
        EquidistantPoint q = bld.point(runs.front().pairs.front());
        q.p = mean;
        q.kappa = kNaN;
        q.regular = false;
        q.event = EventKind::degenerate;
        b.family = runs.front().family;
        b.points.push_back(q);
        set.branches.push_back(std::move(b));
        SingularEvent ev;
        ev.kind = EventKind::degenerate;
        ev.lambda = set.lambda;
        ev.s_a = positive_mod(q.source.s_a, per);
        ev.s_b = positive_mod(q.source.s_b, per);
        ev.location = mean;
        ev.tangent = q.tangent_dir;
        ev.residual = spread;
        ev.branch = 0;
        ev.family = b.family;
        set.events.push_back(ev);
        set.degenerate = true;
        return set;
      }
    }
  }

  // The centre symmetry set is undefined where kappa(a) + kappa~(b) vanishes: split there.
  if (kind == SetKind::css) {
    std::vector<Run> split;
    for (auto& r : runs) {
      bool gap = false;
      Run cur;
      cur.family = r.family;
      cur.head_is_end = r.head_is_end;
      for (const auto& p : r.pairs) {
        if (std::abs(p.a.kappa + frame_kappa_b(p.a, p.b)) < 1e-10) {
          gap = true;
          if (!cur.pairs.empty()) {
            cur.tail_is_end = true;
            split.push_back(std::move(cur));
          }
          cur = Run{};
          cur.family = r.family;
          cur.head_is_end = true;
          continue;
        }
        cur.pairs.push_back(p);
      }
      if (!gap) {
        split.push_back(std::move(r));
      } else if (!cur.pairs.empty()) {
        cur.tail_is_end = r.tail_is_end;
        split.push_back(std::move(cur));
      }
    }
    runs = std::move(split);
  }

  for (std::size_t bi = 0; bi < runs.size(); ++bi) {
    const Run& run = runs[bi];
    std::vector<Found> found;
    if (kind == SetKind::css) {
      double dmax = 0.0;
      for (const auto& p : run.pairs) dmax = std::max(dmax, std::abs(css_cusp_function(p.a, p.b)));
      scan_branch(bld, run, [](const ParallelPair& p) { return css_cusp_function(p.a, p.b); },
                  EventKind::cusp, 1e-8 * dmax, false, found);
    } else if (lambda != 0.0 && lambda != 1.0) {
      scan_branch(bld, run, [lambda](const ParallelPair& p) { return equidistant_value(p, lambda); },
                  EventKind::cusp, kCuspTol, true, found);
      scan_branch(bld, run, [](const ParallelPair& p) { return p.a.kappa; }, EventKind::inflexion,
                  kCuspTol, false, found);
      scan_branch(bld, run, [](const ParallelPair& p) { return frame_kappa_b(p.a, p.b); },
                  EventKind::inflexion, kCuspTol, false, found);
    }

    Branch br;
    br.family = run.family;
    br.closure = run.closing ? run.closure : Closure::open;
    br.closing = run.closing;
    std::vector<EquidistantPoint> pts;
    pts.reserve(run.pairs.size() + found.size());
    for (const auto& p : run.pairs) pts.push_back(bld.point(p));
    for (const auto& fd : found) {
      if (fd.at == static_cast<std::size_t>(-1)) continue;
      EquidistantPoint& q = pts[fd.at];
      q.event = fd.kind;
      if (q.event == EventKind::cusp || q.event == EventKind::degenerate) {
        q.kappa = kNaN;
        q.regular = false;
      }
    }
    std::vector<const Found*> inserts;
    for (const auto& fd : found)
      if (fd.at == static_cast<std::size_t>(-1)) inserts.push_back(&fd);
    std::sort(inserts.begin(), inserts.end(), [](const Found* x, const Found* y) {
      return x->after != y->after ? x->after < y->after : x->pair.s_a < y->pair.s_a;
    });
    std::size_t next = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      br.points.push_back(pts[k]);
      while (next < inserts.size() && inserts[next]->after == k) {
        EquidistantPoint q = bld.point(inserts[next]->pair);
        q.event = inserts[next]->kind;
        if (q.event == EventKind::cusp || q.event == EventKind::degenerate) {
          q.kappa = kNaN;
          q.regular = false;
        }
        br.points.push_back(q);
        ++next;
      }
    }
    if (run.head_is_end && br.points.front().event == EventKind::none)
      br.points.front().event = EventKind::endpoint;
    if (run.tail_is_end && br.points.back().event == EventKind::none)
      br.points.back().event = EventKind::endpoint;

    if (br.closing) {
      br.closing_tangent = bld.point(*br.closing).tangent_dir;
      double turn = 0.0;
      for (std::size_t k = 0; k + 1 < br.points.size(); ++k)
        turn += wrap_angle(angle_of(br.points[k + 1].tangent_dir) - angle_of(br.points[k].tangent_dir));
      turn += wrap_angle(angle_of(br.closing_tangent) - angle_of(br.points.back().tangent_dir));
      br.rotation = turn / kTwoPi;
    }

    const int branch_index = static_cast<int>(set.branches.size());
    for (const auto& q : br.points) {
      if (q.event == EventKind::none) continue;
      SingularEvent ev;
      ev.kind = q.event;
      ev.lambda = set.lambda;
      ev.s_a = positive_mod(q.source.s_a, per);
      ev.s_b = positive_mod(q.source.s_b, per);
      ev.location = q.p;
      ev.tangent = q.tangent_dir;
      ev.branch = branch_index;
      ev.family = br.family;
      for (const auto& fd : found)
        if (fd.pair.s_a == q.source.s_a && fd.kind == q.event) ev.residual = fd.residual;
      if (ev.kind == EventKind::degenerate) set.degenerate = true;
      set.events.push_back(ev);
    }
    set.branches.push_back(std::move(br));
  }

  std::size_t closed = 0;
  double rot = kNaN;
  for (const auto& b : set.branches)
    if (b.closing) {
      ++closed;
      rot = b.rotation;
    }
  if (closed == 1) set.rotation_number = rot;
  return set;
}

}  // namespace

std::vector<Vec2> EquidistantSet::points() const {
  std::vector<Vec2> out;
  for (const auto& b : branches)
    for (const auto& q : b.points) out.push_back(q.p);
  return out;
}

std::size_t EquidistantSet::count(EventKind k) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [k](const SingularEvent& e) { return e.kind == k; }));
}

EquidistantSet equidistant(const SampledCurve& sc, double lambda) {
  return equidistant(sc, pair_families(sc), lambda);
}

EquidistantSet equidistant(const SampledCurve& sc, const std::vector<PairFamily>& families,
                           double lambda) {
  if (!std::isfinite(lambda)) throw InputError("lambda must be finite");
  if (lambda == 0.5) return wigner_caustic(sc, families);
  return assemble(sc, families, SetKind::equidistant, lambda);
}

EquidistantSet wigner_caustic(const SampledCurve& sc) {
  return wigner_caustic(sc, pair_families(sc));
}

EquidistantSet wigner_caustic(const SampledCurve& sc, const std::vector<PairFamily>& families) {
  return assemble(sc, families, SetKind::wigner, 0.5);
}

EquidistantSet css(const SampledCurve& sc) { return css(sc, pair_families(sc)); }

EquidistantSet css(const SampledCurve& sc, const std::vector<PairFamily>& families) {
  return assemble(sc, families, SetKind::css, kNaN);
}

std::optional<double> equidistant_curvature(const Jet2& a, const Jet2& b, double lambda) {
  const double kb = frame_kappa_b(a, b);
  const double den = std::abs(lambda * kb - (1 - lambda) * a.kappa);
  if (!(den >= 1e-12)) return std::nullopt;
  return a.kappa * std::abs(kb) / den;
}

std::optional<Vec2> css_point(const Jet2& a, const Jet2& b) {
  const double ka = a.kappa, kb = frame_kappa_b(a, b);
  double w;
  if (std::isinf(ka) && std::isinf(kb)) return std::nullopt;
  if (std::isinf(ka)) {
    w = 0.0;
  } else if (std::isinf(kb)) {
    w = 1.0;
  } else {
    if (std::abs(ka + kb) < 1e-10) return std::nullopt;
    w = kb / (ka + kb);
  }
  return a.p + w * (b.p - a.p);
}

double css_cusp_function(const Jet2& a, const Jet2& b) {
  const double kb = frame_kappa_b(a, b);
  return kb * kb * a.kappa_prime - a.kappa * a.kappa * b.kappa_prime;
}

std::optional<double> css_curvature(const Jet2& a, const Jet2& b) {
  const double ka = a.kappa, kb = frame_kappa_b(a, b);
  const double sum = ka + kb;
  if (!(std::abs(sum) >= 1e-10)) return std::nullopt;
  const double den = std::abs(css_cusp_function(a, b));
  if (!(den >= 1e-12)) return std::nullopt;
  const Vec2 d = a.p - b.p;
  const double len = norm(d);
  if (len == 0.0) return std::nullopt;
  const double sg = kb > 0 ? 1.0 : (kb < 0 ? -1.0 : 0.0);
  return sg * sum * sum * sum / den * cross(d, a.tangent) / (len * len * len);
}

Vec2 equidistant_normal(const Jet2& a, double /*lambda*/) { return perp(a.tangent); }

int tangent_parallel_count(const EquidistantSet& set, Vec2 direction) {
  const double len = norm(direction);
  if (!(len > 0.0)) throw InputError("direction must be nonzero");
  const Vec2 d = direction / len;
  for (const auto& ev : set.events) {
    if (std::abs(cross(ev.tangent, d)) < 1e-6)
      throw InputError("direction is parallel to a singular-point tangent; perturb it slightly");
  }
  int count = 0;
  for (const auto& b : set.branches) {
    std::vector<double> v;
    for (const auto& q : b.points) v.push_back(cross(q.tangent_dir, d));
    if (b.closing) v.push_back(cross(b.closing_tangent, d));
    const std::size_t samples = b.points.size();
    for (std::size_t k = 0; k < samples; ++k) {
      if (v[k] == 0.0) {
        ++count;
        continue;
      }
      if (k + 1 < v.size() && v[k + 1] != 0.0 && (v[k] > 0) != (v[k + 1] > 0)) ++count;
    }
  }
  return count;
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::none: return "-";
    case EventKind::cusp: return "cusp";
    case EventKind::inflexion: return "inflexion";
    case EventKind::endpoint: return "endpoint";
    case EventKind::degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::equidistant: return "equidistant";
    case SetKind::wigner: return "wigner";
    case SetKind::css: return "css";
  }
  return "?";
}

}  // namespace caustic
