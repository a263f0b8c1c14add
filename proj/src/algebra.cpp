#include "caustic/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "caustic/error.hpp"

namespace caustic {

namespace {

// Uniform bucket grid over a point set for nearest-neighbour queries.
class Grid {
 public:
  explicit Grid(const std::vector<Vec2>& pts) : pts_(pts) {
    lo_ = hi_ = pts[0];
    for (const auto& p : pts) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
    const double extent = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
    const double per_side = std::max(1.0, std::ceil(std::sqrt(static_cast<double>(pts.size()))));
    cell_ = extent > 0.0 ? extent / per_side : 1.0;
    reach_ = static_cast<long long>(per_side) + 2;
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(cell_of(pts[i]))].push_back(i);
  }

  double nearest(Vec2 q) const {
    // Search rings around the projection of q onto the bounding box; every
    // point outside ring r is at least r cells from it, hence from q.
    const Vec2 qc{std::clamp(q.x, lo_.x, hi_.x), std::clamp(q.y, lo_.y, hi_.y)};
    const auto [cx, cy] = cell_of(qc);
    double best = std::numeric_limits<double>::infinity();
    for (long long r = 0; r <= reach_; ++r) {
      for (long long dx = -r; dx <= r; ++dx)
        for (long long dy = -r; dy <= r; ++dy) {
          if (std::max(std::llabs(dx), std::llabs(dy)) != r) continue;
          auto it = cells_.find(key({cx + dx, cy + dy}));
          if (it == cells_.end()) continue;
          for (std::size_t i : it->second) best = std::min(best, distance(q, pts_[i]));
        }
      if (best <= r * cell_) break;
    }
    return best;
  }

 private:
  std::pair<long long, long long> cell_of(Vec2 p) const {
    return {static_cast<long long>(std::floor((p.x - lo_.x) / cell_)),
            static_cast<long long>(std::floor((p.y - lo_.y) / cell_))};
  }
  static long long key(std::pair<long long, long long> c) { return c.first * 2000003LL + c.second; }

  const std::vector<Vec2>& pts_;
  Vec2 lo_, hi_;
  double cell_ = 1.0;
  long long reach_ = 0;
  std::unordered_map<long long, std::vector<std::size_t>> cells_;
};

double directed(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  const Grid grid(b);
  double worst = 0.0;
  for (const auto& p : a) worst = std::max(worst, grid.nearest(p));
  return worst;
}

void require_not_half(double lambda, const char* what) {
  if (lambda == 0.5) throw InputError(std::string(what) + ": lambda = 1/2 (the Wigner caustic) is excluded");
}

AlgebraReport finish(std::string name, const SetDistanceReport& d, double tol) {
  AlgebraReport r;
  r.distance = d;
  r.tol = tol;
  r.check.name = std::move(name);
  r.check.measured = d.hausdorff;
  r.check.expected = tol;
  r.check.verdict = d.hausdorff < tol ? Verdict::pass : Verdict::fail;
  std::ostringstream os;
  os << "hausdorff < " << tol;
  r.check.detail = os.str();
  return r;
}

SampledCurve ingest(const EquidistantSet& set) {
  // Polylines ignore the sampling density.
  return sample_curve(as_curve(set), 64);
}

}  // namespace

SetDistanceReport hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) throw InputError("hausdorff: empty point set");
  SetDistanceReport r;
  r.directed_ab = directed(a, b);
  r.directed_ba = directed(b, a);
  r.hausdorff = std::max(r.directed_ab, r.directed_ba);
  r.sample_counts = {a.size(), b.size()};
  return r;
}

double compose_lambda(double lambda, double delta) {
  require_not_half(lambda, "composition");
  return delta * (1 - lambda) + lambda * (1 - delta);
}

double reconstruction_lambda(double lambda) {
  require_not_half(lambda, "reconstruction");
  return -lambda / (1 - 2 * lambda);
}

CurveSpec as_curve(const EquidistantSet& set, int excision) {
  const Branch* closed = nullptr;
  for (const auto& b : set.branches) {
    if (!b.closing) continue;
    if (closed) throw InputError("re-ingestion needs a set with a single closed branch");
    closed = &b;
  }
  if (!closed || set.branches.size() != 1)
    throw InputError("re-ingestion needs a set with a single closed branch");

  std::vector<Vec2> pts;
  std::vector<int> breaks;
  double scale = 0.0;
  for (const auto& q : closed->points) scale = std::max(scale, norm(q.p - closed->points[0].p));
  const double dup = 1e-12 * std::max(scale, 1e-300);
  for (const auto& q : closed->points) {
    const bool singular = q.event == EventKind::cusp || q.event == EventKind::degenerate;
    if (singular) {
      if (!pts.empty()) breaks.push_back(static_cast<int>(pts.size()) - 1);
      else breaks.push_back(-1);
      continue;
    }
    if (!pts.empty() && distance(pts.back(), q.p) <= dup) continue;
    pts.push_back(q.p);
  }
  if (!pts.empty() && pts.size() > 1 && distance(pts.back(), pts.front()) <= dup) pts.pop_back();
  const int v = static_cast<int>(pts.size());
  for (int& b : breaks) b = b < 0 ? v - 1 : b;
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return make_polyline_curve(std::move(pts), std::move(breaks), excision);
}

EquidistantSet reconstruct(const EquidistantSet& equi, double lambda, int excision) {
  const double delta = reconstruction_lambda(lambda);
  return equidistant(sample_curve(as_curve(equi, excision), 64), delta);
}

double default_tolerance(const SampledCurve& sc) { return 5e-3 * sc.diameter(); }

AlgebraReport verify_composition(const SampledCurve& sc, double lambda, double delta, double tol) {
  const double big = compose_lambda(lambda, delta);
  if (std::isnan(tol)) tol = default_tolerance(sc);
  const auto families = pair_families(sc);
  const EquidistantSet lhs = equidistant(ingest(equidistant(sc, families, lambda)), delta);
  const EquidistantSet rhs = equidistant(sc, families, big);
  AlgebraReport r = finish("composition", hausdorff(lhs.points(), rhs.points()), tol);
  r.lambda = lambda;
  r.delta = delta;
  r.composed = big;
  return r;
}

AlgebraReport verify_css_invariance(const SampledCurve& sc, double lambda, double delta, double tol) {
  require_not_half(lambda, "css invariance");
  require_not_half(delta, "css invariance");
  if (std::isnan(tol)) tol = default_tolerance(sc);
  const auto families = pair_families(sc);
  const EquidistantSet a = css(ingest(equidistant(sc, families, lambda)));
  const EquidistantSet b =
      lambda == delta ? a : css(ingest(equidistant(sc, families, delta)));
  AlgebraReport r = finish("css_invariance", hausdorff(a.points(), b.points()), tol);
  r.lambda = lambda;
  r.delta = delta;
  return r;
}

AlgebraReport verify_reconstruction(const SampledCurve& sc, double lambda, double tol) {
  require_not_half(lambda, "reconstruction");
  if (std::isnan(tol)) tol = default_tolerance(sc);
  const EquidistantSet rec = reconstruct(equidistant(sc, lambda), lambda);
  std::vector<Vec2> curve;
  for (const auto& j : sc.jets) curve.push_back(j.p);
  AlgebraReport r = finish("reconstruction", hausdorff(rec.points(), curve), tol);
  r.lambda = lambda;
  r.delta = reconstruction_lambda(lambda);
  return r;
}

}  // namespace caustic
