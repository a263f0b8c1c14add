#include <algorithm>
#include <cmath>
#include <limits>

#include "caustic/error.hpp"
#include "polyline_data.hpp"

namespace caustic {

std::vector<std::vector<double>> fd_weights(const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<double>> out(m + 1, std::vector<double>(n + 1));
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= n; ++j) out[k][j] = c[j][k];
  return out;
}

namespace {

constexpr int kStencil = 5;

struct RawJet {
  Vec2 d1, d2, d3;
};

// Derivatives at vertex `run_start + j` using a five-point window inside the run.
RawJet stencil_jet(const std::vector<Vec2>& pts, int run_start, int run_len, int j, bool cyclic) {
  const int v = static_cast<int>(pts.size());
  const int w = cyclic ? j - 2 : std::clamp(j - 2, 0, run_len - kStencil);
  std::vector<double> offsets(kStencil);
  for (int q = 0; q < kStencil; ++q) offsets[q] = static_cast<double>(w + q - j);
  const auto wts = fd_weights(offsets, 3);
  RawJet r;
  for (int q = 0; q < kStencil; ++q) {
    const Vec2 p = pts[((run_start + w + q) % v + v) % v];
    r.d1 += wts[1][q] * p;
    r.d2 += wts[2][q] * p;
    r.d3 += wts[3][q] * p;
  }
  return r;
}

double hermite(double y0, double m0, double y1, double m1, double h, double u) {
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * m0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * h * m1;
}

double hermite_slope(double y0, double m0, double y1, double m1, double h, double u) {
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * y0 + (3 * u2 - 4 * u + 1) * h * m0 + (-6 * u2 + 6 * u) * y1 +
          (3 * u2 - 2 * u) * h * m1) /
         h;
}

}  // namespace

PolylineData build_polyline_data(const std::vector<Vec2>& pts, const std::vector<int>& breaks,
                                 int excision) {
  const int v = static_cast<int>(pts.size());
  PolylineData data;
  data.vertex_count = v;
  data.points = pts;

  Vec2 lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  data.scale = std::max(distance(lo, hi), std::numeric_limits<double>::min());

  struct Run {
    int start, len;
  };
  std::vector<Run> runs;
  const bool cyclic = breaks.empty();
  if (cyclic) {
    runs.push_back({0, v});
  } else {
    const int nb = static_cast<int>(breaks.size());
    for (int k = 0; k < nb; ++k) {
      const int b0 = breaks[k];
      const int b1 = breaks[(k + 1) % nb];
      const int len = nb == 1 ? v : ((b1 - b0) % v + v) % v;
      runs.push_back({(b0 + 1) % v, len});
    }
  }

  for (const auto& run : runs) {
    if (run.len < kStencil) throw InputError("polyline: fewer than 5 vertices between breaks");
    const int first = cyclic ? 0 : excision;
    const int last = cyclic ? run.len - 1 : run.len - 1 - excision;
    for (int j = first; j <= last; ++j) {
      const RawJet r = stencil_jet(pts, run.start, run.len, j, cyclic);
      PolylineVertex pv;
      pv.index = (run.start + j) % v;
      pv.p = pts[pv.index];
      pv.pu = r.d1;
      pv.speed = norm(r.d1);
      if (!(pv.speed > 1e-12 * data.scale))
        throw NumericError("polyline: stationary point at vertex " + std::to_string(pv.index));
      const double s = pv.speed, s3 = s * s * s;
      const double c12 = cross(r.d1, r.d2);
      pv.kappa = c12 / s3;  // against the vertex order for now
      pv.kappa_prime = (cross(r.d1, r.d3) / s3 - 3.0 * c12 * dot(r.d1, r.d2) / (s3 * s * s)) / s;
      pv.phi_u = pv.kappa * s;
      data.retained.push_back(pv);
    }
  }
  std::sort(data.retained.begin(), data.retained.end(),
            [](const PolylineVertex& a, const PolylineVertex& b) { return a.index < b.index; });

  // Front lift: the tangent line is continuous through cusps, so take the
  // representative of each line direction nearest to the previous angle.
  double prev = angle_of(data.retained.front().pu);
  for (auto& pv : data.retained) {
    const double alpha = angle_of(pv.pu);
    pv.phi = prev + wrap_half_turn(alpha - prev);
    prev = pv.phi;
    if (dot(pv.pu, unit_from_angle(pv.phi)) < 0.0) pv.kappa = -pv.kappa;
  }
  const double alpha0 = angle_of(data.retained.front().pu);
  data.phi_end = prev + wrap_half_turn(alpha0 - prev);
  return data;
}

Jet2 polyline_jet(const PolylineData& data, double t) {
  const double vc = data.vertex_count;
  const auto& rv = data.retained;
  const std::size_t n = rv.size();
  double tm = positive_mod(t, vc);

  std::size_t i;
  if (tm < rv.front().index) {
    i = n - 1;
    tm += vc;
  } else {
    auto it = std::upper_bound(rv.begin(), rv.end(), tm,
                               [](double x, const PolylineVertex& pv) { return x < pv.index; });
    i = static_cast<std::size_t>(std::distance(rv.begin(), it)) - 1;
  }
  const PolylineVertex& a = rv[i];
  if (tm == a.index) {
    return Jet2{tm, a.p, unit_from_angle(a.phi), a.kappa, a.kappa_prime, a.speed};
  }

  const bool seam = i + 1 == n;
  PolylineVertex b = rv[(i + 1) % n];
  double b_index = seam ? b.index + vc : b.index;
  if (seam) {
    // Bring the first vertex into the lift of the last one.
    const double shift = data.phi_end - b.phi;
    b.phi = data.phi_end;
    if (std::abs(wrap_angle(shift)) > kPi / 2) b.kappa = -b.kappa;
  }

  const double h = b_index - a.index;
  const double u = (tm - a.index) / h;
  Jet2 j;
  j.t_param = positive_mod(tm, vc);
  double phi;
  if (h <= 1.0 + 1e-12) {
    const double px = hermite(a.p.x, a.pu.x, b.p.x, b.pu.x, h, u);
    const double py = hermite(a.p.y, a.pu.y, b.p.y, b.pu.y, h, u);
    j.p = {px, py};
    j.speed = norm(Vec2{hermite_slope(a.p.x, a.pu.x, b.p.x, b.pu.x, h, u),
                        hermite_slope(a.p.y, a.pu.y, b.p.y, b.pu.y, h, u)});
    phi = hermite(a.phi, a.phi_u, b.phi, b.phi_u, h, u);
  } else {
    // Across an excised stretch: through the actual vertices.
    const double k = std::floor(tm);
    const Vec2 p0 = data.points[static_cast<std::size_t>(positive_mod(k, vc))];
    const Vec2 p1 = data.points[static_cast<std::size_t>(positive_mod(k + 1, vc))];
    j.p = lerp(p0, p1, tm - k);
    j.speed = (1 - u) * a.speed + u * b.speed;
    phi = (1 - u) * a.phi + u * b.phi;
  }
  j.tangent = unit_from_angle(phi);

  const double big = 10.0 / data.scale;
  if (std::abs(a.kappa) <= big && std::abs(b.kappa) <= big) {
    j.kappa = (1 - u) * a.kappa + u * b.kappa;
  } else {
    const double rho = (1 - u) / a.kappa + u / b.kappa;
    j.kappa = rho == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / rho;
  }
  j.kappa_prime = (1 - u) * a.kappa_prime + u * b.kappa_prime;
  return j;
}

}  // namespace caustic
