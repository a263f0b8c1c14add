#pragma once

// Curve representations, analytic jets, sampling with a lifted tangent angle,
// rotation numbers, inflexions and loop extraction.
//
// Conventions used throughout the library:
//  * signed curvature is positive when the curve turns left relative to its
//    tangent under the stored orientation;
//  * kappa_prime is the derivative of curvature with respect to arc length;
//  * Fourier curves are parameterized over [0, 2*pi), polylines by vertex
//    index over [0, V).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caustic/geometry.hpp"

namespace caustic {

struct Harmonic {
  int k = 1;
  double a = 0.0;  // cosine coefficient
  double b = 0.0;  // sine coefficient
};

/// f(t) = c0 + sum_k a_k cos(k t) + b_k sin(k t).
struct FourierSeries {
  double c0 = 0.0;
  std::vector<Harmonic> harmonics;

  /// Derivative of the given order (0 = value).
  double eval(double t, int order = 0) const;
};

enum class CurveKind { support_fourier, param_fourier, polyline };
enum class Orientation { ccw, cw };

struct PolylineData;  // derived vertex jets of a polyline, see polyline.cpp

struct CurveSpec {
  CurveKind kind = CurveKind::support_fourier;
  FourierSeries support;    // support_fourier: h(theta)
  FourierSeries x, y;       // param_fourier
  std::vector<Vec2> points; // polyline, closed, without a repeated last vertex
  /// polyline: the curve is not smooth between vertex k and vertex k+1
  /// (typically a cusp); difference stencils never straddle a break.
  std::vector<int> breaks;
  /// polyline: vertices dropped on each side of a break.
  int excision = 2;
  Orientation orientation = Orientation::ccw;

  std::shared_ptr<const PolylineData> polyline_data;

  double period() const;
};

/// Builders validate the type invariants and throw InputError on violation.
CurveSpec make_support_curve(FourierSeries h, Orientation orientation = Orientation::ccw);
CurveSpec make_param_curve(FourierSeries x, FourierSeries y,
                           Orientation orientation = Orientation::ccw);
CurveSpec make_polyline_curve(std::vector<Vec2> points, std::vector<int> breaks = {},
                              int excision = 2, Orientation orientation = Orientation::ccw);

CurveSpec parse_curve_spec(std::string_view text);
CurveSpec load_curve_spec(const std::string& path);
std::string curve_spec_to_json(const CurveSpec& spec);

/// Same point set traversed the other way.
CurveSpec reversed(const CurveSpec& spec);

/// Pointwise 2-jet.
struct Jet2 {
  double t_param = 0.0;
  Vec2 p;
  Vec2 tangent;            // unit
  double kappa = 0.0;      // signed curvature
  double kappa_prime = 0.0;  // d kappa / ds
  double speed = 0.0;      // |d p / dt|
};

Jet2 evaluate_jet(const CurveSpec& spec, double t);

struct SampledCurve {
  std::shared_ptr<const CurveSpec> spec;
  std::vector<Jet2> jets;
  /// Lifted tangent angle; phi[N] is the angle of jets[0] after one traversal.
  std::vector<double> phi;
  /// Cumulative arc length; arclen[N] is the total length.
  std::vector<double> arclen;
  double rotation_number = 0.0;

  std::size_t size() const { return jets.size(); }
  double period() const { return spec->period(); }
  double param(std::size_t i) const { return jets[i].t_param; }
  Jet2 jet_at(double t) const { return evaluate_jet(*spec, t); }
  /// Tangent of sample i for i in [0, N]; index N is the closing tangent.
  Vec2 tangent(std::size_t i) const;
  /// Parameter of sample i for i in [0, N]; index N is param(0) + period.
  double unwrapped_param(std::size_t i) const;
  /// Largest parameter gap between consecutive samples.
  double max_step() const;
  double length() const { return arclen.back(); }
  double diameter() const;
  /// Index of the last sample with parameter <= t (t reduced modulo period).
  std::size_t locate(double t) const;
  /// Lifted tangent angle at an arbitrary parameter, continuous with phi.
  double phi_at(double t) const;
};

/// Samples n points at uniform parameter steps (polylines use their retained
/// vertices). Throws NumericError when the tangent angle cannot be lifted.
SampledCurve sample_curve(const CurveSpec& spec, int n);
SampledCurve sample_curve(std::shared_ptr<const CurveSpec> spec, int n);

double rotation_number(const SampledCurve& sc);

/// Zero crossings of the curvature, refined by bisection. Throws NumericError
/// when the curvature vanishes identically on an arc.
std::vector<double> inflexion_parameters(const CurveSpec& spec, int scan = 8192);

enum class LoopConvexity { convex_loop, nonconvex_loop };

struct LoopSegment {
  double s_start = 0.0;
  double s_end = 0.0;  // unwrapped, s_start < s_end < s_start + period
  Vec2 node;           // the self-intersection point
  double rotation = 0.0;
  LoopConvexity convexity = LoopConvexity::convex_loop;
};

struct SelfIntersection {
  double s = 0.0;
  double t = 0.0;  // s < t, both in [0, period)
  Vec2 point;
  bool transversal = true;
};

struct LoopOptions {
  /// When both arcs cut off by one self-intersection qualify as loops, report
  /// both instead of only the one with the smaller absolute rotation.
  bool both_complements = false;
};

std::vector<SelfIntersection> self_intersections(const SampledCurve& sc);
std::vector<LoopSegment> detect_loops(const SampledCurve& sc, const LoopOptions& options = {});

const char* to_string(CurveKind kind);
const char* to_string(LoopConvexity c);

}  // namespace caustic
