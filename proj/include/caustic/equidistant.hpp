#pragma once

// Affine equidistants E_lambda, the Wigner caustic (lambda = 1/2) and the
// centre symmetry set, sampled along pair families.

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "caustic/parallel.hpp"

namespace caustic {

enum class SetKind { equidistant, wigner, css };
enum class EventKind { none, cusp, inflexion, endpoint, degenerate };

struct SingularEvent {
  EventKind kind = EventKind::cusp;
  double lambda = 0.0;  // NaN for centre symmetry set events
  double s_a = 0.0;     // reduced to [0, period)
  double s_b = 0.0;
  Vec2 location;
  Vec2 tangent;         // branch tangent direction at the event
  double residual = 0.0;
  int branch = -1;
  int family = -1;
};

struct EquidistantPoint {
  double lambda = 0.0;
  Vec2 p;
  ParallelPair source;
  Vec2 tangent_dir;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  bool regular = true;
  EventKind event = EventKind::none;
};

enum class Closure { open, same, swapped };

struct Branch {
  int family = -1;
  std::vector<EquidistantPoint> points;
  Closure closure = Closure::open;
  /// For closed branches: the pair that follows the last point, i.e. the first
  /// pair (same) or its swap (swapped), unwrapped to continue the last one.
  std::optional<ParallelPair> closing;
  Vec2 closing_tangent;
  double rotation = std::numeric_limits<double>::quiet_NaN();
};

struct EquidistantSet {
  SetKind kind = SetKind::equidistant;
  double lambda = 0.0;
  std::vector<Branch> branches;
  std::vector<SingularEvent> events;
  /// Set when the set has exactly one closed branch.
  double rotation_number = std::numeric_limits<double>::quiet_NaN();
  /// The whole set collapsed to a point, or an event is non-generic.
  bool degenerate = false;

  std::vector<Vec2> points() const;
  std::size_t count(EventKind kind) const;
};

EquidistantSet equidistant(const SampledCurve& sc, double lambda);
EquidistantSet equidistant(const SampledCurve& sc, const std::vector<PairFamily>& families,
                           double lambda);
EquidistantSet wigner_caustic(const SampledCurve& sc);
EquidistantSet wigner_caustic(const SampledCurve& sc, const std::vector<PairFamily>& families);
EquidistantSet css(const SampledCurve& sc);
EquidistantSet css(const SampledCurve& sc, const std::vector<PairFamily>& families);

/// kappa(a)|kappa~(b)| / |lambda kappa~(b) - (1 - lambda) kappa(a)|, with kappa~(b)
/// signed in the frame of a. Nullopt at singular points (denominator < 1e-12).
std::optional<double> equidistant_curvature(const Jet2& a, const Jet2& b, double lambda);

/// Curvature of the centre symmetry set at the chord point of (a, b). Nullopt
/// when kappa(a) + kappa~(b) or the derivative combination vanishes.
std::optional<double> css_curvature(const Jet2& a, const Jet2& b);

/// (kappa(a) a + kappa~(b) b) / (kappa(a) + kappa~(b)); nullopt when the sum vanishes.
std::optional<Vec2> css_point(const Jet2& a, const Jet2& b);

/// kappa~(b)^2 kappa'(a) - kappa(a)^2 kappa'(b); its sign changes locate CSS cusps.
double css_cusp_function(const Jet2& a, const Jet2& b);

/// Normal of M at a carried to the equidistant point (left normal of the tangent).
Vec2 equidistant_normal(const Jet2& a, double lambda);

/// Points of the set whose tangent is parallel to direction. Throws InputError
/// when direction is within 1e-6 of a singular-event tangent.
int tangent_parallel_count(const EquidistantSet& set, Vec2 direction);

const char* to_string(EventKind kind);
const char* to_string(SetKind kind);

}  // namespace caustic
