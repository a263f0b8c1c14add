#pragma once

// Parallel pairs: points of one curve whose tangent lines are parallel.

#include <cstddef>
#include <optional>
#include <vector>

#include "caustic/curve.hpp"

namespace caustic {

enum class PairRelation { same_direction, opposite_direction };
enum class CurvedSide { same_side, different_side };

struct ParallelPair {
  double s_a = 0.0;
  double s_b = 0.0;  // unwrapped inside a family, so it varies continuously
  PairRelation relation = PairRelation::opposite_direction;
  Vec2 chord;        // b - a
  Jet2 a, b;
  bool degenerate = false;  // tangency: residual derivative below threshold at b
};

struct PairFamily {
  std::vector<ParallelPair> samples;  // ordered by increasing (unwrapped) s_a
  PairRelation relation = PairRelation::opposite_direction;
  /// The last sample continues into the first after s_a advances one period.
  bool cyclic = false;
  /// Change of s_b over one traversal of a cyclic family.
  double s_b_shift = 0.0;
};

struct Partner {
  double s = 0.0;  // in [0, period)
  PairRelation relation = PairRelation::opposite_direction;
  bool degenerate = false;
};

/// The opposite-direction family (theta, theta + pi) of a support-function curve.
PairFamily antipodal_pairs_convex(const CurveSpec& spec, int n);

/// All s' != s whose tangent line is parallel to the tangent line at s.
std::vector<Partner> parallel_partners(const SampledCurve& sc, double s);

/// Partners of every sample grouped into continuous families. Ordered-pair
/// duplicates (a, b) and (b, a) are kept.
std::vector<PairFamily> pair_families(const SampledCurve& sc);

/// Refines the partner of s_a closest to the guess. Returns nullopt when no
/// parallel tangent is found within a few sampling steps.
std::optional<ParallelPair> refine_partner(const SampledCurve& sc, double s_a, double s_b_guess);

ParallelPair make_pair(const Jet2& a, const Jet2& b, double s_b_unwrapped);

/// ds_b/ds_a in arc length along the family, equal to kappa(a)/kappa(b).
/// Nullopt when kappa(b) vanishes.
std::optional<double> matching_derivative(const SampledCurve& sc, const PairFamily& fam, double s);

/// kappa(b) re-signed in the frame of a: unchanged for opposite directions,
/// negated for same directions.
double frame_kappa_b(const Jet2& a, const Jet2& b);

std::optional<CurvedSide> curved_side(const Jet2& a, const Jet2& b);

const char* to_string(PairRelation r);
const char* to_string(CurvedSide c);

}  // namespace caustic
