#pragma once

// Composition of equidistants, reconstruction of the curve from one of its
// equidistants, and the centre symmetry set invariance, all checked through
// sampled set distances.

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "caustic/singularity.hpp"

namespace caustic {

struct SetDistanceReport {
  double hausdorff = 0.0;
  double directed_ab = 0.0;  // sup over A of the distance to B
  double directed_ba = 0.0;
  std::pair<std::size_t, std::size_t> sample_counts{0, 0};
};

/// Symmetric Hausdorff distance of two finite point sets. Throws InputError on
/// an empty set.
SetDistanceReport hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// E_delta(E_lambda(M)) = E_Lambda(M) with Lambda = delta(1-lambda) + lambda(1-delta).
/// Throws InputError for lambda = 1/2.
double compose_lambda(double lambda, double delta);

/// -lambda / (1 - 2 lambda): the ratio that maps E_lambda(M) back onto M.
double reconstruction_lambda(double lambda);

/// The single closed branch of a set as a polyline curve, broken at cusps and
/// with `excision` vertices dropped on each side of a break.
CurveSpec as_curve(const EquidistantSet& set, int excision = 2);

/// E_delta of the re-ingested set with delta = reconstruction_lambda(lambda).
EquidistantSet reconstruct(const EquidistantSet& equi, double lambda, int excision = 2);

struct AlgebraReport {
  Check check;
  SetDistanceReport distance;
  double lambda = 0.0;
  double delta = 0.0;
  double composed = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
};

/// Default tolerance: 5e-3 times the diameter of the curve.
double default_tolerance(const SampledCurve& sc);

/// Hausdorff(E_delta(E_lambda(M)), E_Lambda(M)) < tol. A NaN tol selects the default.
AlgebraReport verify_composition(const SampledCurve& sc, double lambda, double delta,
                                 double tol = std::numeric_limits<double>::quiet_NaN());

/// Hausdorff(CSS(E_lambda(M)), CSS(E_delta(M))) < tol, both sets re-ingested.
AlgebraReport verify_css_invariance(const SampledCurve& sc, double lambda, double delta,
                                    double tol = std::numeric_limits<double>::quiet_NaN());

/// Hausdorff(reconstruct(E_lambda(M), lambda), M) < tol.
AlgebraReport verify_reconstruction(const SampledCurve& sc, double lambda,
                                    double tol = std::numeric_limits<double>::quiet_NaN());

}  // namespace caustic
