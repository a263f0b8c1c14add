#pragma once

// Cusps and inflexions of equidistants, parity checks, the singular lambda
// spectrum, and guaranteed lambda windows for pairs of arcs.

#include <limits>
#include <string>
#include <vector>

#include "caustic/equidistant.hpp"

namespace caustic {

/// Cusp and degenerate (double-zero) events of E_lambda. lambda must not be 0 or 1.
std::vector<SingularEvent> cusp_events(const SampledCurve& sc, double lambda);
std::vector<SingularEvent> cusp_events(const SampledCurve& sc,
                                       const std::vector<PairFamily>& families, double lambda);

/// Sign changes of the CSS cusp function along the centre symmetry set.
std::vector<SingularEvent> css_cusp_events(const SampledCurve& sc,
                                           const std::vector<PairFamily>& families);

enum class Verdict { pass, fail, inconclusive };

struct Check {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double expected = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

struct ParityReport {
  double lambda = 0.0;
  int count = 0;
  int css_count = 0;
  bool degenerate = false;
  Verdict parity = Verdict::inconclusive;     // even for lambda != 1/2, odd for 1/2
  Verdict minimum = Verdict::inconclusive;    // at least 3 cusps (lambda = 1/2 only)
  Verdict css_minimum = Verdict::inconclusive;
  Verdict overall = Verdict::inconclusive;

  /// e.g. "count=3 odd >=3: pass"
  std::string summary() const;
  std::vector<Check> checks() const;
};

ParityReport parity_report(const SampledCurve& sc, double lambda);
ParityReport parity_report(const SampledCurve& sc, const std::vector<PairFamily>& families,
                           double lambda);

/// For each inflexion a of M and each partner b: the points lambda a + (1-lambda) b
/// and (1-lambda) a + lambda b.
std::vector<SingularEvent> inflexion_events(const SampledCurve& sc, double lambda);

struct SpectrumSample {
  double s_a = 0.0;
  double s_b = 0.0;
  double lambda_star = 0.0;
};

struct SpectrumFamily {
  int family = -1;
  PairRelation relation = PairRelation::opposite_direction;
  std::vector<SpectrumSample> graph;
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  int skipped = 0;  // samples with kappa(a) + kappa~(b) ~ 0
};

/// lambda*(s) = kappa(a) / (kappa(a) + kappa~(b)) along each family; range
/// extremes refined between samples.
std::vector<SpectrumFamily> singular_lambda_spectrum(const SampledCurve& sc);
std::vector<SpectrumFamily> singular_lambda_spectrum(const SampledCurve& sc,
                                                     const std::vector<PairFamily>& families);

// ---------------------------------------------------------------------------
// Existence windows

enum class WindowMode {
  curvature_ratio_diff_side,
  curvature_ratio_same_side,
  limiting_diff_side,
  limiting_same_side,
  parallelogram,
  tangent_cone,
  halfturn_pair,
};

/// Sub-arc of the curve over the parameter interval [s0, s1] (s0 < s1, unwrapped),
/// optionally translated.
struct Arc {
  double s0 = 0.0;
  double s1 = 0.0;
  Vec2 offset;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;
};

struct LambdaSet {
  std::vector<Interval> intervals;
  std::vector<double> values;

  bool empty() const { return intervals.empty() && values.empty(); }
  bool contains(double lambda, double tol = 0.0) const;
  /// Endpoints, midpoints and finite values to probe.
  std::vector<double> probes() const;
  std::string to_string() const;
};

struct ExistenceWindow {
  WindowMode mode = WindowMode::curvature_ratio_diff_side;
  Arc arc0, arc1;
  double rho_min = std::numeric_limits<double>::quiet_NaN();
  double rho_max = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  LambdaSet lambdas;
  bool assumptions_ok = false;
  std::vector<std::string> diagnostics;  // first entry names the violated condition
};

/// Endpoint conventions. Ratio and limiting modes: F0 runs from p0 (s0) to q0 (s1),
/// F1 from p1 (s0) to q1 (s1), with (p0, p1) and (q0, q1) parallel pairs.
/// Parallelogram, tangent-cone and half-turn modes: the common point p is the
/// start of F0 and the end of F1; q0 ends F0 and q1 starts F1.
ExistenceWindow existence_windows(const SampledCurve& sc, const Arc& arc0, const Arc& arc1,
                                  WindowMode mode);

/// Splits a loop into the two arcs of the parallelogram construction: F0 from
/// the node to the partner of the closing tangent, F1 from the partner of the
/// opening tangent back to the node.
std::pair<Arc, Arc> loop_parallelogram_arcs(const SampledCurve& sc, const LoopSegment& loop);

/// Arc traced by the partners of arc0's points near the guessed partner parameters.
Arc partner_arc(const SampledCurve& sc, const Arc& arc0, double guess0, double guess1);

struct ProbeResult {
  double lambda = 0.0;
  std::size_t events = 0;
};

struct ExistenceReport {
  std::vector<ProbeResult> probes;
  bool pass = false;
  bool vacuous = false;  // no pair between the arcs with the required curved side
  std::string message;
};

ExistenceReport verify_existence(const SampledCurve& sc, const ExistenceWindow& window);
ExistenceReport verify_existence(const SampledCurve& sc, const std::vector<PairFamily>& families,
                                 const ExistenceWindow& window);

/// Cusp and degenerate events of E_lambda generated by pairs with one point in
/// each arc (boundary pairs included).
std::vector<SingularEvent> arc_cusp_events(const SampledCurve& sc,
                                           const std::vector<PairFamily>& families,
                                           const Arc& arc0, const Arc& arc1, double lambda);

const char* to_string(Verdict v);
const char* to_string(WindowMode m);
std::optional<WindowMode> parse_window_mode(const std::string& name);

}  // namespace caustic
