#pragma once

#include <vector>

#include "caustic/curve.hpp"

namespace caustic {

/// Difference-stencil jet at a retained polyline vertex. Parameter is the
/// vertex index; the tangent is the continuous line-direction lift, so it may
/// point against the vertex order past a cusp (the curve is treated as a front).
struct PolylineVertex {
  int index = 0;
  Vec2 p;
  Vec2 pu;                 // d p / du
  double phi = 0.0;        // lifted tangent angle
  double phi_u = 0.0;      // d phi / du
  double kappa = 0.0;      // signed against the lifted tangent
  double kappa_prime = 0.0;
  double speed = 0.0;      // |pu|
};

struct PolylineData {
  int vertex_count = 0;
  std::vector<Vec2> points;              // all vertices, traversal order
  std::vector<PolylineVertex> retained;  // increasing index
  double phi_end = 0.0;  // lifted angle of retained[0] after one traversal
  double scale = 1.0;    // bounding-box diagonal
};

/// Points are in traversal order (orientation already applied).
PolylineData build_polyline_data(const std::vector<Vec2>& points, const std::vector<int>& breaks,
                                 int excision);

Jet2 polyline_jet(const PolylineData& data, double t);

/// Finite-difference weights for derivatives 0..max_order at x = 0, given the
/// node offsets (Fornberg's recursion). Result is indexed [order][node].
std::vector<std::vector<double>> fd_weights(const std::vector<double>& offsets, int max_order);

}  // namespace caustic
