#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <memory>
#include <sstream>
#include <tuple>

#include "caustic/algebra.hpp"
#include "caustic/cli.hpp"
#include "caustic/error.hpp"
#include "caustic/io.hpp"

namespace py = pybind11;
using namespace caustic;

namespace {

using Point = std::pair<double, double>;
using HarmonicTuple = std::tuple<int, double, double>;

Point pt(Vec2 v) { return {v.x, v.y}; }

std::vector<Point> pts(const std::vector<Vec2>& vs) {
  std::vector<Point> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(pt(v));
  return out;
}

std::vector<Vec2> vecs(const std::vector<Point>& ps) {
  std::vector<Vec2> out;
  out.reserve(ps.size());
  for (const auto& [x, y] : ps) out.push_back({x, y});
  return out;
}

FourierSeries series(double c0, const std::vector<HarmonicTuple>& hs) {
  FourierSeries f;
  f.c0 = c0;
  for (const auto& [k, a, b] : hs) f.harmonics.push_back({k, a, b});
  return f;
}

Orientation orientation(const std::string& s) {
  if (s == "ccw") return Orientation::ccw;
  if (s == "cw") return Orientation::cw;
  throw InputError("orientation must be 'ccw' or 'cw'");
}

using Spec = std::shared_ptr<CurveSpec>;
Spec share(CurveSpec c) { return std::make_shared<CurveSpec>(std::move(c)); }

EventKind event_kind(const std::string& s) { return parse_event_token(s); }

}  // namespace

PYBIND11_MODULE(_caustic, m) {
  m.doc() = "Affine equidistants, Wigner caustics and centre symmetry sets of planar curves";

  static py::exception<Error> base(m, "CausticError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NumericError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<CurveSpec, Spec>(m, "CurveSpec")
      .def_property_readonly("kind", [](const CurveSpec& c) { return std::string(to_string(c.kind)); })
      .def_property_readonly("period", &CurveSpec::period)
      .def("to_json", &curve_spec_to_json);

  m.def("parse_curve", [](const std::string& text) { return share(parse_curve_spec(text)); });
  m.def("load_curve", [](const std::string& path) { return share(load_curve_spec(path)); });
  m.def("support_curve",
        [](double c0, const std::vector<HarmonicTuple>& harmonics, const std::string& orient) {
          return share(make_support_curve(series(c0, harmonics), orientation(orient)));
        },
        py::arg("c0"), py::arg("harmonics") = std::vector<HarmonicTuple>{},
        py::arg("orientation") = "ccw",
        "h(theta) = c0 + sum a cos(k theta) + b sin(k theta); harmonics as (k, a, b).");
  m.def("param_curve",
        [](double x0, const std::vector<HarmonicTuple>& xh, double y0,
           const std::vector<HarmonicTuple>& yh, const std::string& orient) {
          return share(make_param_curve(series(x0, xh), series(y0, yh), orientation(orient)));
        },
        py::arg("x_c0"), py::arg("x_harmonics"), py::arg("y_c0"), py::arg("y_harmonics"),
        py::arg("orientation") = "ccw");
  m.def("polyline_curve",
        [](const std::vector<Point>& points, const std::vector<int>& breaks, int excision,
           const std::string& orient) {
          return share(make_polyline_curve(vecs(points), breaks, excision, orientation(orient)));
        },
        py::arg("points"), py::arg("breaks") = std::vector<int>{}, py::arg("excision") = 2,
        py::arg("orientation") = "ccw");

  py::class_<SampledCurve>(m, "SampledCurve")
      .def_property_readonly("size", &SampledCurve::size)
      .def_property_readonly("period", &SampledCurve::period)
      .def_property_readonly("length", &SampledCurve::length)
      .def_property_readonly("rotation_number", [](const SampledCurve& s) { return s.rotation_number; })
      .def_property_readonly("params", [](const SampledCurve& s) {
        std::vector<double> out;
        for (const auto& j : s.jets) out.push_back(j.t_param);
        return out;
      })
      .def_property_readonly("points", [](const SampledCurve& s) {
        std::vector<Point> out;
        for (const auto& j : s.jets) out.push_back(pt(j.p));
        return out;
      })
      .def_property_readonly("curvature", [](const SampledCurve& s) {
        std::vector<double> out;
        for (const auto& j : s.jets) out.push_back(j.kappa);
        return out;
      })
      .def("diameter", &SampledCurve::diameter)
      .def("point_at", [](const SampledCurve& s, double t) { return pt(s.jet_at(t).p); })
      .def("curvature_at", [](const SampledCurve& s, double t) { return s.jet_at(t).kappa; });

  m.def("sample", [](const Spec& spec, int n) { return sample_curve(spec, n); }, py::arg("curve"),
        py::arg("n") = 2048);

  py::class_<SingularEvent>(m, "SingularEvent")
      .def_property_readonly("kind", [](const SingularEvent& e) { return std::string(to_string(e.kind)); })
      .def_readonly("lambda_", &SingularEvent::lambda)
      .def_readonly("s_a", &SingularEvent::s_a)
      .def_readonly("s_b", &SingularEvent::s_b)
      .def_property_readonly("location", [](const SingularEvent& e) { return pt(e.location); })
      .def_readonly("residual", &SingularEvent::residual)
      .def("__repr__", [](const SingularEvent& e) {
        std::ostringstream os;
        os << "SingularEvent(" << to_string(e.kind) << ", s_a=" << e.s_a << ", s_b=" << e.s_b << ")";
        return os.str();
      });

  py::class_<EquidistantSet>(m, "EquidistantSet")
      .def_property_readonly("kind", [](const EquidistantSet& s) { return std::string(to_string(s.kind)); })
      .def_readonly("lambda_", &EquidistantSet::lambda)
      .def_readonly("events", &EquidistantSet::events)
      .def_readonly("rotation_number", &EquidistantSet::rotation_number)
      .def_readonly("degenerate", &EquidistantSet::degenerate)
      .def_property_readonly("points", [](const EquidistantSet& s) { return pts(s.points()); })
      .def_property_readonly("branches", [](const EquidistantSet& s) {
        std::vector<std::vector<Point>> out;
        for (const auto& b : s.branches) {
          out.emplace_back();
          for (const auto& q : b.points) out.back().push_back(pt(q.p));
        }
        return out;
      })
      .def("count", [](const EquidistantSet& s, const std::string& kind) {
        return s.count(event_kind(kind));
      })
      .def("to_csv", &csv_string);

  m.def("equidistant", py::overload_cast<const SampledCurve&, double>(&equidistant),
        py::arg("curve"), py::arg("lam"));
  m.def("wigner_caustic", py::overload_cast<const SampledCurve&>(&wigner_caustic));
  m.def("css", py::overload_cast<const SampledCurve&>(&css));
  m.def("cusp_events", py::overload_cast<const SampledCurve&, double>(&cusp_events),
        py::arg("curve"), py::arg("lam"));
  m.def("inflexion_events", &inflexion_events, py::arg("curve"), py::arg("lam"));
  m.def("equidistant_curvature",
        [](const SampledCurve& sc, double s_a, double s_b, double lam) {
          return equidistant_curvature(sc.jet_at(s_a), sc.jet_at(s_b), lam);
        },
        py::arg("curve"), py::arg("s_a"), py::arg("s_b"), py::arg("lam"));

  py::class_<ParityReport>(m, "ParityReport")
      .def_readonly("count", &ParityReport::count)
      .def_readonly("css_count", &ParityReport::css_count)
      .def_readonly("degenerate", &ParityReport::degenerate)
      .def_property_readonly("overall", [](const ParityReport& r) { return std::string(to_string(r.overall)); })
      .def("summary", &ParityReport::summary);
  m.def("parity_report", py::overload_cast<const SampledCurve&, double>(&parity_report),
        py::arg("curve"), py::arg("lam"));

  m.def("singular_lambda_spectrum", [](const SampledCurve& sc) {
    std::vector<std::tuple<int, double, double>> out;
    for (const auto& f : singular_lambda_spectrum(sc)) out.emplace_back(f.family, f.lo, f.hi);
    return out;
  }, "Per family: (family, min lambda*, max lambda*).");

  m.def("detect_loops", [](const SampledCurve& sc) {
    std::vector<std::tuple<double, double, double>> out;
    for (const auto& l : detect_loops(sc)) out.emplace_back(l.s_start, l.s_end, l.rotation);
    return out;
  }, "Loops as (s_start, s_end, rotation).");

  m.def("compose_lambda", &compose_lambda, py::arg("lam"), py::arg("delta"));
  m.def("reconstruction_lambda", &reconstruction_lambda, py::arg("lam"));
  m.def("hausdorff", [](const std::vector<Point>& a, const std::vector<Point>& b) {
    return hausdorff(vecs(a), vecs(b)).hausdorff;
  });

  py::class_<AlgebraReport>(m, "AlgebraReport")
      .def_property_readonly("passed", [](const AlgebraReport& r) { return r.check.verdict == Verdict::pass; })
      .def_property_readonly("hausdorff", [](const AlgebraReport& r) { return r.distance.hausdorff; })
      .def_readonly("tol", &AlgebraReport::tol);
  const double nan = std::nan("");
  m.def("verify_composition", &verify_composition, py::arg("curve"), py::arg("lam"),
        py::arg("delta"), py::arg("tol") = nan);
  m.def("verify_css_invariance", &verify_css_invariance, py::arg("curve"), py::arg("lam"),
        py::arg("delta"), py::arg("tol") = nan);
  m.def("verify_reconstruction", &verify_reconstruction, py::arg("curve"), py::arg("lam"),
        py::arg("tol") = nan);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  }, "Runs a caustic command; returns (exit code, stdout, stderr).");
}
