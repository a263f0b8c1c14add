#pragma once

// CSV and SVG emission, run reports.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "caustic/singularity.hpp"

namespace caustic {

struct CsvRow {
  int branch = 0;
  double s_a = 0.0;
  double s_b = 0.0;
  double lambda = 0.0;
  double x = 0.0;
  double y = 0.0;
  double tangent_angle = 0.0;
  double kappa = 0.0;  // NaN at singular points
  EventKind event = EventKind::none;
};

inline constexpr const char* kCsvHeader = "branch,s_a,s_b,lambda,x,y,tangent_angle,kappa,event";

/// "%.12g", with "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v, int digits = 12);

std::vector<CsvRow> csv_rows(const EquidistantSet& set);
void write_csv(const EquidistantSet& set, std::ostream& os);
std::string csv_string(const EquidistantSet& set);
/// Throws InputError on a malformed document.
std::vector<CsvRow> parse_csv(std::istream& is);
std::vector<CsvRow> parse_csv_file(const std::string& path);

const char* event_token(EventKind kind);  // "-" for none
EventKind parse_event_token(const std::string& token);

struct SvgPath {
  std::vector<Vec2> points;
  bool closed = false;
};

struct SvgLayer {
  std::vector<SvgPath> paths;
  std::vector<Vec2> markers;  // drawn as small circles
  bool dashed = false;
  std::string stroke = "#000000";
  double width = 1.0;
};

SvgLayer curve_layer(const SampledCurve& sc, bool dashed = true, const std::string& stroke = "#555555");
/// One path per branch (closed branches closed), cusp markers.
SvgLayer set_layer(const EquidistantSet& set, const std::string& stroke = "#000000");
/// Branches and cusp markers read back from a CSV document.
SvgLayer csv_layer(const std::vector<CsvRow>& rows, const std::string& stroke = "#000000");

/// Deterministic SVG document with a viewBox fitted to all layers plus a 5%
/// margin. Throws InputError when there is nothing to draw.
std::string render_svg(const std::vector<SvgLayer>& layers, double width_px = 800.0);

/// Writes a file, throwing NumericError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex_digest(std::uint64_t h);

struct ReportInput {
  std::string name;
  std::string digest;
};

struct RunReport {
  std::string command;
  std::vector<ReportInput> inputs;
  std::vector<Check> checks;  // expected holds the tolerance or target
  std::vector<std::string> artifacts;
  std::string message;

  std::string to_json() const;
};

}  // namespace caustic
