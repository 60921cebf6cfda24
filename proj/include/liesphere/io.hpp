#pragma once

// File formats of the command-line tool: curve and curvature JSON inputs, an
// optional tolerance configuration and CSV output.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liesphere/curve.hpp"
#include "liesphere/moving_frame.hpp"
#include "liesphere/reconstruction.hpp"

namespace liesphere {

struct CurveInput {
  CurvePtr curve;
  std::string name;  // builtin name or "samples"
  // Sample nodes for tabulated curves; empty for builtins.
  std::vector<double> nodes;
};

// {"kind": "samples", "samples": [{"t", "v", "xi", "dv", "dxi"}, ...]} or
// {"kind": "builtin", "builtin": {"name": ..., "params": {...}}}.
// Throws InvalidInput naming the offending field.
CurveInput parse_curve_json(const std::string& text);
CurveInput load_curve_file(const std::string& path);

// Builtins: critical_orbit (u, v, smax), perturbed_orbit (u, v, smax, eps,
// direction), great_circle, legendre_segment, rank_deficient_orbit,
// reversed_orbit, nongeneric_orbit (smax).
CurveInput make_builtin(const std::string& name, const std::vector<std::pair<std::string, double>>& params);
std::vector<std::string> builtin_names();

// {"interval": [0, S], "kind": "constants", "values": [k1, k2, k3, k4]} or
// {"interval": [0, S], "kind": "fourier", "period": P,
//  "coefficients": [{"a0": c, "a": [...], "b": [...]} x 4]}.
// Throws InvalidInput on schema errors and InvalidSpec on invariant violations.
CurvatureSpec parse_kappa_json(const std::string& text);
CurvatureSpec load_kappa_file(const std::string& path);

struct Config {
  Tolerances tolerances;
  AnalyzeOptions analyze;
};

// {"tolerances": {"group", "algebra", "matrix_equal"},
//  "analyze": {"execution": "serial"|"parallel", "derivatives": "auto"|"exact"|"stencil",
//              "stencil_half_width", "stencil_spacing"}}; every field optional.
Config parse_config_json(const std::string& text, Config base = {});
Config load_config_file(const std::string& path, Config base = {});

std::string read_text_file(const std::string& path);

// 17 significant digits in general notation, "." separator.
std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace liesphere
