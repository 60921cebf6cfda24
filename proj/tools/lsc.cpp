// lsc: analyze transversal curves, reconstruct them from curvatures, generate
// critical orbits and run the verification suites.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "liesphere/critical_curves.hpp"
#include "liesphere/io.hpp"
#include "liesphere/suites.hpp"

using namespace liesphere;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGeometry = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  return out;
}

std::vector<std::string> frame_header() {
  std::vector<std::string> h{"s"};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) h.push_back("A" + std::to_string(i) + std::to_string(j));
  for (const char* v : {"x", "y"})
    for (int i = 0; i < 6; ++i) h.push_back(v + std::to_string(i));
  return h;
}

void write_frames(const std::string& path, const FramePath& F) {
  std::ofstream out = open_output(path);
  CsvWriter csv(out, frame_header());
  for (std::size_t k = 0; k < F.size(); ++k) {
    std::vector<double> row{F.t[k]};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) row.push_back(F.A[k](i, j));
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 6; ++i) row.push_back(F.A[k](i, c));
    csv.row(row);
  }
}

struct Options {
  std::string config;
  std::optional<double> tol_group, tol_algebra, tol_matrix;
  bool serial = false;
  std::string derivatives;

  std::string input, kappa, output, mode;
  int steps = 1000;
  double u = 1.0, v = 0.0, smax = 1.0;
  std::uint64_t seed = 1;
};

Config resolve_config(const Options& o) {
  Config cfg;
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv("LSC_CONFIG")) path = env;
  }
  if (!path.empty()) cfg = load_config_file(path, cfg);
  if (o.tol_group) cfg.tolerances.group = *o.tol_group;
  if (o.tol_algebra) cfg.tolerances.algebra = *o.tol_algebra;
  if (o.tol_matrix) cfg.tolerances.matrix_equal = *o.tol_matrix;
  if (o.serial) cfg.analyze.execution = Execution::Serial;
  if (o.derivatives == "auto") cfg.analyze.source = DerivativeSource::Auto;
  if (o.derivatives == "exact") cfg.analyze.source = DerivativeSource::Exact;
  if (o.derivatives == "stencil") cfg.analyze.source = DerivativeSource::Stencil;
  return cfg;
}

int cmd_analyze(const Options& o, const Config& cfg) {
  const CurveInput in = load_curve_file(o.input);
  const std::vector<double> grid =
      in.nodes.empty() ? uniform_grid(in.curve->t_min(), in.curve->t_max(), o.steps) : in.nodes;
  const InvariantProfile p = analyze(*in.curve, grid, cfg.analyze);
  std::ofstream out = open_output(o.output);
  CsvWriter csv(out, {"t", "s", "kappa1", "kappa2", "kappa3", "kappa4", "rho", "detP", "p2q2"});
  for (std::size_t k = 0; k < p.size(); ++k)
    csv.row({p.t[k], p.s[k], p.kappa[k][0], p.kappa[k][1], p.kappa[k][2], p.kappa[k][3], p.rho[k], p.det_p[k],
             p.p2q2[k]});
  return kExitOk;
}

int cmd_reconstruct(const Options& o, const Config&) {
  const CurvatureSpec spec = load_kappa_file(o.kappa);
  write_frames(o.output, integrate_frame(spec, GroupElement::identity(), o.steps));
  return kExitOk;
}

int cmd_critical(const Options& o, const Config&) {
  const CriticalParams p{o.u, o.v};
  try {
    validate_params(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, e.detail());
  }
  const CriticalOrbit orbit = critical_orbit(p, GroupElement::identity(), o.smax, o.steps);
  write_frames(o.output, orbit.frames);
  const Spectrum sp = spectrum(p);
  nlohmann::json side;
  side["u"] = p.u;
  side["v"] = p.v;
  side["eigenvalues"] = nlohmann::json::array();
  for (const auto& z : sp.eigenvalues) side["eigenvalues"].push_back({z.real(), z.imag()});
  side["purely_imaginary"] = sp.purely_imaginary;
  std::filesystem::path sidecar(o.output);
  sidecar.replace_extension(".spectrum.json");
  std::ofstream js = open_output(sidecar.string());
  js << side.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, const Config&) {
  SuiteReport rep;
  if (o.mode == "criticality") rep = run_criticality_suite();
  else if (o.mode == "roundtrip") rep = run_roundtrip_suite(o.seed);
  else if (o.mode == "invariance") rep = run_invariance_suite(o.seed, 20);
  else rep = run_cartan_suite();
  for (const auto& l : rep.lines) std::cout << l << '\n';
  std::cout << "verify " << o.mode << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
  return rep.pass ? kExitOk : kExitGeometry;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie sphere invariants of transversal curves"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON configuration (default: $LSC_CONFIG)");
  app.add_option("--tol-group", o.tol_group, "group membership tolerance");
  app.add_option("--tol-algebra", o.tol_algebra, "algebra membership tolerance");
  app.add_option("--tol-matrix", o.tol_matrix, "matrix equality tolerance");

  auto* an = app.add_subcommand("analyze", "canonical frame and curvatures of a curve");
  an->add_option("--input", o.input, "curve JSON")->required();
  an->add_option("--steps", o.steps, "grid steps for builtin curves")->check(CLI::Range(2, 10000000));
  an->add_option("--output", o.output, "profile CSV")->required();
  an->add_flag("--serial", o.serial, "run the serial kernel");
  an->add_option("--derivatives", o.derivatives, "auto, exact or stencil")
      ->check(CLI::IsMember({"auto", "exact", "stencil"}));

  auto* re = app.add_subcommand("reconstruct", "integrate the canonical frame from curvatures");
  re->add_option("--kappa", o.kappa, "curvature JSON")->required();
  re->add_option("--steps", o.steps, "integration steps")->check(CLI::Range(2, 10000000));
  re->add_option("--output", o.output, "frames CSV")->required();

  auto* cr = app.add_subcommand("critical", "critical orbit A exp(s X(u, v))");
  cr->add_option("--u", o.u, "kappa1, nonzero")->required();
  cr->add_option("--v", o.v, "kappa2");
  cr->add_option("--smax", o.smax, "arclength extent")->check(CLI::PositiveNumber);
  cr->add_option("--steps", o.steps, "number of steps (default 1000)")->check(CLI::Range(2, 10000000));
  cr->add_option("--output", o.output, "orbit CSV; the spectrum goes to <stem>.spectrum.json")->required();

  auto* ve = app.add_subcommand("verify", "run a verification suite");
  ve->add_option("--mode", o.mode, "criticality, roundtrip, invariance or cartan")
      ->required()
      ->check(CLI::IsMember({"criticality", "roundtrip", "invariance", "cartan"}));
  ve->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const Config cfg = resolve_config(o);
    set_default_tolerances(cfg.tolerances);
    if (an->parsed()) return cmd_analyze(o, cfg);
    if (re->parsed()) return cmd_reconstruct(o, cfg);
    if (cr->parsed()) return cmd_critical(o, cfg);
    return cmd_verify(o, cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return is_ladder_error(e.kind()) ? kExitGeometry : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
