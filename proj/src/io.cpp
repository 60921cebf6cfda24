#include "liesphere/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "liesphere/critical_curves.hpp"

namespace liesphere {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, field + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema(path, "must be finite");
  return x;
}

std::string string_value(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Vec4 vec4(const json& j, const std::string& path) {
  const std::vector<double> v = numbers(j, path);
  if (v.size() != 4) schema(path, "expected 4 numbers");
  return Vec4(v[0], v[1], v[2], v[3]);
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> builtin_names() {
  return {"critical_orbit", "perturbed_orbit", "great_circle", "legendre_segment",
          "rank_deficient_orbit", "reversed_orbit", "nongeneric_orbit"};
}

CurveInput make_builtin(const std::string& name, const std::vector<std::pair<std::string, double>>& params) {
  static const std::map<std::string, std::vector<std::string>> allowed = {
      {"critical_orbit", {"u", "v", "smax"}},
      {"perturbed_orbit", {"u", "v", "smax", "eps", "direction"}},
      {"great_circle", {}},
      {"legendre_segment", {}},
      {"rank_deficient_orbit", {"smax"}},
      {"reversed_orbit", {"smax"}},
      {"nongeneric_orbit", {"smax"}}};
  auto spec = allowed.find(name);
  if (spec == allowed.end()) schema("builtin.name", "unknown builtin '" + name + "'");
  std::map<std::string, double> p;
  for (const auto& [key, value] : params) {
    if (std::find(spec->second.begin(), spec->second.end(), key) == spec->second.end())
      schema("builtin.params." + key, "not a parameter of " + name);
    p[key] = value;
  }
  CurveInput in;
  in.name = name;
  const double smax = param(p, "smax", 1.0);
  if (!(smax > 0.0)) schema("builtin.params.smax", "must be positive");
  try {
    if (name == "critical_orbit") {
      in.curve = critical_orbit({param(p, "u", 1.0), param(p, "v", 0.0)}, GroupElement::identity(), smax, 2).curve;
    } else if (name == "perturbed_orbit") {
      const double dir = param(p, "direction", 14.0);
      if (dir != std::floor(dir)) schema("builtin.params.direction", "must be an integer");
      in.curve = perturbed_orbit({param(p, "u", 1.0), param(p, "v", 0.0)}, smax, param(p, "eps", 0.05),
                                 static_cast<int>(dir));
    } else if (name == "great_circle") {
      in.curve = great_circle_curve();
    } else if (name == "legendre_segment") {
      in.curve = legendre_segment_curve();
    } else if (name == "rank_deficient_orbit") {
      in.curve = rank_deficient_orbit(smax);
    } else if (name == "reversed_orbit") {
      in.curve = reversed_orbit(smax);
    } else {
      in.curve = nongeneric_orbit(smax);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidParams) schema("builtin.params", e.detail());
    throw;
  }
  return in;
}

CurveInput parse_curve_json(const std::string& text) {
  const json doc = parse_json(text);
  const std::string kind = string_value(field(doc, "kind", ""), "kind");
  if (kind == "builtin") {
    const json& b = field(doc, "builtin", "");
    const std::string name = string_value(field(b, "name", "builtin"), "builtin.name");
    std::vector<std::pair<std::string, double>> params;
    if (b.contains("params")) {
      const json& p = b["params"];
      if (!p.is_object()) schema("builtin.params", "expected an object");
      for (auto it = p.begin(); it != p.end(); ++it)
        params.emplace_back(it.key(), number(it.value(), "builtin.params." + it.key()));
    }
    return make_builtin(name, params);
  }
  if (kind != "samples") schema("kind", "expected \"samples\" or \"builtin\"");
  const json& arr = field(doc, "samples", "");
  if (!arr.is_array() || arr.size() < 2) schema("samples", "expected an array of at least 2 samples");
  std::vector<double> t;
  std::vector<CurveSample> samples;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "samples[" + std::to_string(i) + "]";
    const json& s = arr[i];
    CurveSample cs;
    const double ti = number(field(s, "t", path), path + ".t");
    cs.v = vec4(field(s, "v", path), path + ".v");
    cs.xi = vec4(field(s, "xi", path), path + ".xi");
    cs.dv = vec4(field(s, "dv", path), path + ".dv");
    cs.dxi = vec4(field(s, "dxi", path), path + ".dxi");
    if (!t.empty() && !(ti > t.back())) schema(path + ".t", "sample times must strictly increase");
    try {
      validate_sample(cs);
    } catch (const Error& e) {
      schema(path, e.detail());
    }
    t.push_back(ti);
    samples.push_back(cs);
  }
  CurveInput in;
  in.name = "samples";
  in.nodes = t;
  in.curve = std::make_shared<SampledCurve>(std::move(t), std::move(samples));
  return in;
}

CurveInput load_curve_file(const std::string& path) { return parse_curve_json(read_text_file(path)); }

CurvatureSpec parse_kappa_json(const std::string& text) {
  const json doc = parse_json(text);
  const std::vector<double> interval = numbers(field(doc, "interval", ""), "interval");
  if (interval.size() != 2) schema("interval", "expected [0, S]");
  if (interval[0] != 0.0) schema("interval", "must start at 0");
  if (!(interval[1] >= 0.0)) schema("interval", "S must be non-negative");
  const std::string kind = string_value(field(doc, "kind", ""), "kind");
  CurvatureSpec spec;
  if (kind == "constants") {
    const std::vector<double> v = numbers(field(doc, "values", ""), "values");
    if (v.size() != 4) schema("values", "expected 4 numbers");
    spec = CurvatureSpec::constants({v[0], v[1], v[2], v[3]}, interval[1]);
  } else if (kind == "fourier") {
    const double period = number(field(doc, "period", ""), "period");
    if (!(period > 0.0)) schema("period", "must be positive");
    const json& c = field(doc, "coefficients", "");
    if (!c.is_array() || c.size() != 4) schema("coefficients", "expected 4 coefficient tables");
    std::array<FourierSeries, 4> f;
    for (int i = 0; i < 4; ++i) {
      const std::string path = "coefficients[" + std::to_string(i) + "]";
      f[i].a0 = c[i].contains("a0") ? number(c[i]["a0"], path + ".a0") : 0.0;
      if (c[i].contains("a")) f[i].a = numbers(c[i]["a"], path + ".a");
      if (c[i].contains("b")) f[i].b = numbers(c[i]["b"], path + ".b");
      const std::size_t n = std::max(f[i].a.size(), f[i].b.size());
      f[i].a.resize(n, 0.0);
      f[i].b.resize(n, 0.0);
    }
    spec = CurvatureSpec::fourier(f, period, interval[1]);
  } else {
    schema("kind", "expected \"constants\" or \"fourier\"");
  }
  validate_spec(spec);
  return spec;
}

CurvatureSpec load_kappa_file(const std::string& path) { return parse_kappa_json(read_text_file(path)); }

Config parse_config_json(const std::string& text, Config cfg) {
  const json doc = parse_json(text);
  if (!doc.is_object()) schema("config", "expected an object");
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) schema("tolerances", "expected an object");
    auto set = [&](const char* key, double& target) {
      if (!t.contains(key)) return;
      const double x = number(t[key], std::string("tolerances.") + key);
      if (!(x > 0.0)) schema(std::string("tolerances.") + key, "must be positive");
      target = x;
    };
    set("group", cfg.tolerances.group);
    set("algebra", cfg.tolerances.algebra);
    set("matrix_equal", cfg.tolerances.matrix_equal);
  }
  if (doc.contains("analyze")) {
    const json& a = doc["analyze"];
    if (!a.is_object()) schema("analyze", "expected an object");
    if (a.contains("execution")) {
      const std::string e = string_value(a["execution"], "analyze.execution");
      if (e == "serial") cfg.analyze.execution = Execution::Serial;
      else if (e == "parallel") cfg.analyze.execution = Execution::Parallel;
      else schema("analyze.execution", "expected \"serial\" or \"parallel\"");
    }
    if (a.contains("derivatives")) {
      const std::string d = string_value(a["derivatives"], "analyze.derivatives");
      if (d == "auto") cfg.analyze.source = DerivativeSource::Auto;
      else if (d == "exact") cfg.analyze.source = DerivativeSource::Exact;
      else if (d == "stencil") cfg.analyze.source = DerivativeSource::Stencil;
      else schema("analyze.derivatives", "expected \"auto\", \"exact\" or \"stencil\"");
    }
    if (a.contains("stencil_half_width")) {
      const double w = number(a["stencil_half_width"], "analyze.stencil_half_width");
      if (w != std::floor(w) || w < 3 || w > 20) schema("analyze.stencil_half_width", "expected an integer in [3, 20]");
      cfg.analyze.stencil_half_width = static_cast<int>(w);
    }
    if (a.contains("stencil_spacing")) {
      const double s = number(a["stencil_spacing"], "analyze.stencil_spacing");
      if (!(s > 0.0)) schema("analyze.stencil_spacing", "must be positive");
      cfg.analyze.stencil_spacing = s;
    }
  }
  return cfg;
}

Config load_config_file(const std::string& path, Config base) {
  return parse_config_json(read_text_file(path), base);
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error(ErrorKind::InvalidParams, "CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

}  // namespace liesphere
