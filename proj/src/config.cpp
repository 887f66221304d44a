#include "mprates/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mprates {

namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
  const std::string p = join(path, key);
  if (!parent.contains(key)) throw ConfigError(p, "missing");
  if (!parent.at(key).is_object()) throw ConfigError(p, "expected an object");
  return parent.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

double require_number(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key)) throw ConfigError(join(path, key), "missing");
  return number(parent.at(key), join(path, key));
}

double optional_number(const json& parent, const std::string& key, const std::string& path,
                       double fallback) {
  return parent.contains(key) ? number(parent.at(key), join(path, key)) : fallback;
}

std::string string_value(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

void flatten(const json& v, const std::string& path, std::vector<double>& out) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.push_back(number(v, path));
  }
}

std::complex<double> complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) {
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
  }
  throw ConfigError(path, "expected a number or a [re, im] pair");
}

ResponseModel parse_model(const json& v, const std::string& path,
                          const std::filesystem::path& base_dir) {
  if (v.is_number() || v.is_array()) return ConstantComplex{complex_value(v, path)};
  if (!v.is_object()) throw ConfigError(path, "expected a model object or a constant");
  if (!v.contains("model")) throw ConfigError(join(path, "model"), "missing");
  const std::string model = lower(string_value(v.at("model"), join(path, "model")));
  ResponseModel out;
  if (model == "constant") {
    reject_unknown(v, path, {"model", "value"});
    if (!v.contains("value")) throw ConfigError(join(path, "value"), "missing");
    out = ConstantComplex{complex_value(v.at("value"), join(path, "value"))};
  } else if (model == "drude") {
    reject_unknown(v, path, {"model", "plasma_frequency", "damping"});
    out = DrudeMetal{require_number(v, "plasma_frequency", path),
                     require_number(v, "damping", path)};
  } else if (model == "lorentz") {
    reject_unknown(v, path, {"model", "resonance", "strength", "damping"});
    out = LorentzOscillator{require_number(v, "resonance", path),
                            require_number(v, "strength", path),
                            require_number(v, "damping", path)};
  } else if (model == "tabulated") {
    reject_unknown(v, path, {"model", "path"});
    if (!v.contains("path")) throw ConfigError(join(path, "path"), "missing");
    std::filesystem::path file = string_value(v.at("path"), join(path, "path"));
    if (file.is_relative()) file = base_dir / file;
    try {
      out = read_tabulated_file(file.string());
    } catch (const std::exception& e) {
      throw ConfigError(join(path, "path"), e.what());
    }
  } else {
    throw ConfigError(join(path, "model"),
                      "unknown model '" + model + "' (constant, drude, lorentz, tabulated)");
  }
  try {
    validate(out);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  return out;
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Free: return "free";
    case RunMode::Near: return "near";
    case RunMode::Far: return "far";
    case RunMode::Oracle: return "oracle";
    case RunMode::All: return "all";
  }
  return "?";
}

RunMode run_mode_from_string(std::string_view name) {
  const std::string n = lower(name);
  for (RunMode m : {RunMode::Free, RunMode::Near, RunMode::Far, RunMode::Oracle, RunMode::All}) {
    if (n == to_string(m)) return m;
  }
  throw InvalidArgument("unknown mode '" + std::string(name) + "' (free, near, far, oracle, all)");
}

OutputFormat output_format_from_string(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return OutputFormat::Csv;
  if (n == "json") return OutputFormat::Json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "' (csv, json)");
}

void RunConfig::validate() const {
  if (!(omega > 0) || !std::isfinite(omega)) throw ConfigError("transition.omega", "must be > 0");
  try {
    transition_moment();
  } catch (const std::exception& e) {
    throw ConfigError("transition.moment", e.what());
  }
  if (!(z_min > 0)) throw ConfigError("sweep.z_min", "must be > 0");
  if (!(z_max >= z_min)) throw ConfigError("sweep.z_max", "must be >= z_min");
  if (points < 1) throw ConfigError("sweep.points", "must be >= 1");
  if (!(near_max_qz > 0)) throw ConfigError("thresholds.near_max_qz", "must be > 0");
  if (!(far_min_qz > near_max_qz)) {
    throw ConfigError("thresholds.far_min_qz", "must be greater than near_max_qz");
  }
  try {
    quadrature.validate();
  } catch (const std::exception& e) {
    throw ConfigError("quadrature", e.what());
  }
  if (iso && is_magnetic(kind)) {
    throw ConfigError("iso",
                      "orientation averaging is not defined for magnetic transitions: a spin "
                      "has a fixed quantization axis");
  }
  try {
    mprates::validate(material.eps);
  } catch (const std::exception& e) {
    throw ConfigError("material.eps", e.what());
  }
  try {
    mprates::validate(material.mu);
  } catch (const std::exception& e) {
    throw ConfigError("material.mu", e.what());
  }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  reject_unknown(doc, "", {"transition", "material", "sweep", "mode", "iso", "output",
                           "thresholds", "quadrature", "units"});

  RunConfig cfg;
  const json& tr = require_object(doc, "transition", "");
  reject_unknown(tr, "transition", {"kind", "omega", "moment"});
  if (!tr.contains("kind")) throw ConfigError("transition.kind", "missing");
  try {
    cfg.kind = moment_kind_from_string(string_value(tr.at("kind"), "transition.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("transition.kind", e.what());
  }
  cfg.omega = require_number(tr, "omega", "transition");
  if (!tr.contains("moment")) throw ConfigError("transition.moment", "missing");
  flatten(tr.at("moment"), "transition.moment", cfg.moment);
  if (cfg.moment.size() != component_count(cfg.kind)) {
    throw ConfigError("transition.moment",
                      "expected " + std::to_string(component_count(cfg.kind)) +
                          " components for " + std::string(to_string(cfg.kind)) + ", got " +
                          std::to_string(cfg.moment.size()));
  }

  if (doc.contains("material")) {
    const json& mat = require_object(doc, "material", "");
    reject_unknown(mat, "material", {"eps", "mu"});
    if (mat.contains("eps")) cfg.material.eps = parse_model(mat.at("eps"), "material.eps", base_dir);
    if (mat.contains("mu")) cfg.material.mu = parse_model(mat.at("mu"), "material.mu", base_dir);
  }

  const json& sw = require_object(doc, "sweep", "");
  reject_unknown(sw, "sweep", {"z_min", "z_max", "points", "spacing"});
  cfg.z_min = require_number(sw, "z_min", "sweep");
  cfg.z_max = optional_number(sw, "z_max", "sweep", cfg.z_min);
  if (sw.contains("points")) cfg.points = integer(sw.at("points"), "sweep.points");
  if (sw.contains("spacing")) {
    const std::string s = lower(string_value(sw.at("spacing"), "sweep.spacing"));
    if (s == "log") cfg.spacing = Spacing::Log;
    else if (s == "linear") cfg.spacing = Spacing::Linear;
    else throw ConfigError("sweep.spacing", "expected 'linear' or 'log'");
  }

  if (doc.contains("mode")) {
    try {
      cfg.mode = run_mode_from_string(string_value(doc.at("mode"), "mode"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("mode", e.what());
    }
  }
  if (doc.contains("iso")) {
    if (!doc.at("iso").is_boolean()) throw ConfigError("iso", "expected true or false");
    cfg.iso = doc.at("iso").get<bool>();
  }
  if (doc.contains("output")) {
    const json& out = require_object(doc, "output", "");
    reject_unknown(out, "output", {"format", "path"});
    if (out.contains("format")) {
      try {
        cfg.format = output_format_from_string(string_value(out.at("format"), "output.format"));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError("output.format", e.what());
      }
    }
    if (out.contains("path")) cfg.output_path = string_value(out.at("path"), "output.path");
  }
  if (doc.contains("thresholds")) {
    const json& th = require_object(doc, "thresholds", "");
    reject_unknown(th, "thresholds", {"near_max_qz", "far_min_qz"});
    cfg.near_max_qz = optional_number(th, "near_max_qz", "thresholds", cfg.near_max_qz);
    cfg.far_min_qz = optional_number(th, "far_min_qz", "thresholds", cfg.far_min_qz);
  }
  if (doc.contains("quadrature")) {
    const json& q = require_object(doc, "quadrature", "");
    reject_unknown(q, "quadrature", {"rel_tol", "abs_tol", "k_max_window", "max_subdivisions"});
    auto& spec = cfg.quadrature;
    spec.rel_tol = optional_number(q, "rel_tol", "quadrature", spec.rel_tol);
    spec.abs_tol = optional_number(q, "abs_tol", "quadrature", spec.abs_tol);
    spec.k_max_window = optional_number(q, "k_max_window", "quadrature", spec.k_max_window);
    if (q.contains("max_subdivisions")) {
      spec.max_subdivisions = integer(q.at("max_subdivisions"), "quadrature.max_subdivisions");
    }
  }
  if (doc.contains("units")) {
    const std::string u = lower(string_value(doc.at("units"), "units"));
    if (u == "natural") cfg.natural_units = true;
    else if (u != "si") throw ConfigError("units", "expected 'si' or 'natural'");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<document>", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string config_reference() {
  return R"(Configuration keys (JSON; // comments allowed; unknown keys are errors):
  transition.kind          E1 | E2 | E3 | M1 | M2
  transition.omega         transition angular frequency (rad/s, or 1 in natural units)
  transition.moment        dense components, 3^rank numbers (flat or nested arrays)
  material.eps, material.mu
                           number | [re, im] | {"model": "constant", "value": ...}
                           | {"model": "drude", "plasma_frequency", "damping"}
                           | {"model": "lorentz", "resonance", "strength", "damping"}
                           | {"model": "tabulated", "path"}  (lines: omega re im)
                           both default to 1 (vacuum)
  sweep.z_min, sweep.z_max atom-surface distances (z_max defaults to z_min)
  sweep.points             number of heights (default 1)
  sweep.spacing            log | linear (default log)
  mode                     free | near | far | oracle | all (default all)
  iso                      orientation-average electric transitions (default false)
  output.format            csv | json (default csv)
  output.path              output file (default: standard output)
  thresholds.near_max_qz   largest qz for near-field rows in mode=all (default 0.01)
  thresholds.far_min_qz    smallest qz for far-field rows in mode=all (default 20)
  quadrature.rel_tol       oracle relative tolerance (default 1e-8)
  quadrature.abs_tol       oracle absolute tolerance in rate units (default 0)
  quadrature.k_max_window  evanescent cutoff W, k_max = q + W/(2z) (default 40)
  quadrature.max_subdivisions  oracle panel budget (default 2000)
  units                    si | natural (hbar = c = eps0 = mu0 = 1; default si)
)";
}

}  // namespace mprates
