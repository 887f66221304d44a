#include "mprates/runner.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mprates/oracle.hpp"

namespace mprates {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<RunMode> expand(RunMode mode) {
  if (mode == RunMode::All) return {RunMode::Free, RunMode::Near, RunMode::Far, RunMode::Oracle};
  return {mode};
}

Regime regime_of(RunMode mode) {
  switch (mode) {
    case RunMode::Near: return Regime::NearFieldClosedForm;
    case RunMode::Far: return Regime::FarFieldClosedForm;
    case RunMode::Oracle: return Regime::OracleExact;
    default: return Regime::FreeSpace;
  }
}

struct Task {
  double z;
  RunMode mode;
};

}  // namespace

RunResult run(const RunConfig& config, Execution exec) {
  config.validate();
  const PhysicalConstants k = config.constants();
  const MultipoleMoment moment = config.transition_moment();
  const Frequency freq = Frequency::from_omega(config.omega, k);
  cdouble eps, mu;
  try {
    std::tie(eps, mu) = config.material.eval(config.omega);
  } catch (const std::exception& e) {
    throw ConfigError("material", e.what());
  }
  const bool closed_forms = config.mode == RunMode::Near || config.mode == RunMode::Far ||
                            config.mode == RunMode::All;
  if (closed_forms && eps != cdouble(1.0) && mu != cdouble(1.0)) {
    throw ConfigError("material",
                      "closed forms need a purely electric (mu = 1) or purely magnetic "
                      "(eps = 1) surface; use mode = oracle");
  }
  if (closed_forms && config.iso && mu != cdouble(1.0)) {
    throw ConfigError("iso", "orientation averaging of closed forms needs mu = 1");
  }
  if (closed_forms && moment.kind() == MomentKind::E3 && mu != cdouble(1.0)) {
    throw ConfigError("material.mu",
                      "the octupole has no closed form above a magnetic surface; use mode = "
                      "oracle");
  }

  const auto heights = height_grid(config.z_min, config.z_max, config.points,
                                   config.spacing == Spacing::Log);
  std::vector<Task> tasks;
  for (double z : heights) {
    const double qz = freq.q * z;
    for (RunMode m : expand(config.mode)) {
      if (config.mode == RunMode::All) {
        if (m == RunMode::Near && qz > config.near_max_qz) continue;
        if (m == RunMode::Far && qz < config.far_min_qz) continue;
      }
      tasks.push_back({z, m});
    }
  }

  const double g0 = gamma0(moment, freq, k);
  RunResult result;
  result.rows.resize(tasks.size());
  parallel_for(tasks.size(), exec, [&](std::size_t i) {
    const Task& t = tasks[i];
    ResultRow& row = result.rows[i];
    row.kind = moment.kind();
    row.z = t.z;
    row.qz = freq.q * t.z;
    row.mode = t.mode;
    row.regime = regime_of(t.mode);
    row.gamma0 = g0;
    const auto geom = HalfSpaceGeometry::at_height(t.z);
    try {
      switch (t.mode) {
        case RunMode::Free:
          row.gamma_surface = 0.0;
          break;
        case RunMode::Near:
          row.gamma_surface = config.iso ? near_field_correction_iso(moment, freq, geom, eps, k)
                                         : near_field_correction(moment, freq, geom, eps, mu, k);
          break;
        case RunMode::Far:
          row.gamma_surface = config.iso ? far_field_correction_iso(moment, freq, geom, eps, k)
                                         : far_field_correction(moment, freq, geom, eps, mu, k);
          break;
        case RunMode::Oracle:
        case RunMode::All: {
          const OracleResult r =
              config.iso
                  ? gamma_surface_exact_iso(moment, freq, geom, eps, mu, config.quadrature, k)
                  : gamma_surface_exact(moment, freq, geom, eps, mu, config.quadrature, k);
          row.gamma_surface = r.gamma_surface;
          row.residual = r.residual;
          break;
        }
      }
      row.gamma_total = row.gamma0 + row.gamma_surface;
      row.gamma_ratio = row.gamma_total / row.gamma0;
    } catch (const std::exception& e) {
      row.status = dynamic_cast<const OracleConvergenceError*>(&e) ? "not_converged" : "failed";
      row.gamma0 = row.gamma_surface = row.gamma_total = row.gamma_ratio = row.residual = kNaN;
    }
  });
  for (const auto& row : result.rows) result.failures += row.status != "ok";
  return result;
}

void write_csv(std::ostream& out, const RunResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << to_string(r.kind) << ',' << format_double(r.z) << ',' << format_double(r.qz) << ','
        << to_string(r.mode) << ',' << to_string(r.regime) << ',' << format_double(r.gamma0)
        << ',' << format_double(r.gamma_surface) << ',' << format_double(r.gamma_total) << ','
        << format_double(r.gamma_ratio) << ',' << format_double(r.residual) << ',' << r.status
        << '\n';
  }
}

void write_json(std::ostream& out, const RunResult& result, const RunConfig& config) {
  using nlohmann::json;
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = std::string(to_string(config.kind));
  doc["omega"] = config.omega;
  doc["mode"] = std::string(to_string(config.mode));
  doc["iso"] = config.iso;
  doc["units"] = config.natural_units ? "natural" : "si";
  doc["failures"] = result.failures;
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"kind", std::string(to_string(r.kind))},
                    {"z", r.z},
                    {"qz", r.qz},
                    {"mode", std::string(to_string(r.mode))},
                    {"regime", std::string(to_string(r.regime))},
                    {"gamma0", num(r.gamma0)},
                    {"gamma_surface", num(r.gamma_surface)},
                    {"gamma_total", num(r.gamma_total)},
                    {"gamma_ratio", num(r.gamma_ratio)},
                    {"residual", num(r.residual)},
                    {"status", r.status}});
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidArgument("csv: expected header '" + std::string(kCsvHeader) + "'");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  auto parse_number = [&](const std::string& s) {
    if (s == "nan") return kNaN;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw InvalidArgument("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 11) {
      throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected 11 fields");
    }
    ResultRow r;
    try {
      r.kind = moment_kind_from_string(f[0]);
      r.mode = run_mode_from_string(f[3]);
    } catch (const std::exception& e) {
      throw InvalidArgument("csv line " + std::to_string(line_no) + ": " + e.what());
    }
    r.regime = regime_of(r.mode);
    r.z = parse_number(f[1]);
    r.qz = parse_number(f[2]);
    r.gamma0 = parse_number(f[5]);
    r.gamma_surface = parse_number(f[6]);
    r.gamma_total = parse_number(f[7]);
    r.gamma_ratio = parse_number(f[8]);
    r.residual = parse_number(f[9]);
    r.status = f[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ScalingFit> fit_scaling(const std::vector<ResultRow>& rows, RunMode mode) {
  std::map<MomentKind, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) {
    if (r.mode == mode) groups[r.kind].push_back(&r);
  }
  if (groups.empty()) {
    throw InvalidArgument("fit: no rows with mode " + std::string(to_string(mode)));
  }
  std::vector<ScalingFit> fits;
  for (const auto& [kind, group] : groups) {
    const std::string label = std::string(to_string(kind));
    std::map<double, double> by_z;
    int sign = 0;
    for (const ResultRow* r : group) {
      if (r->status != "ok" || !std::isfinite(r->gamma_surface)) {
        throw NumericalError("fit " + label + ": failed row at z = " + format_double(r->z));
      }
      const int s = r->gamma_surface > 0 ? 1 : (r->gamma_surface < 0 ? -1 : 0);
      if (s == 0 || (sign != 0 && s != sign)) {
        throw NumericalError("fit " + label +
                             ": gamma_surface changes sign or vanishes in the window; no power "
                             "law exists there (fit the oscillation envelope instead)");
      }
      sign = s;
      by_z[r->z] = std::abs(r->gamma_surface);
    }
    if (by_z.size() < 5) {
      throw InvalidArgument("fit " + label + ": need at least 5 distinct heights, got " +
                            std::to_string(by_z.size()));
    }
    const double n = static_cast<double>(by_z.size());
    double sx = 0, sy = 0;
    for (const auto& [z, g] : by_z) {
      sx += std::log(z);
      sy += std::log(g);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [z, g] : by_z) {
      sxx += (std::log(z) - mx) * (std::log(z) - mx);
      sxy += (std::log(z) - mx) * (std::log(g) - my);
    }
    if (!(sxx > 0)) throw InvalidArgument("fit " + label + ": heights do not vary");
    const double slope = sxy / sxx;
    double ssr = 0;
    for (const auto& [z, g] : by_z) {
      const double resid = std::log(g) - my - slope * (std::log(z) - mx);
      ssr += resid * resid;
    }
    fits.push_back({kind, slope, std::sqrt(ssr / (n - 2) / sxx), by_z.size()});
  }
  return fits;
}

}  // namespace mprates
