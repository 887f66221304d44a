#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mprates/config.hpp"
#include "mprates/runner.hpp"
#include "mprates/tables.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

int run_command(const std::string& config_path, const std::string& mode, const std::string& out,
                const std::string& format, bool iso, int threads) {
  using namespace mprates;
  RunConfig cfg;
  RunResult result;
  try {
    cfg = load_config(config_path);
    if (!mode.empty()) cfg.mode = run_mode_from_string(mode);
    if (!out.empty()) cfg.output_path = out;
    if (!format.empty()) cfg.format = output_format_from_string(format);
    if (iso) cfg.iso = true;
    cfg.validate();
    if (threads > 0) set_thread_count(threads);
    result = run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "rates: " << e.what() << '\n';
    return kConfigError;
  }

  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) {
      std::cerr << "rates: cannot write " << cfg.output_path << '\n';
      return kConfigError;
    }
  }
  std::ostream& sink = cfg.output_path.empty() ? std::cout : file;
  if (cfg.format == OutputFormat::Json) write_json(sink, result, cfg);
  else write_csv(sink, result);

  if (result.failures > 0) {
    std::cerr << "rates: " << result.failures << " of " << result.rows.size()
              << " rows failed (NaN in output)\n";
    return kNumericalError;
  }
  return kOk;
}

int fit_command(const std::string& path, const std::string& regime) {
  using namespace mprates;
  std::vector<ResultRow> rows;
  RunMode mode;
  try {
    mode = run_mode_from_string(regime);
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    rows = read_csv(in);
  } catch (const std::exception& e) {
    std::cerr << "rates: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    std::printf("kind,slope,standard_error,points\n");
    for (const auto& f : fit_scaling(rows, mode)) {
      std::printf("%s,%.17g,%.17g,%zu\n", std::string(to_string(f.kind)).c_str(), f.slope,
                  f.standard_error, f.points);
    }
  } catch (const NumericalError& e) {
    std::cerr << "rates: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "rates: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

int tables_command(bool check) {
  using namespace mprates;
  const auto checks = run_table_checks();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    std::printf("%s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str());
    if (!c.detail.empty()) std::printf("  %s\n", c.detail.c_str());
  }
  if (!check) return kOk;
  return all ? kOk : kNumericalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipole transition rates near a planar half-space"};
  app.require_subcommand(1);
  app.footer("Thread count: --threads or the MPRATES_THREADS environment variable.\n"
             "Exit codes: 0 success, 1 configuration error, 2 numerical failure.");

  std::string config_path, mode, out, format;
  bool iso = false;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Evaluate a distance sweep from a configuration file");
  run->add_option("--config", config_path, "JSON configuration file")->required();
  run->add_option("--mode", mode, "Override mode: free, near, far, oracle, all");
  run->add_option("--out", out, "Override output.path");
  run->add_option("--format", format, "Override output.format: csv, json");
  run->add_flag("--iso", iso, "Orientation-average (electric kinds only)");
  run->add_option("--threads", threads, "OpenMP threads for the sweep")->check(CLI::PositiveNumber);
  run->footer(mprates::config_reference());

  std::string fit_path, regime = "near";
  auto* fit = app.add_subcommand("fit", "Fit log-log distance scaling per multipole kind");
  fit->add_option("--in", fit_path, "CSV written by 'rates run'")->required();
  fit->add_option("--regime", regime, "Rows to fit: near, far, oracle")
      ->check(CLI::IsMember({"near", "far", "oracle"}));

  bool check = false;
  auto* tables = app.add_subcommand(
      "tables", "Print the exact averaging matrices and near-field quadratic forms checks");
  tables->add_flag("--check", check, "Exit nonzero if any check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (*run) return run_command(config_path, mode, out, format, iso, threads);
  if (*fit) return fit_command(fit_path, regime);
  return tables_command(check);
}
