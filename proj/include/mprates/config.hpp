#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mprates/constants.hpp"
#include "mprates/materials.hpp"
#include "mprates/moments.hpp"
#include "mprates/oracle.hpp"

namespace mprates {

enum class RunMode { Free, Near, Far, Oracle, All };
enum class Spacing { Linear, Log };
enum class OutputFormat { Csv, Json };

std::string_view to_string(RunMode mode);
RunMode run_mode_from_string(std::string_view name);
OutputFormat output_format_from_string(std::string_view name);

/// A configuration problem, tagged with the dotted path of the offending
/// key (for example "sweep.z_min").
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidArgument("config: " + field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  MomentKind kind = MomentKind::E1;
  std::vector<double> moment;  // dense components, 3^rank
  double omega = 0.0;
  MaterialResponse material;
  double z_min = 0.0;
  double z_max = 0.0;
  int points = 1;
  Spacing spacing = Spacing::Log;
  RunMode mode = RunMode::All;
  bool iso = false;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: standard output
  double near_max_qz = 0.01;
  double far_min_qz = 20.0;
  QuadratureSpec quadrature;
  bool natural_units = false;

  PhysicalConstants constants() const {
    return natural_units ? PhysicalConstants::natural() : PhysicalConstants::si();
  }
  MultipoleMoment transition_moment() const { return MultipoleMoment(kind, moment); }

  /// Checks every invariant and throws ConfigError naming the field:
  /// z_min > 0, z_max >= z_min, points >= 1, 0 < near_max_qz < far_min_qz,
  /// omega > 0, a valid moment and material, and no orientation averaging
  /// for magnetic kinds.
  void validate() const;
};

/// Parses a JSON configuration document. Relative tabulated-material paths
/// are resolved against `base_dir`. Unknown keys are rejected.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Human-readable list of every configuration key, for --help.
std::string config_reference();

}  // namespace mprates
