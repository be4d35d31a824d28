#pragma once

#include "tansec/errors.hpp"
#include "tansec/recovery.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tansec {

/// Invalid configuration. `line` is 1-based (0 when unknown) and `field` a
/// JSON pointer into the config document.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, std::string field, int line);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct BodySpec {
  BodyKind kind = BodyKind::Ball;
  int dimension = 2;
  double radius = 1.0;
  Vec semiaxes;
  double r0 = 1.0;
  Polynomial terms;
  Mat rotation;  // empty: identity
};

struct FamilySpec {
  Polynomial rate;
  double proportional = 0.0;
  Polynomial second_order;
};

struct SandwichSpec {
  double lower_factor = 0.8;
  double upper_factor = 1.25;
  std::vector<double> epsilons{0.00390625, 0.0009765625, 0.000244140625};
};

struct Tolerances {
  double rms = 0.01;
  double symmetry = 1e-3;
  double functional = 0.03;
  double santalo = 1e-3;
};

enum class Command {
  VerifySections,
  VerifyCaps,
  Recover,
  Symmetry,
  SandwichCheck,
  FunctionalCheck,
  SantaloDemo,
  Properties,
};

std::string_view to_string(Command c);
Command parse_command(std::string_view name);

struct ExperimentConfig {
  Command command = Command::Recover;
  BodySpec body;
  FamilySpec family;
  RecoveryMode mode = RecoveryMode::Sections;
  int k = 1;
  int l = 1;
  Mat pencil_fixed;  // d x l; empty: whole space (l = d - 1)
  int pencil_rotations = 64;
  int directions = 0;  // per subspace, 0: default grid size
  FunctionalDescriptor functional;
  std::vector<FunctionalDescriptor> compare_functionals;
  EpsilonGrid grid = EpsilonGrid::geometric();
  int rays = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  Tolerances tolerance;
  Mat symmetry;  // orthogonal transform for the symmetry command
  SandwichSpec sandwich;
  std::string output = "out";

  int dimension() const { return body.dimension; }
};

/// Parses and range-checks a JSON config. `source` names the document in
/// diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "config");
ExperimentConfig load_config(const std::string& path);

RadialBody build_body(const BodySpec& spec);
PerturbationFamily build_family(const ExperimentConfig& cfg);
std::vector<AffineFlat> build_flats(const ExperimentConfig& cfg, const RadialBody& body);
RecoveryOptions build_recovery_options(const ExperimentConfig& cfg);

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 tolerance failure
  bool passed = false;
  std::string summary;
};

/// Executes the configured command and writes report.json and the CSV
/// tables into `cfg.output`.
RunResult run(const ExperimentConfig& cfg);

}  // namespace tansec
