#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "horoflow/flow.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

struct CenteredSphere {
  double rho = 0.7;
  bool operator==(const CenteredSphere&) const = default;
};

struct OffCenterSphere {
  double rho = 0.5;
  double centerDistance = 0.5;
  bool operator==(const OffCenterSphere&) const = default;
};

struct PerturbedSphere {
  double rho = 0.8;
  double amplitude = 0.02;
  int frequency = 3;
  bool operator==(const PerturbedSphere&) const = default;
};

struct ProfileFile {
  std::string path;
  bool operator==(const ProfileFile&) const = default;
};

using ShapeSpec = std::variant<CenteredSphere, OffCenterSphere, PerturbedSphere, ProfileFile>;

enum class Mode { Curve, Axisymmetric };

/// Flat experiment description; every field maps to one `key = value` line.
struct RunConfig {
  int n = 1;
  Mode mode = Mode::Curve;
  /// Quotient index of F = H_k / H_{k-1}; k = 1 is the mean curvature.
  int k = 1;
  std::size_t N = 256;
  ShapeSpec shape = PerturbedSphere{};
  double cflFactor = 0.2;
  double tMax = 50.0;
  double tolRound = 1e-4;
  std::size_t outputEvery = 1;
  std::size_t snapshotEvery = 0;
  std::size_t maxSteps = 5'000'000;
  double resampleRatio = 2.0;
  double normalizationTol = 1e-12;
  std::string outputDir = "horoflow-out";
  std::string runId;
  std::uint64_t seed = 1;
  bool allowNonHoroConvex = false;
  bool secondOrderStepper = false;

  bool operator==(const RunConfig&) const = default;
};

/// Default output directory: $HOROFLOW_OUTPUT_DIR when set.
std::string default_output_dir();

/// Defaults with outputDir taken from default_output_dir().
RunConfig default_config();

std::string serialize(const RunConfig& config);

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values throw Parse errors naming the line. Keys not present
/// keep the values already in `base`.
RunConfig parse_config(const std::string& text, const RunConfig& base = default_config());

/// Applies one key/value pair (used by the config parser and CLI flags).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Throws Validation errors naming the offending field.
void validate(const RunConfig& config);

/// FNV-1a 64 of the serialized config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// runId when set, else "run-" followed by the config hash.
std::string run_id(const RunConfig& config);

CurvatureFunction make_function(const RunConfig& config);
FlowParams make_flow_params(const RunConfig& config);

struct PreparedShape {
  ProfileCurve curve;
  double sigmaMin = 0.0;
  bool horoConvex = false;
};

/// Deterministic initial shape. Throws NotHoroConvex when the shape fails
/// the horo-convexity certificate, unless allowNonHoroConvex is set.
PreparedShape make_initial_shape(const RunConfig& config);

Trajectory run(const RunConfig& config);

}  // namespace horoflow
