#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "horoflow/flow.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

/// HypothesisNotMet marks a conditional claim whose premise fails on the
/// input; it is neither a pass nor a violation.
enum class CheckStatus { Pass, Fail, HypothesisNotMet };

const char* to_string(CheckStatus status);

struct Check {
  std::string name;
  std::string claim;
  double worstViolation = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;

  bool pass() const { return status == CheckStatus::Pass; }
};

/// Builds a check that passes iff worstViolation <= threshold.
Check make_check(std::string name, std::string claim, double worstViolation, double threshold, std::string note = {});

struct Provenance {
  std::string configHash;
  std::size_t grid = 0;
  std::string function;
  int n = 0;
};

struct VerdictReport {
  std::vector<Check> checks;
  Provenance provenance;

  /// True when no check failed. Checks whose hypothesis is not met do not
  /// count as failures.
  bool all_pass() const;
  const Check* find(const std::string& name) const;
  std::string to_text() const;
};

struct MonotonicityThresholds {
  double relativeDrift = 1e-3;
  double growthSlack = 1e-8;
  double rMaxSlack = 1e-10;
  double weightedSlack = 1e-8;
};

/// W_k conservation, W_{k-1} growth, rMax decay and decay of the weighted
/// functional (n+1) W_{k+1} - int phi' H_k, per recorded sample.
std::vector<Check> verify_monotonicity(const Trajectory& traj, int k, const MonotonicityThresholds& thresholds = {});

struct PreservationThresholds {
  double horoSlack = 1e-6;
  double curvatureSlack = 1e-6;
};

/// sigmaMin stays above -horoSlack when it starts nonnegative, and
/// min kappa stays above 1 - max_{M_0} phi - curvatureSlack.
std::vector<Check> verify_preservation(const Trajectory& traj, const PreservationThresholds& thresholds = {});

struct InequalityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Check check;
};

/// Shapes with sigmaMin below this are treated as outside the horo-convex
/// class when checking the inequalities.
inline constexpr double kHoroCertificateTol = 1e-10;

/// margin = W_k - f_k(W_{k-1}); pass iff margin >= -tol.
InequalityResult verify_inequality(const PointwiseGeometry& geom, const ProfileCurve& curve, int k, double tol = 1e-6);

/// margin = (n+1) W_{k+1} - int phi' H_k - rho_k(W_k); pass iff margin >= -tol.
InequalityResult verify_weighted_inequality(const PointwiseGeometry& geom, const ProfileCurve& curve, int k,
                                            double tol = 1e-6);

struct HoroSphereResult {
  double expectedSigma = 0.0;
  /// max over nodes and directions of |sigma - expectedSigma|
  double maxDeviation = 0.0;
  /// max over nodes of |cos delta - (phi' cos rho + sin rho u)|
  double lawOfCosinesResidual = 0.0;
};

/// Samples the sphere of the given radius whose centre is at the given
/// distance from the pole and compares its horo-tensor with the closed form
/// cos(delta) / sin(rho) - 1.
HoroSphereResult verify_horo_sphere(double centerDistance, double radius, int n = 1, std::size_t N = 256);

}  // namespace horoflow
