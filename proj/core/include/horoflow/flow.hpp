#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

struct FlowParams {
  CurvatureFunction F = CurvatureFunction::quotient(1);
  double cflFactor = 0.2;
  double tMax = 50.0;
  /// Converged once rMax - rMin drops below this.
  double tolRound = 1e-4;
  /// Diagnostics cadence in accepted steps. The initial and final states are
  /// always recorded.
  std::size_t outputEvery = 1;
  /// Snapshot cadence in accepted steps; 0 keeps only the first and last.
  std::size_t snapshotEvery = 0;
  std::size_t maxSteps = 5'000'000;
  bool secondOrderStepper = false;
  double resampleRatio = 2.0;
  double speedGrowthLimit = 10.0;
  /// speedMax below this is treated as this when testing growth.
  double speedFloor = 1e-8;
  int maxHalvings = 20;
  GeometryOptions geometry;
};

struct FlowState {
  double t = 0.0;
  ProfileCurve curve;
  PointwiseGeometry geom;
  double dt = 0.0;
  std::size_t steps = 0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double dt = 0.0;
  std::size_t step = 0;
  std::vector<double> W;
  double sigmaMin = 0.0;
  double rMax = 0.0;
  double rMin = 0.0;
  double phiPrimeMin = 0.0;
  double speedMax = 0.0;
  std::vector<double> hm;  ///< Hsiung-Minkowski residuals, k = 1..n
  std::vector<double> kw;  ///< weighted functionals, k = 1..n
  double kappaMin = 0.0;
  double fitResidual = 0.0;
  double fitRadius = 0.0;
  double fitCenterDistance = 0.0;

  double roundness() const { return rMax - rMin; }
};

enum class TerminationReason { Converged, TimeLimit, StepFailure, OutsideGamma };

const char* to_string(TerminationReason reason);

struct Snapshot {
  double t = 0.0;
  ProfileCurve curve;
};

struct Trajectory {
  int n = 1;
  std::string function;
  std::vector<DiagnosticsRecord> records;
  std::vector<Snapshot> snapshots;
  TerminationReason reason = TerminationReason::TimeLimit;
  std::string message;
  std::size_t steps = 0;
  std::size_t rejections = 0;
  std::size_t resamples = 0;
  FlowState final;
};

FlowState make_state(ProfileCurve curve, const GeometryOptions& options = {});

/// s_i = phi'_i / F(kappa_i) - u_i. Throws OutsideGamma with the node index
/// when a curvature vector leaves the positive cone.
std::vector<double> speed_field(const PointwiseGeometry& geom, const CurvatureFunction& F);

/// cfl * min_i dl_i^2 F_i^2 / (phi'_i * n * max_j F^j_i), dl_i the shorter
/// adjacent edge. Throws InvalidArgument unless cfl > 0.
double stable_dt(const PointwiseGeometry& geom, const CurvatureFunction& F, double cflFactor);

struct StepResult {
  FlowState state;
  int halvings = 0;
  bool resampled = false;
};

/// One accepted step of size at most dt, halving on NaN, geometry failure,
/// loss of convexity or speed blow-up. Throws StepFailure (or OutsideGamma
/// when that was the final cause) after maxHalvings rejections.
StepResult step(const FlowState& state, const FlowParams& params, double dt);

DiagnosticsRecord diagnostics(const FlowState& state, const CurvatureFunction& F, bool withFit = true);

Trajectory run(const FlowParams& params, const ProfileCurve& initial);

struct EvolutionResiduals {
  std::vector<double> resPhiPrime;
  std::vector<double> resU;
  double maxPhiPrime = 0.0;
  double maxU = 0.0;
};

/// Compares centred time differences of phi' and u over forward/backward
/// probe steps with the discretized right-hand sides of their evolution
/// laws. dtProbe <= 0 selects stable_dt / 10.
EvolutionResiduals evolution_residuals(const FlowState& state, const CurvatureFunction& F, double dtProbe = 0.0,
                                       double cflFactor = 0.2);

}  // namespace horoflow
