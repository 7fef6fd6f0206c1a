#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "horoflow/config.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/verifier.hpp"

namespace horoflow {

struct CorpusShape {
  std::string label;
  ProfileCurve curve;
  bool sphere = false;
};

/// Fixed set of horo-convex shapes for dimension n (1 or 2): centred and
/// off-centre spheres plus low-amplitude radial perturbations.
std::vector<CorpusShape> horo_convex_corpus(int n, std::size_t N);

/// Monotonicity, preservation and termination checks for one run.
VerdictReport run_verdict(const RunConfig& config, const Trajectory& traj);

struct IdentityOptions {
  std::size_t N = 512;
  /// Hsiung-Minkowski residual relative to int phi' H_{k-1}.
  double minkowskiTol = 1e-5;
  double heintzeKarcherSlack = 1e-8;
  double sphereEqualityTol = 1e-6;
  std::size_t newtonSamples = 10000;
  double newtonTol = 1e-12;
  std::uint64_t seed = 1;
};

/// Hsiung-Minkowski and Heintze-Karcher checks on the corpus for n = 1, 2
/// and Newton-MacLaurin sampling for n = 2, 3, 4.
VerdictReport identity_suite(const IdentityOptions& options = {});

}  // namespace horoflow
