#include "horoflow/suites.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/quermass.hpp"
#include "horoflow/shapes.hpp"

namespace horoflow {

using std::numbers::pi;

std::vector<CorpusShape> horo_convex_corpus(int n, std::size_t N) {
  std::vector<CorpusShape> c;
  if (n == 1) {
    c.push_back({"centered(pi/4)", centered_sphere(1, N, pi / 4), true});
    c.push_back({"off-center(pi/6,pi/4)", off_center_sphere(1, N, pi / 6, pi / 4), true});
    c.push_back({"perturbed(0.8,0.02,3)", perturbed_sphere(1, N, 0.8, 0.02, 3), false});
    c.push_back({"perturbed(0.6,0.05,2)", perturbed_sphere(1, N, 0.6, 0.05, 2), false});
    c.push_back({"perturbed(0.7,0.01,4)", perturbed_sphere(1, N, 0.7, 0.01, 4), false});
  } else if (n == 2) {
    c.push_back({"centered(pi/4)", centered_sphere(2, N, pi / 4), true});
    c.push_back({"off-center(pi/6,pi/6)", off_center_sphere(2, N, pi / 6, pi / 6), true});
    c.push_back({"perturbed(0.8,0.05,2)", perturbed_sphere(2, N, 0.8, 0.05, 2), false});
    c.push_back({"perturbed(0.6,0.03,2)", perturbed_sphere(2, N, 0.6, 0.03, 2), false});
    c.push_back({"perturbed(0.7,0.01,3)", perturbed_sphere(2, N, 0.7, 0.01, 3), false});
  }
  return c;
}

VerdictReport run_verdict(const RunConfig& config, const Trajectory& traj) {
  VerdictReport v;
  v.provenance.configHash = config_hash(config);
  v.provenance.grid = traj.final.curve.size();
  v.provenance.function = traj.function;
  v.provenance.n = traj.n;
  for (auto& c : verify_monotonicity(traj, config.k)) v.checks.push_back(std::move(c));
  for (auto& c : verify_preservation(traj)) v.checks.push_back(std::move(c));
  Check term = make_check("converged", "flow converges to a centred sphere",
                          traj.reason == TerminationReason::Converged ? 0.0 : 1.0, 0.0,
                          fmt::format("termination {} after {} steps at t = {:.6g}", to_string(traj.reason),
                                      traj.steps, traj.final.t));
  v.checks.push_back(std::move(term));
  return v;
}

VerdictReport identity_suite(const IdentityOptions& o) {
  VerdictReport v;
  v.provenance.grid = o.N;
  v.provenance.function = "identities";
  for (int n : {1, 2}) {
    for (const auto& shape : horo_convex_corpus(n, o.N)) {
      const auto g = build_geometry(shape.curve);
      for (int k = 1; k <= n; ++k) {
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.phiPrime[i] * g.H(i, k - 1);
        const double scale = integrate(g, f);
        const double rel = std::abs(hsiung_minkowski_residual(g, k)) / scale;
        v.checks.push_back(make_check(fmt::format("minkowski-n{}-k{}-{}", n, k, shape.label),
                                      "int phi' H_{k-1} = int u H_k", rel, o.minkowskiTol, "relative residual"));
      }
      const double gap = heintze_karcher_gap(g);
      v.checks.push_back(make_check(fmt::format("heintze-karcher-n{}-{}", n, shape.label), "int phi'/H_1 >= int u",
                                    std::max(0.0, -gap), o.heintzeKarcherSlack, fmt::format("gap {:.6e}", gap)));
      if (shape.sphere) {
        v.checks.push_back(make_check(fmt::format("heintze-karcher-equality-n{}-{}", n, shape.label),
                                      "equality on spheres", std::abs(gap), o.sphereEqualityTol,
                                      fmt::format("gap {:.6e}", gap)));
      }
    }
  }
  for (int n : {2, 3, 4}) {
    const auto nm = newton_maclaurin_check(n, o.newtonSamples, o.seed, o.newtonTol);
    v.checks.push_back(make_check(fmt::format("newton-maclaurin-n{}", n), "H_{k-1} H_{k+1} <= H_k^2",
                                  nm.worstViolation, o.newtonTol, fmt::format("{} samples", nm.samples)));
  }
  return v;
}

}  // namespace horoflow
