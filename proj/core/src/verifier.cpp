#include "horoflow/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/quermass.hpp"
#include "horoflow/shapes.hpp"

namespace horoflow {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::HypothesisNotMet: return "HYPOTHESIS-NOT-MET";
  }
  return "UNKNOWN";
}

Check make_check(std::string name, std::string claim, double worstViolation, double threshold, std::string note) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.worstViolation = worstViolation;
  c.threshold = threshold;
  c.status = worstViolation <= threshold ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = std::move(note);
  return c;
}

bool VerdictReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

const Check* VerdictReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerdictReport::to_text() const {
  std::string out = "# verdict\n";
  out += fmt::format("config-hash {}\nn {}\ngrid {}\nfunction {}\n", provenance.configHash, provenance.n,
                     provenance.grid, provenance.function);
  for (const auto& c : checks) {
    out += fmt::format("check {} claim=\"{}\" worst={:.6e} threshold={:.1e} {}", c.name, c.claim, c.worstViolation,
                       c.threshold, to_string(c.status));
    if (!c.note.empty()) out += fmt::format(" note=\"{}\"", c.note);
    out += '\n';
  }
  out += fmt::format("overall {}\n", all_pass() ? "PASS" : "FAIL");
  return out;
}

namespace {

constexpr const char* kInsufficient = "insufficient samples";

}  // namespace

std::vector<Check> verify_monotonicity(const Trajectory& traj, int k, const MonotonicityThresholds& th) {
  const int n = traj.n;
  if (k < 1 || k > n + 1) throw Error(ErrorKind::InvalidArgument, fmt::format("k = {} outside 1..{}", k, n + 1));
  const auto& rec = traj.records;
  const auto ku = static_cast<std::size_t>(k);

  std::vector<Check> out;
  const std::string driftName = fmt::format("W_{}-conserved", k);
  const std::string growName = fmt::format("W_{}-nondecreasing", k - 1);
  const bool weighted = k <= n;
  const std::string kwName = fmt::format("weighted_{}-nonincreasing", k);

  if (rec.size() < 2) {
    out.push_back(make_check(driftName, "W_k is preserved", 0.0, th.relativeDrift, kInsufficient));
    out.push_back(make_check(growName, "W_{k-1} increases", 0.0, th.growthSlack, kInsufficient));
    out.push_back(make_check("rMax-nonincreasing", "maximal distance to the pole decreases", 0.0, th.rMaxSlack,
                             kInsufficient));
    if (weighted) out.push_back(make_check(kwName, "weighted functional decreases", 0.0, th.weightedSlack, kInsufficient));
    return out;
  }

  const double w0 = rec.front().W[ku];
  double drift = 0.0, drop = 0.0, rise = 0.0, kwRise = 0.0;
  for (std::size_t i = 1; i < rec.size(); ++i) {
    drift = std::max(drift, std::abs(rec[i].W[ku] - w0) / std::abs(w0));
    drop = std::max(drop, rec[i - 1].W[ku - 1] - rec[i].W[ku - 1]);
    rise = std::max(rise, rec[i].rMax - rec[i - 1].rMax);
    if (weighted) kwRise = std::max(kwRise, rec[i].kw[ku - 1] - rec[i - 1].kw[ku - 1]);
  }
  out.push_back(make_check(driftName, "W_k is preserved", drift, th.relativeDrift, "relative to the initial value"));
  out.push_back(make_check(growName, "W_{k-1} increases", std::max(0.0, drop), th.growthSlack, "largest decrease"));
  out.push_back(make_check("rMax-nonincreasing", "maximal distance to the pole decreases", std::max(0.0, rise),
                           th.rMaxSlack, "largest increase"));
  if (weighted) {
    out.push_back(make_check(kwName, "weighted functional decreases", std::max(0.0, kwRise), th.weightedSlack,
                             "largest increase"));
  }
  return out;
}

std::vector<Check> verify_preservation(const Trajectory& traj, const PreservationThresholds& th) {
  std::vector<Check> out;
  const auto& rec = traj.records;
  if (rec.empty()) {
    out.push_back(make_check("horo-convexity-preserved", "horo-convexity is preserved", 0.0, th.horoSlack, kInsufficient));
    return out;
  }
  double sigmaWorst = 0.0, kappaWorst = 0.0;
  for (const auto& r : rec) sigmaWorst = std::max(sigmaWorst, -r.sigmaMin);
  Check horo = make_check("horo-convexity-preserved", "horo-convexity is preserved", sigmaWorst, th.horoSlack,
                          "largest negative sigmaMin");
  if (rec.front().sigmaMin < -kHoroCertificateTol) {
    horo.status = CheckStatus::HypothesisNotMet;
    horo.note = fmt::format("initial sigmaMin = {:.3e} < 0", rec.front().sigmaMin);
  }
  out.push_back(horo);

  if (!traj.snapshots.empty()) {
    const auto g0 = build_geometry(traj.snapshots.front().curve);
    const double phiMax = *std::max_element(g0.phi.begin(), g0.phi.end());
    const double floor = 1.0 - phiMax;
    for (const auto& r : rec) kappaWorst = std::max(kappaWorst, floor - r.kappaMin);
    Check kap = make_check("curvature-floor", "principal curvatures stay above 1 - max phi(M_0)", kappaWorst,
                           th.curvatureSlack, fmt::format("floor {:.6f}", floor));
    if (horo.status == CheckStatus::HypothesisNotMet) kap.status = CheckStatus::HypothesisNotMet;
    out.push_back(kap);
  }
  return out;
}

namespace {

InequalityResult finish_inequality(const PointwiseGeometry& geom, std::string name, std::string claim, double lhs,
                                   double rhs, double tol) {
  InequalityResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.check = make_check(std::move(name), std::move(claim), std::max(0.0, -r.margin), tol,
                       fmt::format("margin {:.6e}", r.margin));
  const double sigmaMin = horo_margin(geom).sigmaMin;
  if (sigmaMin < -kHoroCertificateTol) {
    r.check.status = CheckStatus::HypothesisNotMet;
    r.check.note += fmt::format("; sigmaMin = {:.3e} < 0", sigmaMin);
  }
  return r;
}

}  // namespace

InequalityResult verify_inequality(const PointwiseGeometry& geom, const ProfileCurve& curve, int k, double tol) {
  const auto W = quermassintegrals(geom, curve);
  if (k < 1 || k > geom.n) throw Error(ErrorKind::InvalidArgument, fmt::format("k = {} outside 1..{}", k, geom.n));
  return finish_inequality(geom, fmt::format("quermass-inequality-{}", k), "W_k >= f_k(W_{k-1})", W[k],
                           f_k(W[k - 1], geom.n, k), tol);
}

InequalityResult verify_weighted_inequality(const PointwiseGeometry& geom, const ProfileCurve& curve, int k,
                                            double tol) {
  const auto W = quermassintegrals(geom, curve);
  if (k < 1 || k > geom.n) throw Error(ErrorKind::InvalidArgument, fmt::format("k = {} outside 1..{}", k, geom.n));
  return finish_inequality(geom, fmt::format("weighted-inequality-{}", k),
                           "(n+1) W_{k+1} - int cos r H_k >= rho_k(W_k)", weighted_functional(geom, W, k),
                           rho_k(W[k], geom.n, k), tol);
}

HoroSphereResult verify_horo_sphere(double centerDistance, double radius, int n, std::size_t N) {
  if (!(centerDistance >= 0.0) || !(radius > 0.0) || centerDistance + radius > 0.5 * std::numbers::pi + 1e-15) {
    throw Error(ErrorKind::InvalidArgument, "horo-sphere check needs the sphere inside the closed hemisphere");
  }
  const auto curve = off_center_sphere(n, N, radius, centerDistance);
  const auto g = build_geometry(curve);
  HoroSphereResult r;
  r.expectedSigma = std::cos(centerDistance) / std::sin(radius) - 1.0;
  for (double s : g.sigma) r.maxDeviation = std::max(r.maxDeviation, std::abs(s - r.expectedSigma));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double law = g.phiPrime[i] * std::cos(radius) + std::sin(radius) * g.u[i];
    r.lawOfCosinesResidual = std::max(r.lawOfCosinesResidual, std::abs(std::cos(centerDistance) - law));
  }
  return r;
}

}  // namespace horoflow
