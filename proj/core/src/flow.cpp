#include "horoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "horoflow/errors.hpp"
#include "horoflow/quermass.hpp"

namespace horoflow {

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::Converged: return "Converged";
    case TerminationReason::TimeLimit: return "TimeLimit";
    case TerminationReason::StepFailure: return "StepFailure";
    case TerminationReason::OutsideGamma: return "OutsideGamma";
  }
  return "Unknown";
}

FlowState make_state(ProfileCurve curve, const GeometryOptions& options) {
  FlowState s;
  s.geom = build_geometry(curve, options);
  s.curve = std::move(curve);
  return s;
}

std::vector<double> speed_field(const PointwiseGeometry& geom, const CurvatureFunction& F) {
  const std::size_t N = geom.size();
  std::vector<double> s(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto k = geom.principal(i);
    for (double v : k) {
      if (!(v > 0.0)) {
        throw Error(ErrorKind::OutsideGamma, fmt::format("principal curvature {} <= 0", v),
                    static_cast<std::ptrdiff_t>(i));
      }
    }
    const double f = F(k);
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorKind::OutsideGamma, fmt::format("F = {} is not positive", f), static_cast<std::ptrdiff_t>(i));
    }
    s[i] = geom.phiPrime[i] / f - geom.u[i];
  }
  return s;
}

namespace {

double local_spacing(const PointwiseGeometry& geom, std::size_t i) {
  const std::size_t N = geom.size();
  if (geom.closure == Closure::Loop) return std::min(geom.edgeLength[i], geom.edgeLength[(i + N - 1) % N]);
  if (i == 0) return geom.edgeLength.front();
  if (i + 1 == N) return geom.edgeLength.back();
  return std::min(geom.edgeLength[i], geom.edgeLength[i - 1]);
}

}  // namespace

double stable_dt(const PointwiseGeometry& geom, const CurvatureFunction& F, double cflFactor) {
  if (!(cflFactor > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("cfl factor must be positive, got {}", cflFactor));
  }
  const auto n = static_cast<std::size_t>(geom.n);
  std::vector<double> grad(n);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const auto k = geom.principal(i);
    const double f = F(k);
    F.gradient(k, grad);
    const double g = static_cast<double>(n) * *std::max_element(grad.begin(), grad.end());
    const double dl = local_spacing(geom, i);
    best = std::min(best, dl * dl * f * f / (geom.phiPrime[i] * g));
  }
  return cflFactor * best;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Moves every node along the given per-node displacement vectors.
ProfileCurve displaced(const ProfileCurve& curve, const std::vector<Vec3>& delta) {
  ProfileCurve out = curve;
  for (std::size_t i = 0; i < out.size(); ++i) out.nodes[i] += delta[i];
  normalize_nodes(out);
  return out;
}

std::vector<Vec3> velocity(const PointwiseGeometry& geom, const std::vector<double>& s) {
  std::vector<Vec3> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i] * geom.nu[i];
  return v;
}

std::vector<Vec3> scaled(const std::vector<Vec3>& v, double a) {
  std::vector<Vec3> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = a * v[i];
  return out;
}

}  // namespace

StepResult step(const FlowState& state, const FlowParams& params, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "step size must be positive");
  const auto s0 = speed_field(state.geom, params.F);
  const double speed0 = std::max(max_abs(s0), params.speedFloor);
  const auto v0 = velocity(state.geom, s0);

  StepResult result;
  ErrorKind lastCause = ErrorKind::StepFailure;
  std::string lastMessage;
  for (int attempt = 0; attempt <= params.maxHalvings; ++attempt, dt *= 0.5) {
    try {
      ProfileCurve next = displaced(state.curve, scaled(v0, dt));
      if (params.secondOrderStepper) {
        const auto gMid = build_geometry(next, params.geometry);
        const auto v1 = velocity(gMid, speed_field(gMid, params.F));
        std::vector<Vec3> avg(v0.size());
        for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = 0.5 * dt * (v0[i] + v1[i]);
        next = displaced(state.curve, avg);
      }
      auto geom = build_geometry(next, params.geometry);
      const auto s1 = speed_field(geom, params.F);
      const double speed1 = max_abs(s1);
      if (!std::isfinite(speed1)) throw Error(ErrorKind::StepFailure, "non-finite speed");
      if (speed1 > params.speedGrowthLimit * speed0) {
        throw Error(ErrorKind::StepFailure, fmt::format("speed grew from {:.3e} to {:.3e}", speed0, speed1));
      }
      if (cell_ratio(next) > params.resampleRatio) {
        next = resample_uniform(next);
        geom = build_geometry(next, params.geometry);
        speed_field(geom, params.F);
        result.resampled = true;
      }
      result.state.t = state.t + dt;
      result.state.dt = dt;
      result.state.steps = state.steps + 1;
      result.state.curve = std::move(next);
      result.state.geom = std::move(geom);
      result.halvings = attempt;
      return result;
    } catch (const Error& e) {
      lastCause = e.kind() == ErrorKind::OutsideGamma ? ErrorKind::OutsideGamma : ErrorKind::StepFailure;
      lastMessage = e.what();
    }
  }
  throw Error(lastCause, fmt::format("step rejected {} times; last cause: {}", params.maxHalvings + 1, lastMessage));
}

DiagnosticsRecord diagnostics(const FlowState& state, const CurvatureFunction& F, bool withFit) {
  const auto& g = state.geom;
  DiagnosticsRecord d;
  d.t = state.t;
  d.dt = state.dt;
  d.step = state.steps;
  const auto W = quermassintegrals(g, state.curve);
  d.W = W.W;
  d.sigmaMin = horo_margin(g).sigmaMin;
  d.rMax = *std::max_element(g.r.begin(), g.r.end());
  d.rMin = *std::min_element(g.r.begin(), g.r.end());
  d.phiPrimeMin = *std::min_element(g.phiPrime.begin(), g.phiPrime.end());
  d.kappaMin = *std::min_element(g.kappa.begin(), g.kappa.end());
  d.speedMax = max_abs(speed_field(g, F));
  for (int k = 1; k <= g.n; ++k) {
    d.hm.push_back(hsiung_minkowski_residual(g, k));
    d.kw.push_back(weighted_functional(g, W, k));
  }
  if (withFit) {
    const auto fit = fit_sphere(state.curve);
    d.fitResidual = fit.residual;
    d.fitRadius = fit.radius;
    d.fitCenterDistance = fit.centerDistance;
  }
  return d;
}

Trajectory run(const FlowParams& params, const ProfileCurve& initial) {
  if (!(params.cflFactor > 0.0)) throw Error(ErrorKind::InvalidArgument, "cfl factor must be positive");
  if (params.outputEvery == 0) throw Error(ErrorKind::InvalidArgument, "outputEvery must be >= 1");

  Trajectory traj;
  traj.n = initial.n;
  traj.function = params.F.label();

  FlowState state = make_state(initial, params.geometry);
  DiagnosticsRecord current = diagnostics(state, params.F);
  traj.records.push_back(current);
  traj.snapshots.push_back({state.t, state.curve});
  std::size_t lastSnapshotStep = 0;
  bool currentValid = true;

  while (true) {
    if (current.roundness() < params.tolRound) {
      traj.reason = TerminationReason::Converged;
      break;
    }
    if (state.t >= params.tMax || state.steps >= params.maxSteps) {
      traj.reason = TerminationReason::TimeLimit;
      break;
    }
    try {
      const double dt = std::min(stable_dt(state.geom, params.F, params.cflFactor), params.tMax - state.t);
      auto res = step(state, params, dt);
      traj.rejections += static_cast<std::size_t>(res.halvings);
      if (res.resampled) ++traj.resamples;
      state = std::move(res.state);
    } catch (const Error& e) {
      traj.reason = e.kind() == ErrorKind::OutsideGamma ? TerminationReason::OutsideGamma
                                                         : TerminationReason::StepFailure;
      traj.message = e.what();
      break;
    }
    try {
      current = diagnostics(state, params.F);
    } catch (const Error& e) {
      currentValid = false;
      traj.reason = TerminationReason::StepFailure;
      traj.message = e.what();
      break;
    }
    if (state.steps % params.outputEvery == 0) traj.records.push_back(current);
    if (params.snapshotEvery > 0 && state.steps % params.snapshotEvery == 0) {
      traj.snapshots.push_back({state.t, state.curve});
      lastSnapshotStep = state.steps;
    }
  }

  if (currentValid && traj.records.back().step != state.steps) traj.records.push_back(current);
  if (lastSnapshotStep != state.steps) traj.snapshots.push_back({state.t, state.curve});
  traj.steps = state.steps;
  traj.final = std::move(state);
  return traj;
}

namespace {

struct Derivatives {
  std::vector<double> first;   // d/ds along increasing index
  std::vector<double> second;  // d^2/ds^2
};

Derivatives arclength_derivatives(const PointwiseGeometry& g, const std::vector<double>& f) {
  const std::size_t N = g.size();
  Derivatives d{std::vector<double>(N), std::vector<double>(N)};
  const bool loop = g.closure == Closure::Loop;
  for (std::size_t i = 0; i < N; ++i) {
    if (!loop && (i == 0 || i + 1 == N)) {
      // Mirror symmetry across the axis: odd derivative vanishes.
      const std::size_t j = i == 0 ? 1 : N - 2;
      const double l = i == 0 ? g.edgeLength.front() : g.edgeLength.back();
      d.first[i] = 0.0;
      d.second[i] = 2.0 * (f[j] - f[i]) / (l * l);
      continue;
    }
    const std::size_t ip = loop ? (i + 1) % N : i + 1;
    const std::size_t im = loop ? (i + N - 1) % N : i - 1;
    const double hp = g.edgeLength[i];
    const double hm = g.edgeLength[loop ? im : i - 1];
    const double dp = f[ip] - f[i], dm = f[i] - f[im];
    const double denom = hm * hp * (hm + hp);
    d.first[i] = (hm * hm * dp + hp * hp * dm) / denom;
    d.second[i] = 2.0 * (hm * dp - hp * dm) / denom;
  }
  return d;
}

}  // namespace

EvolutionResiduals evolution_residuals(const FlowState& state, const CurvatureFunction& F, double dtProbe,
                                       double cflFactor) {
  const auto& g = state.geom;
  const std::size_t N = g.size();
  if (!(dtProbe > 0.0)) dtProbe = stable_dt(g, F, cflFactor) / 10.0;

  const auto s = speed_field(g, F);
  const auto v = velocity(g, s);
  const auto gp = build_geometry(displaced(state.curve, scaled(v, dtProbe)));
  const auto gm = build_geometry(displaced(state.curve, scaled(v, -dtProbe)));

  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<double>> grad(N, std::vector<double>(n));
  std::vector<double> Fv(N);
  for (std::size_t i = 0; i < N; ++i) {
    Fv[i] = F(g.principal(i));
    F.gradient(g.principal(i), grad[i]);
  }

  EvolutionResiduals out;
  out.resPhiPrime.resize(N);
  out.resU.resize(N);
  // F^{ij} f_{;ij} for a function of the profile arclength: the meridian
  // part is f_ss, each rotational direction contributes (b_s / b) f_s.
  const auto hess = [&](const std::vector<double>& f, Derivatives& d) {
    d = arclength_derivatives(g, f);
    std::vector<double> h(N);
    const bool loop = g.closure == Closure::Loop;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = grad[i][0] * d.second[i];
      if (n >= 2) {
        const bool onAxis = !loop && (i == 0 || i + 1 == N);
        const double b = state.curve.nodes[i][1];
        const double rotHess = onAxis ? d.second[i] : g.tangent[i][1] / b * d.first[i];
        for (std::size_t j = 1; j < n; ++j) acc += grad[i][j] * rotHess;
      }
      h[i] = acc;
    }
    return h;
  };

  Derivatives dPhi, dU;
  const auto hPhi = hess(g.phiPrime, dPhi);
  const auto hU = hess(g.u, dU);

  for (std::size_t i = 0; i < N; ++i) {
    const double f = Fv[i], f2 = f * f;
    const double pp = g.phiPrime[i], u = g.u[i], ph = g.phi[i];
    double traceGrad = 0.0, gradK2 = 0.0;
    const auto k = g.principal(i);
    for (std::size_t j = 0; j < n; ++j) {
      traceGrad += grad[i][j];
      gradK2 += grad[i][j] * k[j] * k[j];
    }
    const double rhsPhi = pp / f2 * hPhi[i] + u * u - 2.0 * pp * u / f + pp * pp / f2 * traceGrad;
    const double rhsU = pp / f2 * hU[i] - g.tangent[i][2] * dU.first[i] + pp / f2 * (gradK2 - f2) * u +
                        (ph * ph - u * u) / f;
    const double dtPhi = (gp.phiPrime[i] - gm.phiPrime[i]) / (2.0 * dtProbe);
    const double dtU = (gp.u[i] - gm.u[i]) / (2.0 * dtProbe);
    out.resPhiPrime[i] = dtPhi - rhsPhi;
    out.resU[i] = dtU - rhsU;
  }
  out.maxPhiPrime = max_abs(out.resPhiPrime);
  out.maxU = max_abs(out.resU);
  return out;
}

}  // namespace horoflow
