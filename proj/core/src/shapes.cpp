#include "horoflow/shapes.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "horoflow/errors.hpp"

namespace horoflow {

using std::numbers::pi;

namespace {

// Loops use half-offset angles so no node sits on theta = 0; arcs run from
// the axis (theta = 0) to the axis (theta = pi).
double node_angle(int n, std::size_t N, std::size_t i) {
  if (n == 1) return 2.0 * pi * (static_cast<double>(i) + 0.5) / static_cast<double>(N);
  return pi * static_cast<double>(i) / static_cast<double>(N - 1);
}

void check_grid(int n, std::size_t N) {
  if (n < 1) throw Error(ErrorKind::Validation, "n: dimension must be >= 1");
  if (N < kMinNodes) throw Error(ErrorKind::Validation, fmt::format("N: need at least {} nodes", kMinNodes));
}

void pin_axis(ProfileCurve& c) {
  if (c.closure() != Closure::AxisArc) return;
  for (Vec3* x : {&c.nodes.front(), &c.nodes.back()}) {
    (*x)[1] = 0.0;
    x->normalize();
  }
}

}  // namespace

ProfileCurve centered_sphere(int n, std::size_t N, double rho) { return perturbed_sphere(n, N, rho, 0.0, 0); }

ProfileCurve off_center_sphere(int n, std::size_t N, double rho, double delta) {
  check_grid(n, N);
  if (!(rho > 0.0) || !(delta >= 0.0) || rho + delta > 0.5 * pi + 1e-15) {
    throw Error(ErrorKind::Validation,
                fmt::format("rho, centerDistance: need rho > 0, centerDistance >= 0, sum <= pi/2 (got {}, {})", rho, delta));
  }
  const Vec3 c(std::sin(delta), 0.0, std::cos(delta));
  const Vec3 et(std::cos(delta), 0.0, -std::sin(delta));
  const Vec3 e2 = Vec3::UnitY();
  ProfileCurve curve;
  curve.n = n;
  curve.nodes.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double t = node_angle(n, N, i);
    curve.nodes.push_back((std::cos(rho) * c + std::sin(rho) * (std::cos(t) * et + std::sin(t) * e2)).normalized());
  }
  pin_axis(curve);
  return curve;
}

ProfileCurve perturbed_sphere(int n, std::size_t N, double rho, double amplitude, int frequency) {
  check_grid(n, N);
  ProfileCurve curve;
  curve.n = n;
  curve.nodes.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double t = node_angle(n, N, i);
    const double r = rho + amplitude * std::cos(static_cast<double>(frequency) * t);
    if (!(r > 0.0) || !(r < 0.5 * pi)) {
      throw Error(ErrorKind::Validation, fmt::format("amplitude: radial graph leaves (0, pi/2) at theta = {}", t));
    }
    curve.nodes.emplace_back(std::sin(r) * std::cos(t), std::sin(r) * std::sin(t), std::cos(r));
  }
  pin_axis(curve);
  return curve;
}

}  // namespace horoflow
