#include "horoflow/quermass.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "horoflow/errors.hpp"

namespace horoflow {

using std::numbers::pi;

namespace {

void require_k(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("{}: index k = {} outside {}..{}", what, k, lo, hi));
  }
}

// int_{S_rho} H_k = omega_n sin^n(rho) cot^k(rho), written without the
// removable singularity at rho = 0.
double sphere_integral_H(double rho, int n, int k) {
  return unit_sphere_area(n) * std::pow(std::sin(rho), n - k) * std::pow(std::cos(rho), k);
}

constexpr std::size_t kScanPoints = 512;
constexpr double kRadiusTol = 1e-14;

// Solves g(rho) = w on [0, pi/2] for a sphere map g that must be strictly
// increasing there.
double invert_sphere_map(const std::function<double(double)>& g, double w, const char* what) {
  std::vector<double> rho(kScanPoints + 1), val(kScanPoints + 1);
  for (std::size_t j = 0; j <= kScanPoints; ++j) {
    rho[j] = 0.5 * pi * static_cast<double>(j) / static_cast<double>(kScanPoints);
    val[j] = g(rho[j]);
    if (j > 0 && !(val[j] > val[j - 1])) {
      throw Error(ErrorKind::NonMonotonic,
                  fmt::format("{}: sphere map not increasing near rho = {:.6f}", what, rho[j]));
    }
  }
  if (!(w >= val.front()) || !(w <= val.back())) {
    throw Error(ErrorKind::OutOfRange,
                fmt::format("{}: value {} outside the sphere range [{}, {}]", what, w, val.front(), val.back()));
  }
  std::size_t j = 1;
  while (j < kScanPoints && val[j] < w) ++j;
  double lo = rho[j - 1], hi = rho[j];
  for (int it = 0; it < 200 && hi - lo > kRadiusTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < w) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> quermass_recursion(int n, double W0, const std::vector<double>& integralsH) {
  if (integralsH.size() != static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorKind::GridMismatch, "need int H_k for k = 0..n");
  }
  std::vector<double> W(static_cast<std::size_t>(n) + 2);
  W[0] = W0;
  const double c = 1.0 / static_cast<double>(n + 1);
  for (int k = 0; k <= n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    double w = c * integralsH[kk];
    if (k >= 1) w += static_cast<double>(k) / static_cast<double>(n + 2 - k) * W[kk - 1];
    W[kk + 1] = w;
  }
  return W;
}

QuermassVector quermassintegrals(const PointwiseGeometry& geom, const ProfileCurve& curve) {
  std::vector<double> integrals(static_cast<std::size_t>(geom.n) + 1);
  for (int k = 0; k <= geom.n; ++k) integrals[static_cast<std::size_t>(k)] = integrate(geom, geom.H_column(k));
  QuermassVector q;
  q.n = geom.n;
  q.W = quermass_recursion(geom.n, enclosed_volume(curve), integrals);
  return q;
}

std::vector<double> sphere_quermass_all(double rho, int n) {
  std::vector<double> integrals(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) integrals[static_cast<std::size_t>(k)] = sphere_integral_H(rho, n, k);
  return quermass_recursion(n, unit_sphere_area(n) * sin_power_integral(n, rho), integrals);
}

double sphere_quermass(double rho, int n, int k) {
  require_k(k, 0, n + 1, "sphere_quermass");
  return sphere_quermass_all(rho, n)[static_cast<std::size_t>(k)];
}

double sphere_weighted(double rho, int n, int k) {
  require_k(k, 0, n, "sphere_weighted");
  return static_cast<double>(n + 1) * sphere_quermass(rho, n, k + 1) - std::cos(rho) * sphere_integral_H(rho, n, k);
}

double sphere_radius_for(double w, int n, int k) {
  require_k(k, 0, n + 1, "sphere_radius_for");
  return invert_sphere_map([n, k](double r) { return sphere_quermass(r, n, k); }, w, "sphere radius");
}

double f_k(double w, int n, int k) {
  require_k(k, 1, n + 1, "f_k");
  const double rho = invert_sphere_map([n, k](double r) { return sphere_quermass(r, n, k - 1); }, w, "f_k");
  return sphere_quermass(rho, n, k);
}

double rho_k(double w, int n, int k) {
  require_k(k, 0, n, "rho_k");
  const double rho = invert_sphere_map([n, k](double r) { return sphere_quermass(r, n, k); }, w, "rho_k");
  return sphere_weighted(rho, n, k);
}

double hsiung_minkowski_residual(const PointwiseGeometry& geom, int k) {
  require_k(k, 1, geom.n, "hsiung_minkowski_residual");
  std::vector<double> lhs(geom.size()), rhs(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    lhs[i] = geom.phiPrime[i] * geom.H(i, k - 1);
    rhs[i] = geom.u[i] * geom.H(i, k);
  }
  return integrate(geom, lhs) - integrate(geom, rhs);
}

double heintze_karcher_gap(const PointwiseGeometry& geom) {
  std::vector<double> lhs(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const double h1 = geom.H(i, 1);
    if (!(h1 > 0.0)) {
      throw Error(ErrorKind::NotMeanConvex, fmt::format("H_1 = {} <= 0", h1), static_cast<std::ptrdiff_t>(i));
    }
    lhs[i] = geom.phiPrime[i] / h1;
  }
  return integrate(geom, lhs) - integrate(geom, geom.u);
}

double weighted_functional(const PointwiseGeometry& geom, const QuermassVector& W, int k) {
  require_k(k, 0, geom.n, "weighted_functional");
  std::vector<double> f(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) f[i] = geom.phiPrime[i] * geom.H(i, k);
  return static_cast<double>(geom.n + 1) * W[k + 1] - integrate(geom, f);
}

double weighted_functional(const PointwiseGeometry& geom, const ProfileCurve& curve, int k) {
  return weighted_functional(geom, quermassintegrals(geom, curve), k);
}

std::string SphereTable::to_text() const {
  std::string out = "rho";
  for (int k = 0; k <= n + 1; ++k) out += fmt::format(",W_{}", k);
  for (int k = 1; k <= n; ++k) out += fmt::format(",kw_{}", k);
  out += '\n';
  for (const auto& row : rows) {
    out += fmt::format("{:.17g}", row.rho);
    for (double w : row.W) out += fmt::format(",{:.17g}", w);
    for (double w : row.weighted) out += fmt::format(",{:.17g}", w);
    out += '\n';
  }
  return out;
}

SphereTable sphere_table(int n, std::size_t samples) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "sphere table needs at least 2 samples");
  SphereTable table;
  table.n = n;
  for (std::size_t j = 1; j < samples; ++j) {
    SphereTableRow row;
    row.rho = 0.5 * pi * static_cast<double>(j) / static_cast<double>(samples);
    row.W = sphere_quermass_all(row.rho, n);
    for (int k = 1; k <= n; ++k) row.weighted.push_back(sphere_weighted(row.rho, n, k));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace horoflow
