#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "horoflow/errors.hpp"
#include "horoflow/shapes.hpp"
#include "horoflow/spherical_geometry.hpp"
#include "oracles.hpp"

using namespace horoflow;
using std::numbers::pi;

namespace {

double node_theta(int n, std::size_t N, std::size_t i) {
  return n == 1 ? 2 * pi * (i + 0.5) / N : pi * double(i) / double(N - 1);
}

template <class F>
void expect_kind(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no exception, expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(SphereArea, UnitSphereAreas) {
  EXPECT_NEAR(unit_sphere_area(0), 2.0, 1e-15);
  EXPECT_NEAR(unit_sphere_area(1), 2 * pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(2), 4 * pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(3), 2 * pi * pi, 1e-13);
}

TEST(SphereArea, SinPowerIntegralMatchesQuadrature) {
  for (int m = 0; m <= 5; ++m) {
    for (double s : {0.1, 0.7, pi / 2}) {
      const double ref = oracle::gauss_kronrod([m](double x) { return std::pow(std::sin(x), m); }, 0.0, s);
      EXPECT_NEAR(sin_power_integral(m, s), ref, 1e-13) << m << " " << s;
    }
  }
}

class CenteredSphereGeometry : public ::testing::TestWithParam<int> {};

TEST_P(CenteredSphereGeometry, ExactOnGeodesicSpheres) {
  const int n = GetParam();
  const double rho = 0.7;
  const auto c = centered_sphere(n, 128, rho);
  const auto g = build_geometry(c);
  ASSERT_EQ(g.size(), 128u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (double k : g.principal(i)) EXPECT_NEAR(k, 1 / std::tan(rho), 1e-11) << "node " << i;
    EXPECT_NEAR(g.phiPrime[i], std::cos(rho), 1e-14);
    EXPECT_NEAR(g.u[i], std::sin(rho), 1e-12);
    EXPECT_NEAR(g.r[i], rho, 1e-14);
  }
  double area = 0;
  for (double a : g.areaElement) area += a;
  EXPECT_NEAR(area, unit_sphere_area(n) * std::pow(std::sin(rho), n), 1e-11);
  const double vol = unit_sphere_area(n) * oracle::gauss_kronrod([n](double s) { return std::pow(std::sin(s), n); },
                                                                 0.0, rho);
  EXPECT_NEAR(enclosed_volume(c), vol, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Dimensions, CenteredSphereGeometry, ::testing::Values(1, 2, 3, 4));

TEST(OracleSelfCheck, SphereCurvatureAndVolume) {
  for (int n : {1, 2}) {
    const oracle::RadialGraph s{n, 0.6, 0.0, 0};
    const auto p = oracle::fd_geometry(s, 1.1);
    EXPECT_NEAR(p.kappa[0], 1 / std::tan(0.6), 1e-9);
    if (n == 2) EXPECT_NEAR(p.kappa[1], 1 / std::tan(0.6), 1e-9);
    EXPECT_NEAR(oracle::enclosed_volume(s), oracle::sphere_W(n, 0, 0.6), 1e-12);
    const auto W = oracle::quermass(s);
    for (int k = 0; k <= n + 1; ++k) EXPECT_NEAR(W[k], oracle::sphere_W(n, k, 0.6), 1e-8) << n << " " << k;
  }
}

TEST(PerturbedCurve, CurvatureConvergesToFiniteDifferenceOracle) {
  const oracle::RadialGraph og{1, 0.8, 0.02, 3};
  double prev = 0;
  for (std::size_t N : {128, 256, 512}) {
    const auto g = build_geometry(perturbed_sphere(1, N, 0.8, 0.02, 3));
    double err = 0, errNu = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const auto p = oracle::fd_geometry(og, node_theta(1, N, i));
      err = std::max(err, std::abs(g.kappa[i] - p.kappa[0]));
      errNu = std::max(errNu, (g.nu[i] - p.normal).norm());
      EXPECT_NEAR(g.u[i], p.u, 1e-3);
    }
    EXPECT_LT(errNu, 1e-3);
    if (prev > 0) {
      EXPECT_GT(prev / err, 3.0) << "N " << N;
    }
    prev = err;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(PerturbedRevolution, PrincipalCurvaturesMatchEmbeddingOracle) {
  const oracle::RadialGraph og{2, 0.8, 0.05, 2};
  const std::size_t N = 257;
  const auto g = build_geometry(perturbed_sphere(2, N, 0.8, 0.05, 2));
  for (std::size_t i = 8; i + 8 < N; i += 8) {
    const auto p = oracle::fd_geometry(og, node_theta(2, N, i));
    EXPECT_NEAR(g.principal(i)[0], p.kappa[0], 2e-4) << "node " << i;
    EXPECT_NEAR(g.principal(i)[1], p.kappa[1], 2e-4) << "node " << i;
    EXPECT_NEAR(g.u[i], p.u, 1e-4);
    EXPECT_NEAR(g.phiPrime[i], p.phiPrime, 1e-14);
  }
}

TEST(PerturbedCurve, AreaAndVolumeMatchQuadrature) {
  for (int n : {1, 2}) {
    const double a = n == 1 ? 0.02 : 0.05;
    const int m = n == 1 ? 3 : 2;
    const oracle::RadialGraph og{n, 0.8, a, m};
    const auto c = perturbed_sphere(n, n == 1 ? 512 : 513, 0.8, a, m);
    const auto g = build_geometry(c);
    std::vector<double> one(g.size(), 1.0);
    const double area = oracle::surface_integral(og, [](const oracle::PointGeometry&) { return 1.0; });
    EXPECT_NEAR(integrate(g, one) / area, 1.0, 1e-5) << n;
    EXPECT_NEAR(enclosed_volume(c) / oracle::enclosed_volume(og), 1.0, 1e-6) << n;
  }
}

TEST(PerturbedCurve, VolumeAgreesWithSphericalPolygon) {
  const auto c = perturbed_sphere(1, 256, 0.8, 0.02, 3);
  const double geodesic = oracle::polygon_area(c.nodes, false);
  const double arcs = oracle::polygon_area(c.nodes, true);
  const double v = enclosed_volume(c);
  // The geodesic polygon undercuts a convex curve by O(h^2); the arc version
  // matches the circle interpolant to higher order.
  EXPECT_GT(v, geodesic);
  EXPECT_LT(std::abs(v - arcs), 0.05 * std::abs(v - geodesic));
}

TEST(Validation, RejectsBadInput) {
  expect_kind(ErrorKind::InvalidArgument, [] {
    ProfileCurve c = centered_sphere(1, 32, 0.5);
    c.nodes[3] *= 1.01;
    build_geometry(c);
  });
  expect_kind(ErrorKind::InvalidArgument, [] {
    ProfileCurve c = centered_sphere(1, 32, 0.5);
    c.nodes.resize(10);
    build_geometry(c);
  });
  expect_kind(ErrorKind::HemisphereViolation, [] {
    ProfileCurve c = centered_sphere(1, 32, 0.5);
    c.nodes[5] = Vec3(1, 0, -0.1).normalized();
    build_geometry(c);
  });
  expect_kind(ErrorKind::DegenerateCurve, [] {
    ProfileCurve c = centered_sphere(1, 32, 0.5);
    c.nodes[6] = c.nodes[5];
    build_geometry(c);
  });
  expect_kind(ErrorKind::GridMismatch, [] {
    const auto g = build_geometry(centered_sphere(1, 32, 0.5));
    std::vector<double> f(31, 1.0);
    integrate(g, f);
  });
}

TEST(Validation, ArcEndpointsMustSitOnAxis) {
  ProfileCurve c = centered_sphere(2, 33, 0.5);
  c.nodes.front() = Vec3(std::sin(0.5) * std::cos(0.05), std::sin(0.5) * std::sin(0.05), std::cos(0.5));
  EXPECT_THROW(build_geometry(c), Error);
}

TEST(Orientation, ReversedLoopGivesSameGeometry) {
  auto c = perturbed_sphere(1, 128, 0.7, 0.02, 3);
  const auto g = build_geometry(c);
  std::reverse(c.nodes.begin(), c.nodes.end());
  const auto h = build_geometry(c);
  EXPECT_EQ(g.orientation, -h.orientation);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.kappa[i], h.kappa[g.size() - 1 - i], 1e-12);
  EXPECT_NEAR(enclosed_volume(c), enclosed_volume(perturbed_sphere(1, 128, 0.7, 0.02, 3)), 1e-13);
}

TEST(Ambient, RoundTrip) {
  for (int n : {1, 3}) {
    const auto c = perturbed_sphere(n, 40, 0.6, 0.03, 2);
    std::vector<AmbientPoint> pts;
    for (std::size_t i = 0; i < c.size(); ++i) {
      pts.push_back(c.ambient(i));
      ASSERT_EQ(pts.back().coords.size(), static_cast<std::size_t>(n) + 2);
      EXPECT_EQ(pts.back().coords.back(), c.nodes[i][2]);
    }
    const auto d = ProfileCurve::from_ambient(n, pts);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_LT((c.nodes[i] - d.nodes[i]).norm(), 1e-15);
  }
}

TEST(Fit, RecoversOffCenterSphere) {
  for (int n : {1, 2}) {
    const auto fit = fit_sphere(off_center_sphere(n, 101, pi / 6, pi / 5));
    EXPECT_NEAR(fit.radius, pi / 6, 1e-12);
    EXPECT_NEAR(fit.centerDistance, pi / 5, 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
  }
  const auto bumpy = fit_sphere(perturbed_sphere(1, 256, 0.8, 0.02, 3));
  EXPECT_NEAR(bumpy.residual, 0.02, 1e-3);
}

TEST(Resample, UniformizesWithoutChangingShape) {
  // Squeeze half the nodes, then resample.
  auto c = perturbed_sphere(1, 200, 0.7, 0.02, 3);
  const oracle::RadialGraph og{1, 0.7, 0.02, 3};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double s = 2 * pi * (i + 0.5) / c.size();
    const double t = s + 0.3 * std::sin(s);
    c.nodes[i] = og.profile(t);
  }
  ASSERT_GT(cell_ratio(c), 1.5);
  const auto r = resample_uniform(c);
  EXPECT_LT(cell_ratio(r), 1.01);
  EXPECT_EQ(r.size(), c.size());
  for (const auto& x : r.nodes) {
    const double theta = std::atan2(x[1], x[0]);
    EXPECT_NEAR(std::acos(x[2]), og.r(theta), 1e-7);
  }
  EXPECT_NEAR(enclosed_volume(r), oracle::enclosed_volume(og), 1e-7);
}

TEST(Resample, KeepsArcEndpointsOnAxis) {
  auto c = perturbed_sphere(2, 65, 0.7, 0.03, 2);
  const auto r = resample_uniform(c);
  EXPECT_EQ(r.nodes.front()[1], 0.0);
  EXPECT_EQ(r.nodes.back()[1], 0.0);
  EXPECT_LT(cell_ratio(r), 1.01);
  EXPECT_NO_THROW(build_geometry(r));
}

TEST(Normalize, PinsToUnitSphere) {
  auto c = centered_sphere(1, 32, 0.5);
  for (auto& x : c.nodes) x *= 1.0 + 1e-9;
  normalize_nodes(c);
  for (const auto& x : c.nodes) EXPECT_NEAR(x.norm(), 1.0, 1e-15);
  c.nodes[0] = Vec3(0, 1, -1e-3);
  EXPECT_THROW(normalize_nodes(c), Error);
}
