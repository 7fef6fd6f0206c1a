#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/shapes.hpp"
#include "oracles.hpp"

using namespace horoflow;

namespace {

// Sum over k-subsets by bitmask.
double brute_sigma(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  double s = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double p = 1;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) p *= x[i];
    s += p;
  }
  return s;
}

std::vector<double> random_cone_point(std::mt19937_64& rng, int n) {
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

}  // namespace

TEST(ElementarySymmetric, MatchesSubsetSums) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  for (int n = 1; n <= 6; ++n) {
    std::vector<double> x(n);
    for (auto& v : x) v = d(rng);
    for (int k = 0; k <= n; ++k) {
      EXPECT_NEAR(elementary_symmetric(x, k), brute_sigma(x, k), 1e-12) << n << " " << k;
      EXPECT_NEAR(h_k(x, k), brute_sigma(x, k) / binomial(n, k), 1e-12);
    }
  }
}

TEST(ElementarySymmetric, NormalizedAtUmbilicPoint) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<double> ones(n, 1.0), out(n + 1);
    all_h(ones, out);
    for (double h : out) EXPECT_DOUBLE_EQ(h, 1.0);
    for (int k = 1; k <= n; ++k) EXPECT_DOUBLE_EQ(quotient_F(ones, k), 1.0);
  }
  EXPECT_DOUBLE_EQ(binomial(5, 2), 10.0);
  EXPECT_DOUBLE_EQ(binomial(4, 0), 1.0);
}

TEST(Quotient, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int rep = 0; rep < 20; ++rep) {
        const auto x = random_cone_point(rng, n);
        const auto g = quotient_F_gradient(x, k);
        const auto ref = oracle::fd_gradient([k](const std::vector<double>& y) { return quotient_F(y, k); }, x);
        for (int i = 0; i < n; ++i) EXPECT_NEAR(g[i], ref[i], 1e-7 * (1 + std::abs(ref[i])));
        // Euler relation for a 1-homogeneous function.
        EXPECT_NEAR(std::inner_product(g.begin(), g.end(), x.begin(), 0.0), quotient_F(x, k), 1e-10);
      }
    }
  }
}

TEST(CurvatureFunction, MeanCurvatureIsFirstQuotient) {
  const auto H = CurvatureFunction::mean_curvature();
  const auto Q = CurvatureFunction::quotient(1);
  const std::vector<double> x{0.5, 2.0, 3.5};
  EXPECT_DOUBLE_EQ(H(x), 2.0);
  EXPECT_DOUBLE_EQ(Q(x), 2.0);
  EXPECT_EQ(H.k(), 1);
  EXPECT_EQ(Q.kind(), CurvatureKind::Quotient);
}

TEST(CurvatureFunction, CustomWithoutGradientUsesDifferences) {
  const auto F = CurvatureFunction::custom("geometric", [](std::span<const double> k) {
    double p = 1;
    for (double v : k) p *= v;
    return std::pow(p, 1.0 / k.size());
  });
  const std::vector<double> x{1.0, 4.0};
  const auto g = F.gradient(x);
  EXPECT_NEAR(F(x), 2.0, 1e-15);
  EXPECT_NEAR(g[0], 1.0, 1e-6);
  EXPECT_NEAR(g[1], 0.25, 1e-6);
  EXPECT_EQ(F.k(), 0);
  EXPECT_EQ(F.label(), "geometric");
}

TEST(Assumptions, QuotientsPass) {
  for (int n : {2, 3, 4}) {
    for (int k = 1; k <= n; ++k) {
      const auto rep = validate_assumptions(CurvatureFunction::quotient(k), n, 2000, 11);
      EXPECT_TRUE(rep.all_pass()) << rep.to_text();
      ASSERT_NE(rep.find("concave"), nullptr);
      EXPECT_EQ(rep.find("concave")->samples, 2000u);
    }
  }
}

TEST(Assumptions, MaxFailsConcavity) {
  const auto F = CurvatureFunction::custom("max", [](std::span<const double> k) {
    return *std::max_element(k.begin(), k.end());
  });
  const auto rep = validate_assumptions(F, 3, 2000, 5);
  EXPECT_FALSE(rep.all_pass());
  ASSERT_NE(rep.find("concave"), nullptr);
  EXPECT_FALSE(rep.find("concave")->pass());
}

TEST(Assumptions, ScaledFunctionFailsNormalization) {
  const auto F = CurvatureFunction::custom("twice-mean", [](std::span<const double> k) {
    return 2.0 * std::accumulate(k.begin(), k.end(), 0.0) / k.size();
  });
  const auto rep = validate_assumptions(F, 3, 500, 5);
  ASSERT_NE(rep.find("normalized"), nullptr);
  EXPECT_FALSE(rep.find("normalized")->pass());
  EXPECT_TRUE(rep.find("homogeneous")->pass());
}

TEST(Assumptions, QuadraticFailsHomogeneity) {
  const auto F = CurvatureFunction::custom("square-mean", [](std::span<const double> k) {
    double s = 0;
    for (double v : k) s += v * v;
    return s / k.size();
  });
  const auto rep = validate_assumptions(F, 2, 500, 5);
  EXPECT_FALSE(rep.find("homogeneous")->pass());
}

TEST(NewtonMaclaurin, NoViolations) {
  for (int n : {2, 3, 4}) {
    const auto c = newton_maclaurin_check(n, 10000, 1);
    EXPECT_LE(c.worstViolation, 1e-12);
    EXPECT_EQ(c.samples, 10000u);
  }
}

TEST(HoroMargin, ClosedFormOnCenteredSpheres) {
  for (int n : {1, 2}) {
    for (double rho : {0.3, 0.7, 1.2}) {
      const auto m = horo_margin(build_geometry(centered_sphere(n, 64, rho)));
      EXPECT_NEAR(m.sigmaMin, 1 / std::sin(rho) - 1, 1e-11);
      EXPECT_EQ(m.perNode.size(), 64u * n);
    }
  }
}

TEST(HoroMargin, LocatesNegativeNode) {
  const auto m = horo_margin(build_geometry(perturbed_sphere(1, 256, 0.8, 0.1, 3)));
  EXPECT_LT(m.sigmaMin, -1.0);
  EXPECT_EQ(m.perNode[m.argminNode], m.sigmaMin);
}
