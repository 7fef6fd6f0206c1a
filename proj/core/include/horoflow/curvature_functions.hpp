#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace horoflow {

struct PointwiseGeometry;

/// Unnormalized elementary symmetric polynomial sigma_k of the entries.
/// sigma_0 = 1 and sigma_k = 0 for k > size.
double elementary_symmetric(std::span<const double> kappa, int k);

/// Binomial coefficient as a double (exact for the small n used here).
double binomial(int n, int k);

/// Normalized elementary symmetric value H_k = sigma_k / C(n, k), so that
/// H_k(1, ..., 1) = 1.
double h_k(std::span<const double> kappa, int k);

/// Fills out[0..n] with H_0..H_n in one pass.
void all_h(std::span<const double> kappa, std::span<double> out);

/// F = H_k / H_{k-1}; throws OutsideGamma unless every entry is positive.
double quotient_F(std::span<const double> kappa, int k);

/// dF/dkappa_i for F = H_k / H_{k-1}, using
/// d sigma_k / d kappa_i = sigma_{k-1}(kappa with kappa_i removed).
std::vector<double> quotient_F_gradient(std::span<const double> kappa, int k);
void quotient_F_gradient(std::span<const double> kappa, int k, std::span<double> out);

enum class CurvatureKind { Quotient, MeanCurvature, Custom };

/// The speed function F driving the flow, viewed as a symmetric function of
/// the principal curvatures.
class CurvatureFunction {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

  static CurvatureFunction quotient(int k);
  static CurvatureFunction mean_curvature();
  /// Without an explicit gradient, central differences are used.
  static CurvatureFunction custom(std::string label, ValueFn value, GradientFn gradient = {});

  double operator()(std::span<const double> kappa) const;
  void gradient(std::span<const double> kappa, std::span<double> out) const;
  std::vector<double> gradient(std::span<const double> kappa) const;

  CurvatureKind kind() const noexcept { return kind_; }
  /// Quotient index (1 for the mean curvature, 0 for custom functions).
  int k() const noexcept { return k_; }
  const std::string& label() const noexcept { return label_; }

 private:
  CurvatureFunction() = default;

  CurvatureKind kind_ = CurvatureKind::Custom;
  int k_ = 0;
  std::string label_;
  ValueFn value_;
  GradientFn gradient_;
};

struct ValidationCheck {
  std::string name;
  std::size_t samples = 0;
  double worstViolation = 0.0;
  double threshold = 0.0;
  bool pass() const { return worstViolation <= threshold; }
};

struct ValidationReport {
  std::string function;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  const ValidationCheck* find(const std::string& name) const;
  std::string to_text() const;
};

/// Randomized numerical sweep of the structural requirements on F over the
/// positive cone: strict monotonicity, F(1,...,1) = 1, 1-homogeneity,
/// midpoint concavity and midpoint concavity of kappa -> 1 / F(1 / kappa).
/// Violations are reported, never thrown.
ValidationReport validate_assumptions(const CurvatureFunction& F, int n, std::size_t samples,
                                      std::uint64_t seed, double threshold = 1e-8);

/// Worst relative violation of H_{k-1} H_{k+1} <= H_k^2 over random points
/// of the positive cone, over all 1 <= k <= n - 1.
ValidationCheck newton_maclaurin_check(int n, std::size_t samples, std::uint64_t seed,
                                       double threshold = 1e-12);

struct HoroMargin {
  double sigmaMin = 0.0;
  std::size_t argminNode = 0;
  /// Eigenvalues phi' kappa_i + u - 1 of the horo-tensor, N x n row-major.
  std::vector<double> perNode;
};

/// Horo-convexity certificate. The geometry is horo-convex iff sigmaMin >= 0.
HoroMargin horo_margin(const PointwiseGeometry& geom);

}  // namespace horoflow
