#include "horoflow/curvature_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "horoflow/errors.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

namespace {

// e[j] = sigma_j of the entries of kappa other than `skip`, j = 0..k.
void symmetric_table(std::span<const double> kappa, int k, std::size_t skip, std::span<double> e) {
  std::fill(e.begin(), e.end(), 0.0);
  e[0] = 1.0;
  int used = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (i == skip) continue;
    ++used;
    for (int j = std::min(k, used); j >= 1; --j) e[static_cast<std::size_t>(j)] += kappa[i] * e[static_cast<std::size_t>(j - 1)];
  }
}

constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

void require_gamma_plus(std::span<const double> kappa) {
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (!(kappa[i] > 0.0)) {
      throw Error(ErrorKind::OutsideGamma,
                  fmt::format("principal curvature kappa_{} = {} is not positive", i + 1, kappa[i]));
    }
  }
}

void require_quotient_index(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("quotient index k = {} outside 1..{}", k, n));
  }
}

}  // namespace

double elementary_symmetric(std::span<const double> kappa, int k) {
  if (k < 0) return 0.0;
  if (static_cast<std::size_t>(k) > kappa.size()) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1);
  symmetric_table(kappa, k, kNoSkip, e);
  return e[static_cast<std::size_t>(k)];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

double h_k(std::span<const double> kappa, int k) {
  const int n = static_cast<int>(kappa.size());
  if (k == 0) return 1.0;
  if (k < 0 || k > n) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("H_k index k = {} outside 0..{}", k, n));
  }
  return elementary_symmetric(kappa, k) / binomial(n, k);
}

void all_h(std::span<const double> kappa, std::span<double> out) {
  const int n = static_cast<int>(kappa.size());
  if (out.size() != kappa.size() + 1) {
    throw Error(ErrorKind::GridMismatch, "all_h output must hold n + 1 values");
  }
  symmetric_table(kappa, n, kNoSkip, out);
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] /= binomial(n, k);
  out[0] = 1.0;
}

double quotient_F(std::span<const double> kappa, int k) {
  require_quotient_index(kappa.size(), k);
  require_gamma_plus(kappa);
  return h_k(kappa, k) / h_k(kappa, k - 1);
}

void quotient_F_gradient(std::span<const double> kappa, int k, std::span<double> out) {
  const std::size_t n = kappa.size();
  require_quotient_index(n, k);
  require_gamma_plus(kappa);
  if (out.size() != n) throw Error(ErrorKind::GridMismatch, "gradient output must hold n values");

  const int nn = static_cast<int>(n);
  // F = c * sigma_k / sigma_{k-1} with c = C(n, k-1) / C(n, k).
  const double c = binomial(nn, k - 1) / binomial(nn, k);
  const double sk = elementary_symmetric(kappa, k);
  const double skm1 = elementary_symmetric(kappa, k - 1);
  std::vector<double> e(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    symmetric_table(kappa, k - 1, i, e);
    const double dsk = e[static_cast<std::size_t>(k - 1)];
    const double dskm1 = k >= 2 ? e[static_cast<std::size_t>(k - 2)] : 0.0;
    out[i] = c * (dsk * skm1 - sk * dskm1) / (skm1 * skm1);
  }
}

std::vector<double> quotient_F_gradient(std::span<const double> kappa, int k) {
  std::vector<double> out(kappa.size());
  quotient_F_gradient(kappa, k, out);
  return out;
}

CurvatureFunction CurvatureFunction::quotient(int k) {
  CurvatureFunction f;
  f.kind_ = CurvatureKind::Quotient;
  f.k_ = k;
  f.label_ = fmt::format("quotient(k={})", k);
  f.value_ = [k](std::span<const double> kappa) { return quotient_F(kappa, k); };
  f.gradient_ = [k](std::span<const double> kappa, std::span<double> out) {
    quotient_F_gradient(kappa, k, out);
  };
  return f;
}

CurvatureFunction CurvatureFunction::mean_curvature() {
  CurvatureFunction f = quotient(1);
  f.kind_ = CurvatureKind::MeanCurvature;
  f.label_ = "mean";
  return f;
}

CurvatureFunction CurvatureFunction::custom(std::string label, ValueFn value, GradientFn gradient) {
  CurvatureFunction f;
  f.kind_ = CurvatureKind::Custom;
  f.k_ = 0;
  f.label_ = std::move(label);
  f.value_ = std::move(value);
  if (gradient) {
    f.gradient_ = std::move(gradient);
  } else {
    auto v = f.value_;
    f.gradient_ = [v](std::span<const double> kappa, std::span<double> out) {
      std::vector<double> probe(kappa.begin(), kappa.end());
      for (std::size_t i = 0; i < probe.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(probe[i]));
        const double saved = probe[i];
        probe[i] = saved + h;
        const double up = v(probe);
        probe[i] = saved - h;
        const double down = v(probe);
        probe[i] = saved;
        out[i] = (up - down) / (2.0 * h);
      }
    };
  }
  return f;
}

double CurvatureFunction::operator()(std::span<const double> kappa) const { return value_(kappa); }

void CurvatureFunction::gradient(std::span<const double> kappa, std::span<double> out) const {
  gradient_(kappa, out);
}

std::vector<double> CurvatureFunction::gradient(std::span<const double> kappa) const {
  std::vector<double> out(kappa.size());
  gradient_(kappa, out);
  return out;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass(); });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::to_text() const {
  std::string out = fmt::format("# curvature function validation\nfunction {}\nn {}\nseed {}\n", function, n, seed);
  for (const auto& c : checks) {
    out += fmt::format("check {} samples={} worst={:.6e} threshold={:.1e} {}\n", c.name, c.samples,
                       c.worstViolation, c.threshold, c.pass() ? "PASS" : "FAIL");
  }
  out += fmt::format("overall {}\n", all_pass() ? "PASS" : "FAIL");
  return out;
}

namespace {

std::vector<double> random_gamma_point(std::mt19937_64& rng, int n) {
  // Log-uniform entries in [0.1, 10] cover both clustered and spread spectra.
  std::uniform_real_distribution<double> logk(std::log(0.1), std::log(10.0));
  std::vector<double> kappa(static_cast<std::size_t>(n));
  for (auto& k : kappa) k = std::exp(logk(rng));
  return kappa;
}

}  // namespace

ValidationReport validate_assumptions(const CurvatureFunction& F, int n, std::size_t samples,
                                      std::uint64_t seed, double threshold) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (samples < 100) throw Error(ErrorKind::InvalidArgument, "validate_assumptions needs >= 100 samples");

  ValidationReport report;
  report.function = F.label();
  report.n = n;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t dim = static_cast<std::size_t>(n);

  double monotone = 0.0, homogeneous = 0.0, concave = 0.0, inverseConcave = 0.0;
  std::vector<double> grad(dim), mid(dim), inva(dim), invb(dim), invmid(dim), scaled(dim);

  const auto inverse_transform = [&F](std::span<const double> k, std::vector<double>& tmp) {
    for (std::size_t i = 0; i < k.size(); ++i) tmp[i] = 1.0 / k[i];
    return 1.0 / F(tmp);
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = random_gamma_point(rng, n);
    const auto b = random_gamma_point(rng, n);

    F.gradient(a, grad);
    for (double g : grad) monotone = std::max(monotone, -g);

    const double fa = F(a);
    for (double lambda : {0.5, 2.0}) {
      for (std::size_t i = 0; i < dim; ++i) scaled[i] = lambda * a[i];
      const double expect = lambda * fa;
      homogeneous = std::max(homogeneous, std::abs(F(scaled) - expect) / std::max(1.0, std::abs(expect)));
    }

    for (std::size_t i = 0; i < dim; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    concave = std::max(concave, 0.5 * (fa + F(b)) - F(mid));

    const double ga = inverse_transform(a, inva);
    const double gb = inverse_transform(b, invb);
    const double gm = inverse_transform(mid, invmid);
    inverseConcave = std::max(inverseConcave, 0.5 * (ga + gb) - gm);
  }

  std::vector<double> ones(dim, 1.0);
  const double normalization = std::abs(F(ones) - 1.0);

  report.checks.push_back({"monotone", samples, std::max(0.0, monotone), threshold});
  report.checks.push_back({"normalized", 1, normalization, threshold});
  report.checks.push_back({"homogeneous", samples, homogeneous, threshold});
  report.checks.push_back({"concave", samples, std::max(0.0, concave), threshold});
  report.checks.push_back({"inverse-concave", samples, std::max(0.0, inverseConcave), threshold});
  return report;
}

ValidationCheck newton_maclaurin_check(int n, std::size_t samples, std::uint64_t seed, double threshold) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "Newton-MacLaurin check needs n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto kappa = random_gamma_point(rng, n);
    all_h(kappa, h);
    for (int k = 1; k <= n - 1; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const double gap = (h[kk - 1] * h[kk + 1] - h[kk] * h[kk]) / (h[kk] * h[kk]);
      worst = std::max(worst, gap);
    }
  }
  return {"newton-maclaurin", samples, std::max(0.0, worst), threshold};
}

HoroMargin horo_margin(const PointwiseGeometry& geom) {
  HoroMargin out;
  out.perNode = geom.sigma;
  out.sigmaMin = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(geom.n);
  for (std::size_t i = 0; i < geom.sigma.size(); ++i) {
    if (geom.sigma[i] < out.sigmaMin) {
      out.sigmaMin = geom.sigma[i];
      out.argminNode = i / n;
    }
  }
  return out;
}

}  // namespace horoflow
