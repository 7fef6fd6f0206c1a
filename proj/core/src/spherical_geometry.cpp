#include "horoflow/spherical_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/detail/stencil.hpp"
#include "horoflow/errors.hpp"

namespace horoflow {

using std::numbers::pi;

AmbientPoint ProfileCurve::ambient(std::size_t i) const {
  AmbientPoint p;
  p.coords.assign(static_cast<std::size_t>(n) + 2, 0.0);
  const Vec3& x = nodes[i];
  p.coords.front() = x[0];
  p.coords[1] = x[1];
  p.coords.back() = x[2];
  return p;
}

ProfileCurve ProfileCurve::from_ambient(int n, std::span<const AmbientPoint> points) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  ProfileCurve c;
  c.n = n;
  c.nodes.reserve(points.size());
  const auto dim = static_cast<std::size_t>(n) + 2;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& q = points[i].coords;
    if (q.size() != dim) {
      throw Error(ErrorKind::Parse, fmt::format("point {} has {} coordinates, expected {}", i, q.size(), dim));
    }
    for (std::size_t j = 2; j + 1 < dim; ++j) {
      if (std::abs(q[j]) > 1e-12) {
        throw Error(ErrorKind::Parse, fmt::format("point {} leaves the profile 2-sphere", i));
      }
    }
    c.nodes.emplace_back(q.front(), q[1], q.back());
  }
  return c;
}

std::vector<double> PointwiseGeometry::H_column(int k) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = H(i, k);
  return out;
}

double unit_sphere_area(int m) {
  const double half = 0.5 * static_cast<double>(m + 1);
  return 2.0 * std::pow(pi, half) / std::tgamma(half);
}

double sin_power_integral(int m, double s) {
  if (m == 0) return s;
  if (m == 1) return 1.0 - std::cos(s);
  const double c = std::cos(s), sn = std::sin(s);
  return (-std::pow(sn, m - 1) * c + static_cast<double>(m - 1) * sin_power_integral(m - 2, s)) /
         static_cast<double>(m);
}

namespace detail {

Vec3 reflect_axis(const Vec3& v) { return {v[0], -v[1], v[2]}; }

double geodesic_distance(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

Neighbours neighbours(const ProfileCurve& curve, std::size_t i) {
  const std::size_t N = curve.size();
  Neighbours nb;
  if (curve.closure() == Closure::Loop) {
    nb.prev = curve.nodes[(i + N - 1) % N];
    nb.next = curve.nodes[(i + 1) % N];
    return nb;
  }
  if (i == 0) {
    nb.prev = reflect_axis(curve.nodes[1]);
    nb.prevIsGhost = true;
  } else {
    nb.prev = curve.nodes[i - 1];
  }
  if (i + 1 == N) {
    nb.next = reflect_axis(curve.nodes[N - 2]);
    nb.nextIsGhost = true;
  } else {
    nb.next = curve.nodes[i + 1];
  }
  return nb;
}

int orientation_sign(const ProfileCurve& curve, const Vec3& center) {
  double s = 0.0;
  const std::size_t N = curve.size();
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    s += curve.nodes[e].cross(curve.nodes[(e + 1) % N]).dot(center);
  }
  if (!(std::abs(s) > 0.0)) throw Error(ErrorKind::DegenerateCurve, "curve encloses no area about its centre");
  return s > 0.0 ? 1 : -1;
}

NodeCircle osculating_circle(const Vec3& prev, const Vec3& x, const Vec3& next, int orientation, std::size_t index) {
  const Vec3 cr = (next - x).cross(prev - x);
  const double len = cr.norm();
  if (!(len > 1e-300)) {
    throw Error(ErrorKind::DegenerateCurve, "node and its neighbours are collinear in R^3",
                static_cast<std::ptrdiff_t>(index));
  }
  NodeCircle c;
  c.center = (static_cast<double>(orientation) / len) * cr;
  c.cosRadius = std::clamp(c.center.dot(x), -1.0 + 1e-16, 1.0 - 1e-16);
  c.sinRadius = std::sqrt((1.0 - c.cosRadius) * (1.0 + c.cosRadius));
  return c;
}

std::vector<NodeCircle> node_circles(const ProfileCurve& curve, int orientation) {
  std::vector<NodeCircle> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto nb = neighbours(curve, i);
    out.push_back(osculating_circle(nb.prev, curve.nodes[i], nb.next, orientation, i));
  }
  return out;
}

double hat_arc_weight(const NodeCircle& c, const Vec3& from, const Vec3& to, int n) {
  Vec3 e1 = from - c.cosRadius * c.center;
  e1.normalize();
  const Vec3 e2 = c.center.cross(e1);
  const Vec3 t = to - c.cosRadius * c.center;
  const double beta = std::atan2(t.dot(e2), t.dot(e1));
  const double length = c.sinRadius * std::abs(beta);
  if (n == 1) return 0.5 * length;
  const auto density = [&](double s) {
    const double b = c.cosRadius * c.center[1] + c.sinRadius * (std::cos(s * beta) * e1[1] + std::sin(s * beta) * e2[1]);
    return (1.0 - s) * std::pow(b, n - 1);
  };
  return length * boost::math::quadrature::gauss<double, 5>::integrate(density, 0.0, 1.0);
}

}  // namespace detail

using namespace detail;

Vec3 star_center(const ProfileCurve& curve) {
  Vec3 mean = Vec3::Zero();
  for (const auto& x : curve.nodes) mean += x;
  if (curve.closure() == Closure::AxisArc) mean[1] = 0.0;
  const double len = mean.norm();
  if (!(len > 1e-12)) throw Error(ErrorKind::DegenerateCurve, "mean node direction vanishes");
  return mean / len;
}

namespace {

void validate_nodes(const ProfileCurve& curve, const GeometryOptions& options) {
  const std::size_t N = curve.size();
  if (curve.n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (N < kMinNodes) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("need at least {} nodes, got {}", kMinNodes, N));
  }
  for (std::size_t i = 0; i < N; ++i) {
    const Vec3& x = curve.nodes[i];
    if (!x.allFinite()) throw Error(ErrorKind::DegenerateCurve, "non-finite node", static_cast<std::ptrdiff_t>(i));
    if (std::abs(x.norm() - 1.0) > options.normalizationTol) {
      throw Error(ErrorKind::InvalidArgument, "node is not on the unit sphere", static_cast<std::ptrdiff_t>(i));
    }
    if (!(x[2] > 0.0)) {
      throw Error(ErrorKind::HemisphereViolation, fmt::format("phi' = {} <= 0", x[2]), static_cast<std::ptrdiff_t>(i));
    }
  }
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    if ((curve.nodes[(e + 1) % N] - curve.nodes[e]).norm() < options.degenerateTol) {
      throw Error(ErrorKind::DegenerateCurve, "consecutive nodes coincide", static_cast<std::ptrdiff_t>(e));
    }
  }
  if (curve.closure() == Closure::AxisArc) {
    constexpr double kAxisTol = 1e-9;
    if (std::abs(curve.nodes.front()[1]) > kAxisTol || std::abs(curve.nodes.back()[1]) > kAxisTol) {
      throw Error(ErrorKind::InvalidArgument, "profile endpoints must lie on the rotation axis");
    }
    for (std::size_t i = 1; i + 1 < N; ++i) {
      if (!(curve.nodes[i][1] > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "interior profile node on or across the axis",
                    static_cast<std::ptrdiff_t>(i));
      }
    }
  }
}

}  // namespace

PointwiseGeometry build_geometry(const ProfileCurve& curve, const GeometryOptions& options) {
  validate_nodes(curve, options);

  const std::size_t N = curve.size();
  const int n = curve.n;
  const auto nd = static_cast<std::size_t>(n);
  const bool loop = curve.closure() == Closure::Loop;

  PointwiseGeometry g;
  g.n = n;
  g.closure = curve.closure();
  g.starCenter = star_center(curve);
  g.orientation = orientation_sign(curve, g.starCenter);
  g.circles = node_circles(curve, g.orientation);

  g.r.resize(N);
  g.phi.resize(N);
  g.phiPrime.resize(N);
  g.nu.resize(N);
  g.tangent.resize(N);
  g.u.resize(N);
  g.kappa.resize(N * nd);
  g.areaElement.resize(N);
  g.hk.resize(N * (nd + 1));
  g.sigma.resize(N * nd);
  g.edgeLength.resize(curve.edge_count());

  const double orbitFactor = n == 1 ? 1.0 : unit_sphere_area(n - 1);

  for (std::size_t e = 0; e < g.edgeLength.size(); ++e) {
    g.edgeLength[e] = geodesic_distance(curve.nodes[e], curve.nodes[(e + 1) % N]);
  }

  for (std::size_t i = 0; i < N; ++i) {
    const Vec3& x = curve.nodes[i];
    const NodeCircle& c = g.circles[i];

    g.phiPrime[i] = x[2];
    g.phi[i] = std::hypot(x[0], x[1]);
    g.r[i] = std::atan2(g.phi[i], g.phiPrime[i]);

    Vec3 nu = (c.cosRadius * x - c.center) / c.sinRadius;
    nu -= nu.dot(x) * x;
    nu.normalize();
    g.nu[i] = nu;
    g.tangent[i] = static_cast<double>(g.orientation) * x.cross(nu);
    g.u[i] = -nu[2];

    const double profileKappa = c.cosRadius / c.sinRadius;
    double* k = g.kappa.data() + i * nd;
    k[0] = profileKappa;
    if (n >= 2) {
      const bool onAxis = !loop && (i == 0 || i + 1 == N);
      const double rotational = onAxis ? profileKappa : nu[1] / x[1];
      for (std::size_t j = 1; j < nd; ++j) k[j] = rotational;
    }

    all_h(g.principal(i), std::span<double>(g.hk.data() + i * (nd + 1), nd + 1));
    for (std::size_t j = 0; j < nd; ++j) g.sigma[i * nd + j] = g.phiPrime[i] * k[j] + g.u[i] - 1.0;

    const auto nb = neighbours(curve, i);
    double w = 0.0;
    if (!nb.prevIsGhost) w += hat_arc_weight(c, x, nb.prev, n);
    if (!nb.nextIsGhost) w += hat_arc_weight(c, x, nb.next, n);
    g.areaElement[i] = orbitFactor * w;
  }
  return g;
}

double integrate(const PointwiseGeometry& geom, std::span<const double> f) {
  if (f.size() != geom.areaElement.size()) {
    throw Error(ErrorKind::GridMismatch,
                fmt::format("integrand has {} values for a grid of {}", f.size(), geom.areaElement.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * geom.areaElement[i];
  return s;
}

namespace {

double wrap_angle(double a) {
  while (a > pi) a -= 2.0 * pi;
  while (a <= -pi) a += 2.0 * pi;
  return a;
}

// Distance along the ray cos(s) p + sin(s) e at which the ray meets the plane
// <y, normal> = offset, choosing the root nearest `guess`.
double ray_hit(const Vec3& p, const Vec3& e, const Vec3& normal, double offset, double guess) {
  const double A = p.dot(normal), B = e.dot(normal);
  const double C = std::hypot(A, B);
  const double q = offset / C;
  if (!(std::abs(q) <= 1.0)) return guess;
  const double delta = std::atan2(B, A);
  const double spread = std::acos(q);
  double best = guess, bestGap = std::numeric_limits<double>::infinity();
  for (double s : {delta + spread, delta - spread}) {
    s = std::fmod(s, 2.0 * pi);
    if (s < 0.0) s += 2.0 * pi;
    const double gap = std::abs(s - guess);
    if (gap < bestGap) {
      bestGap = gap;
      best = s;
    }
  }
  return best;
}

}  // namespace

double enclosed_volume(const ProfileCurve& curve) {
  GeometryOptions options;
  validate_nodes(curve, options);

  const int n = curve.n;
  const std::size_t N = curve.size();
  const bool loop = curve.closure() == Closure::Loop;
  const Vec3 p = star_center(curve);
  const int orientation = orientation_sign(curve, p);
  const auto circles = node_circles(curve, orientation);

  Vec3 et;
  if (loop) {
    const Vec3 seed = std::abs(p[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    et = (seed - seed.dot(p) * p).normalized();
  } else {
    et = Vec3(p[2], 0.0, -p[0]).normalized();
  }
  const Vec3 e2 = p.cross(et);
  const auto azimuth = [&](const Vec3& x) { return std::atan2(x.dot(e2), x.dot(et)); };
  const double orbitFactor = n == 1 ? 1.0 : unit_sphere_area(n - 1);

  double total = 0.0, sweep = 0.0;
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    const std::size_t j = (e + 1) % N;
    const Vec3& xa = curve.nodes[e];
    const Vec3& xb = curve.nodes[j];
    const double a = azimuth(xa);
    const double dpsi = wrap_angle(azimuth(xb) - a);
    if (!(dpsi * orientation > 0.0)) {
      throw Error(ErrorKind::NotStarshaped, "radial map about the star centre is not monotone",
                  static_cast<std::ptrdiff_t>(e));
    }
    sweep += std::abs(dpsi);
    const Vec3 chordNormal = xa.cross(xb).normalized();

    for (const NodeCircle* c : {&circles[e], &circles[j]}) {
      const auto integrand = [&](double psi) {
        const Vec3 dir = std::cos(psi) * et + std::sin(psi) * e2;
        double guess = std::atan2(-p.dot(chordNormal), dir.dot(chordNormal));
        if (guess <= 0.0) guess += pi;
        const double s = ray_hit(p, dir, c->center, c->cosRadius, guess);
        const double weight = n == 1 ? 1.0 : orbitFactor * std::pow(std::sin(psi), n - 1);
        return weight * sin_power_integral(n, s);
      };
      total += 0.5 * boost::math::quadrature::gauss<double, 8>::integrate(integrand, a, a + dpsi);
    }
  }
  const double expected = loop ? 2.0 * pi : pi;
  if (std::abs(sweep - expected) > 1e-6) {
    throw Error(ErrorKind::NotStarshaped,
                fmt::format("boundary winds {} rad about the star centre, expected {}", sweep, expected));
  }
  return static_cast<double>(orientation) * total;
}

void normalize_nodes(ProfileCurve& curve) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    Vec3& x = curve.nodes[i];
    x.normalize();
    if (!(x[2] > 0.0)) {
      throw Error(ErrorKind::HemisphereViolation, fmt::format("phi' = {} <= 0", x[2]), static_cast<std::ptrdiff_t>(i));
    }
  }
  if (curve.closure() == Closure::AxisArc && curve.size() >= 2) {
    curve.nodes.front()[1] = 0.0;
    curve.nodes.back()[1] = 0.0;
    curve.nodes.front().normalize();
    curve.nodes.back().normalize();
  }
}

double cell_ratio(const ProfileCurve& curve) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const std::size_t N = curve.size();
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    const double l = geodesic_distance(curve.nodes[e], curve.nodes[(e + 1) % N]);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return hi / lo;
}

SphereFit fit_sphere(const ProfileCurve& curve) {
  std::vector<Vec3> pts(curve.nodes.begin(), curve.nodes.end());
  if (curve.closure() == Closure::AxisArc) {
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) pts.push_back(reflect_axis(curve.nodes[i]));
  }
  Vec3 mean = Vec3::Zero();
  for (const auto& x : pts) mean += x;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& x : pts) cov += (x - mean) * (x - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  Vec3 m = solver.eigenvectors().col(0);
  double d = m.dot(mean);
  if (d < 0.0) {
    m = -m;
    d = -d;
  }
  SphereFit fit;
  fit.center = m;
  fit.radius = std::acos(std::clamp(d, -1.0, 1.0));
  fit.centerDistance = std::atan2(std::hypot(m[0], m[1]), m[2]);
  for (const auto& x : curve.nodes) {
    fit.residual = std::max(fit.residual, std::abs(geodesic_distance(x, m) - fit.radius));
  }
  return fit;
}

}  // namespace horoflow
