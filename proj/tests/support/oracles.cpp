#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using std::numbers::pi;

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol, unsigned maxDepth) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, maxDepth, tol);
}

double sphere_W(int n, int k, double rho) {
  const double s = std::sin(rho), c = std::cos(rho);
  if (n == 1) {
    switch (k) {
      case 0: return 2 * pi * (1 - c);
      case 1: return pi * s;
      case 2: return pi;
    }
  } else if (n == 2) {
    switch (k) {
      case 0: return 2 * pi * rho - pi * std::sin(2 * rho);
      case 1: return 4 * pi * s * s / 3;
      case 2: return (2 * pi * rho + pi * std::sin(2 * rho)) / 3;
      case 3: return 4 * pi / 3;
    }
  }
  throw std::invalid_argument("sphere_W: closed forms only for n = 1, 2");
}

double sphere_f(int n, int k, double w) {
  double lo = 0.0, hi = pi / 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sphere_W(n, k - 1, mid) < w ? lo : hi) = mid;
  }
  return sphere_W(n, k, 0.5 * (lo + hi));
}

double RadialGraph::r(double theta) const { return rho + amplitude * std::cos(frequency * theta); }

Vec3 RadialGraph::profile(double theta) const {
  const double rr = r(theta);
  return {std::sin(rr) * std::cos(theta), std::sin(rr) * std::sin(theta), std::cos(rr)};
}

namespace {

using Vec4 = Eigen::Vector4d;

template <class F>
auto d1(const F& f, double x, double h) -> decltype(f(x)) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

template <class F>
auto d2(const F& f, double x, double h) -> decltype(f(x)) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

}  // namespace

PointGeometry fd_geometry(const RadialGraph& g, double theta, double h) {
  PointGeometry out;
  const double rr = g.r(theta);
  if (g.n == 1) {
    const auto X = [&](double t) -> Vec3 { return g.profile(t); };
    const Vec3 x = X(theta), xt = d1(X, theta, h), xtt = d2(X, theta, h);
    Vec3 N = x.cross(xt).normalized();
    const Vec3 er(std::cos(rr) * std::cos(theta), std::cos(rr) * std::sin(theta), -std::sin(rr));
    if (N.dot(er) < 0) N = -N;
    out.kappa[0] = -xtt.dot(N) / xt.squaredNorm();
    out.normal = N;
    out.u = -N[2];
    out.phiPrime = x[2];
    out.areaDensity = xt.norm();
    return out;
  }
  if (g.n != 2) throw std::invalid_argument("fd_geometry: n = 1, 2 only");
  // (p0, b cos psi, b sin psi, z) in R^4, evaluated at psi = 0.
  const auto Y = [&](double t, double psi) -> Vec4 {
    const Vec3 p = g.profile(t);
    return {p[0], p[1] * std::cos(psi), p[1] * std::sin(psi), p[2]};
  };
  const auto Yt = [&](double t) { return Y(t, 0.0); };
  const auto Yp = [&](double psi) { return Y(theta, psi); };
  const Vec4 y = Y(theta, 0.0);
  const Vec4 yt = d1(Yt, theta, h), ytt = d2(Yt, theta, h);
  const Vec4 yp = d1(Yp, 0.0, h), ypp = d2(Yp, 0.0, h);
  Eigen::Matrix<double, 4, 3> A;
  A << y, yt, yp;
  const Eigen::Matrix4d Q = A.householderQr().householderQ();
  Vec4 N = Q.col(3);
  const Vec4 er(std::cos(rr) * std::cos(theta), std::cos(rr) * std::sin(theta), 0.0, -std::sin(rr));
  if (N.dot(er) < 0) N = -N;
  out.kappa[0] = -ytt.dot(N) / yt.squaredNorm();
  out.kappa[1] = -ypp.dot(N) / yp.squaredNorm();
  out.normal = Vec3(N[0], N[1], N[3]);
  out.u = -N[3];
  out.phiPrime = y[3];
  out.areaDensity = yt.norm() * 2 * pi * y[1];
  return out;
}

double surface_integral(const RadialGraph& g, const std::function<double(const PointGeometry&)>& f) {
  const double upper = g.n == 1 ? 2 * pi : pi;
  return gauss_kronrod(
      [&](double t) {
        const auto p = fd_geometry(g, t);
        return f(p) * p.areaDensity;
      },
      // finite-difference noise sits near 1e-10
      0.0, upper, 1e-10, 8);
}

double enclosed_volume(const RadialGraph& g) {
  if (g.n == 1) return gauss_kronrod([&](double t) { return 1 - std::cos(g.r(t)); }, 0.0, 2 * pi);
  return 2 * pi * gauss_kronrod(
                      [&](double t) {
                        const double rr = g.r(t);
                        return std::sin(t) * (rr / 2 - std::sin(2 * rr) / 4);
                      },
                      0.0, pi);
}

std::vector<double> quermass(const RadialGraph& g) {
  const int n = g.n;
  std::vector<double> W(static_cast<std::size_t>(n) + 2);
  W[0] = enclosed_volume(g);
  const auto H = [n](const PointGeometry& p, int k) {
    if (k == 0) return 1.0;
    if (n == 1) return p.kappa[0];
    return k == 1 ? 0.5 * (p.kappa[0] + p.kappa[1]) : p.kappa[0] * p.kappa[1];
  };
  for (int k = 0; k <= n; ++k) {
    const double intH = surface_integral(g, [&](const PointGeometry& p) { return H(p, k); });
    W[k + 1] = intH / (n + 1) + (k == 0 ? 0.0 : double(k) / (n + 2 - k) * W[k - 1]);
  }
  return W;
}

namespace {

double vos(const Vec3& p, const Vec3& a, const Vec3& b) {
  return 2 * std::atan2(p.dot(a.cross(b)), 1 + p.dot(a) + a.dot(b) + b.dot(p));
}

// Signed area between the geodesic a b and the arc of the circle through
// (a, b, c) on the side away from the pole.
double segment(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 m = (b - a).cross(c - a).normalized();
  if (m.dot(a) < 0) m = -m;
  const double d = m.dot(a);
  const Vec3 pa = a - d * m, pb = b - d * m;
  const double alpha = std::atan2(pa.cross(pb).norm(), pa.dot(pb));
  const double seg = alpha * (1 - d) - std::abs(vos(m, a, b));
  const Vec3 pole = Vec3::UnitZ();
  const Vec3 ab = a.cross(b);
  return (ab.dot(m) > 0) == (ab.dot(pole) > 0) ? seg : -seg;
}

}  // namespace

double polygon_area(const std::vector<Vec3>& nodes, bool arcCorrection) {
  const std::size_t N = nodes.size();
  const Vec3 pole = Vec3::UnitZ();
  double area = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const Vec3& a = nodes[i];
    const Vec3& b = nodes[(i + 1) % N];
    area += vos(pole, a, b);
    if (arcCorrection) {
      const Vec3& prev = nodes[(i + N - 1) % N];
      const Vec3& next = nodes[(i + 2) % N];
      area += 0.5 * (segment(a, b, prev) + segment(a, b, next));
    }
  }
  return area;
}

std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

}  // namespace oracle
