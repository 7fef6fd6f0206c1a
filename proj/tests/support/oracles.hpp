#pragma once

// Reference values computed without the library: closed forms, adaptive
// quadrature over analytic parametrizations and finite differences of the
// embedding in R^{n+2}.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Vec3 = Eigen::Vector3d;

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                     unsigned maxDepth = 15);

/// W_k of the geodesic sphere of radius rho, written out by hand for n = 1, 2.
double sphere_W(int n, int k, double rho);

/// Inverse of rho -> sphere_W(n, k - 1, rho) by plain bisection, then W_k.
double sphere_f(int n, int k, double w);

/// Radial graph r(theta) = rho + a cos(m theta) about the north pole. For
/// n = 1 theta runs over [0, 2 pi); for n = 2 it is the polar angle from the
/// rotation axis, theta in [0, pi].
struct RadialGraph {
  int n = 1;
  double rho = 0.8;
  double amplitude = 0.0;
  int frequency = 0;

  double r(double theta) const;
  /// Profile point on the 2-sphere spanned by (e_1, e_2, e_{n+2}).
  Vec3 profile(double theta) const;
};

struct PointGeometry {
  std::array<double, 2> kappa{};  ///< principal curvatures (kappa[0] profile; kappa[1] rotational when n = 2)
  Vec3 normal;                    ///< outward, in profile coordinates
  double u = 0.0;
  double phiPrime = 0.0;
  /// Area density with respect to d theta (times the rotation for n = 2).
  double areaDensity = 0.0;
};

/// Second fundamental form of the embedded hypersurface by fourth-order
/// finite differences of the ambient parametrization.
PointGeometry fd_geometry(const RadialGraph& g, double theta, double h = 1e-3);

/// int_M f dA by adaptive Gauss-Kronrod over theta.
double surface_integral(const RadialGraph& g, const std::function<double(const PointGeometry&)>& f);

/// Enclosed volume of the radial graph.
double enclosed_volume(const RadialGraph& g);

/// W_0..W_{n+1} of the radial graph from the defining recursion.
std::vector<double> quermass(const RadialGraph& g);

/// Area of the spherical polygon through the nodes (a closed loop, counter
/// clockwise about the pole), by Van Oosterom-Strackee triangles from the
/// pole. With arcCorrection the geodesic edges are replaced by arcs of the
/// small circle through each edge and its neighbouring nodes, averaged over
/// the two choices.
double polygon_area(const std::vector<Vec3>& nodes, bool arcCorrection);

/// Central-difference gradient.
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double h = 1e-6);

}  // namespace oracle
