#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

/// W_0..W_{n+1} of a convex spherical domain.
struct QuermassVector {
  int n = 1;
  std::vector<double> W;

  double operator[](int k) const { return W.at(static_cast<std::size_t>(k)); }
};

/// W_0 is the enclosed volume, W_1 = |M| / (n+1), and upward
/// W_{k+1} = (1/(n+1)) * int H_k + k/(n+2-k) * W_{k-1}.
QuermassVector quermassintegrals(const PointwiseGeometry& geom, const ProfileCurve& curve);

/// Same recursion from a known W_0 and the values int H_k, k = 0..n.
std::vector<double> quermass_recursion(int n, double W0, const std::vector<double>& integralsH);

/// W_k of the geodesic sphere of radius rho in S^{n+1}, k = 0..n+1, for
/// rho in [0, pi/2].
double sphere_quermass(double rho, int n, int k);
std::vector<double> sphere_quermass_all(double rho, int n);

/// (n+1) W_{k+1} - int cos r H_k on the centred sphere of radius rho.
double sphere_weighted(double rho, int n, int k);

/// f_k(w) = W_k(S_rho) where W_{k-1}(S_rho) = w, k = 1..n+1.
/// Throws OutOfRange outside [0, W_{k-1}(S_{pi/2})], NonMonotonic if the
/// bracketing scan finds the sphere map is not strictly increasing.
double f_k(double w, int n, int k);

/// rho_k(w) = weighted functional of S_rho where W_k(S_rho) = w, k = 0..n.
double rho_k(double w, int n, int k);

/// Radius of the centred sphere with W_k(S_rho) = w.
double sphere_radius_for(double w, int n, int k);

/// int phi' H_{k-1} - int u H_k, k = 1..n.
double hsiung_minkowski_residual(const PointwiseGeometry& geom, int k);

/// int phi' / H_1 - int u. Throws NotMeanConvex unless H_1 > 0 everywhere.
double heintze_karcher_gap(const PointwiseGeometry& geom);

/// (n+1) W_{k+1} - int phi' H_k, k = 0..n.
double weighted_functional(const PointwiseGeometry& geom, const QuermassVector& W, int k);
double weighted_functional(const PointwiseGeometry& geom, const ProfileCurve& curve, int k);

struct SphereTableRow {
  double rho = 0.0;
  std::vector<double> W;         ///< W_0..W_{n+1}
  std::vector<double> weighted;  ///< weighted functional for k = 1..n
};

struct SphereTable {
  int n = 1;
  std::vector<SphereTableRow> rows;

  /// Comma-separated columns rho, W_0..W_{n+1}, kw_1..kw_n with a header.
  std::string to_text() const;
};

/// rho_j = j (pi/2) / samples for j = 1..samples-1.
SphereTable sphere_table(int n, std::size_t samples = 64);

}  // namespace horoflow
