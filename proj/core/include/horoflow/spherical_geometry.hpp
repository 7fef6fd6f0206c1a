#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace horoflow {

/// Coordinates on the totally geodesic profile 2-sphere spanned by
/// (e_1, e_2, e_{n+2}). Component 2 is the height above the equator, so the
/// north pole is (0, 0, 1). For n >= 2, component 1 is the distance to the
/// rotation axis (the great circle x_2 = 0).
using Vec3 = Eigen::Vector3d;

/// A point of S^{n+1} in R^{n+2}; the last coordinate is the pole direction.
struct AmbientPoint {
  std::vector<double> coords;
};

enum class Closure {
  Loop,     ///< n = 1: closed curve, periodic indexing.
  AxisArc,  ///< n >= 2: profile arc from the axis to the axis.
};

/// Generator of the hypersurface: the curve itself for n = 1, otherwise the
/// profile of a hypersurface of revolution about the axis great circle
/// through the north pole.
struct ProfileCurve {
  int n = 1;
  std::vector<Vec3> nodes;

  Closure closure() const { return n == 1 ? Closure::Loop : Closure::AxisArc; }
  std::size_t size() const { return nodes.size(); }
  std::size_t edge_count() const {
    return closure() == Closure::Loop ? nodes.size() : nodes.size() - 1;
  }

  AmbientPoint ambient(std::size_t i) const;
  static ProfileCurve from_ambient(int n, std::span<const AmbientPoint> points);
};

inline constexpr std::size_t kMinNodes = 16;

struct GeometryOptions {
  double normalizationTol = 1e-12;
  double degenerateTol = 1e-12;
};

/// Osculating small circle through a node and its two neighbours:
/// { y on S^2 : <y, center> = cosRadius }.
struct NodeCircle {
  Vec3 center;
  double cosRadius = 0.0;
  double sinRadius = 1.0;
};

/// Per-node extrinsic geometry. Curvature-valued fields are stored N x n
/// (principal curvatures) or N x (n + 1) (H_0..H_n), row-major.
struct PointwiseGeometry {
  int n = 1;
  Closure closure = Closure::Loop;
  /// +1 when nodes run counter-clockwise about starCenter seen from outside.
  int orientation = 1;
  Vec3 starCenter = Vec3::UnitZ();

  std::vector<double> r;
  std::vector<double> phi;
  std::vector<double> phiPrime;
  std::vector<Vec3> nu;
  /// Unit tangent in the direction of increasing node index.
  std::vector<Vec3> tangent;
  std::vector<double> u;
  std::vector<double> kappa;
  std::vector<double> areaElement;
  std::vector<double> hk;
  std::vector<double> sigma;
  /// Geodesic distance from node i to node i + 1 (wrapping for loops).
  std::vector<double> edgeLength;
  std::vector<NodeCircle> circles;

  std::size_t size() const { return r.size(); }
  std::span<const double> principal(std::size_t i) const {
    return {kappa.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
  double H(std::size_t i, int k) const { return hk[i * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(k)]; }
  std::span<const double> horo_eigenvalues(std::size_t i) const {
    return {sigma.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
  /// Per-node column H_k.
  std::vector<double> H_column(int k) const;
};

/// Surface area of the unit m-sphere, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double unit_sphere_area(int m);

/// Integral of sin^m over [0, s].
double sin_power_integral(int m, double s);

/// Direction used as the star centre: the mean node direction (projected onto
/// the axis plane for revolution profiles), renormalized.
Vec3 star_center(const ProfileCurve& curve);

PointwiseGeometry build_geometry(const ProfileCurve& curve, const GeometryOptions& options = {});

/// Sum of f_i * areaElement_i. Throws GridMismatch if the lengths differ.
double integrate(const PointwiseGeometry& geom, std::span<const double> f);

/// (n+1)-volume of the enclosed spherical domain by radial quadrature about
/// the star centre. Between nodes the boundary is the mean of the two
/// adjacent osculating circles.
double enclosed_volume(const ProfileCurve& curve);

/// Rescales every node to unit length; throws HemisphereViolation when a node
/// leaves the open northern hemisphere.
void normalize_nodes(ProfileCurve& curve);

/// max / min geodesic edge length.
double cell_ratio(const ProfileCurve& curve);

/// Redistributes nodes to uniform arclength by Floater-Hormann rational
/// interpolation of the coordinates against arclength; node 0 (and node N-1
/// of a profile arc) stay fixed.
ProfileCurve resample_uniform(const ProfileCurve& curve);

struct SphereFit {
  Vec3 center;
  double radius = 0.0;
  double centerDistance = 0.0;  ///< geodesic distance of the centre to the pole
  double residual = 0.0;        ///< max |d(x_i, center) - radius|
};

/// Least-squares small circle (plane section of S^2) through the nodes.
SphereFit fit_sphere(const ProfileCurve& curve);

}  // namespace horoflow
