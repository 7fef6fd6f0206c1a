#pragma once

// Internal helpers shared by the geometry, resampling and flow sources.

#include <cstddef>
#include <vector>

#include "horoflow/spherical_geometry.hpp"

namespace horoflow::detail {

/// Mirror image across the axis great circle.
Vec3 reflect_axis(const Vec3& v);

double geodesic_distance(const Vec3& a, const Vec3& b);

/// Stencil neighbours of a node. At the ends of a profile arc the missing
/// neighbour is the mirror image of the adjacent interior node.
struct Neighbours {
  Vec3 prev;
  Vec3 next;
  bool prevIsGhost = false;
  bool nextIsGhost = false;
};

Neighbours neighbours(const ProfileCurve& curve, std::size_t i);

/// Sign of the winding of the nodes about `center`.
int orientation_sign(const ProfileCurve& curve, const Vec3& center);

NodeCircle osculating_circle(const Vec3& prev, const Vec3& x, const Vec3& next, int orientation, std::size_t index);
std::vector<NodeCircle> node_circles(const ProfileCurve& curve, int orientation);

/// Integral over the arc of `c` from `from` to `to` of the hat function
/// (1 at `from`, 0 at `to`) times the orbit density b^{n-1}.
double hat_arc_weight(const NodeCircle& c, const Vec3& from, const Vec3& to, int n);

}  // namespace horoflow::detail
