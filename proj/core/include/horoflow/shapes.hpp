#pragma once

#include <cstddef>

#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

/// Geodesic sphere of radius rho about the pole.
ProfileCurve centered_sphere(int n, std::size_t N, double rho);

/// Geodesic sphere of radius rho whose centre lies at distance delta from the
/// pole, in the profile plane. Accepts rho + delta <= pi/2 (the boundary case
/// touches the equator at a point that is never a node).
ProfileCurve off_center_sphere(int n, std::size_t N, double rho, double delta);

/// Radial graph r(theta) = rho + amplitude * cos(frequency * theta) about the
/// pole; theta is the polar angle on the profile sphere.
ProfileCurve perturbed_sphere(int n, std::size_t N, double rho, double amplitude, int frequency);

}  // namespace horoflow
