#include <array>
#include <vector>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "horoflow/detail/stencil.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace horoflow {

namespace {

constexpr std::size_t kPad = 6;
constexpr std::size_t kOrder = 4;

}  // namespace

ProfileCurve resample_uniform(const ProfileCurve& curve) {
  const std::size_t N = curve.size();
  if (N < kMinNodes) throw Error(ErrorKind::InvalidArgument, "too few nodes to resample");
  const bool loop = curve.closure() == Closure::Loop;

  // Arclength parameter of every real node plus padding on both sides, so
  // the interpolant near the ends sees the periodic or mirrored continuation.
  std::vector<double> s;
  std::vector<Vec3> pts;
  std::vector<double> cum(N, 0.0);
  for (std::size_t i = 1; i < N; ++i) cum[i] = cum[i - 1] + detail::geodesic_distance(curve.nodes[i - 1], curve.nodes[i]);
  const double closing = loop ? detail::geodesic_distance(curve.nodes[N - 1], curve.nodes[0]) : 0.0;
  const double L = cum[N - 1] + closing;

  for (std::size_t k = kPad; k >= 1; --k) {
    if (loop) {
      s.push_back(cum[N - k] - L);
      pts.push_back(curve.nodes[N - k]);
    } else {
      s.push_back(-cum[k]);
      pts.push_back(detail::reflect_axis(curve.nodes[k]));
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    s.push_back(cum[i]);
    pts.push_back(curve.nodes[i]);
  }
  for (std::size_t k = loop ? 0 : 1; k < kPad + (loop ? 0 : 1); ++k) {
    if (loop) {
      s.push_back(cum[k] + L);
      pts.push_back(curve.nodes[k]);
    } else {
      s.push_back(2.0 * L - cum[N - 1 - k]);
      pts.push_back(detail::reflect_axis(curve.nodes[N - 1 - k]));
    }
  }

  std::array<std::vector<double>, 3> coords;
  for (int c = 0; c < 3; ++c) {
    coords[c].reserve(pts.size());
    for (const auto& p : pts) coords[c].push_back(p[c]);
  }
  using Interp = boost::math::barycentric_rational<double>;
  std::vector<Interp> interp;
  interp.reserve(3);
  for (int c = 0; c < 3; ++c) interp.emplace_back(std::vector<double>(s), std::move(coords[c]), kOrder);

  ProfileCurve out;
  out.n = curve.n;
  out.nodes.resize(N);
  const double h = loop ? L / static_cast<double>(N) : L / static_cast<double>(N - 1);
  for (std::size_t j = 0; j < N; ++j) {
    const double t = h * static_cast<double>(j);
    out.nodes[j] = Vec3(interp[0](t), interp[1](t), interp[2](t));
  }
  out.nodes.front() = curve.nodes.front();
  if (!loop) out.nodes.back() = curve.nodes.back();
  normalize_nodes(out);
  return out;
}

}  // namespace horoflow
