#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "absorb/core.hpp"
#include "absorb/math.hpp"

// Per-molecule step primitives and absorption criteria. Each function sees
// exactly one molecule and consumes draws only from that molecule's stream.
//
// Draw order per step:
//   SMC, SC  3 normals (x, y, z displacement)
//   RMC      3 normals, then 1 uniform only if the end point is outside
//   APMC     1 uniform, then 3 normals per resample attempt
namespace absorb {

template <class S>
concept RandomSource = requires(S &s) {
  { s.next_uniform() } -> std::convertible_to<double>;
  { s.next_normal() } -> std::convertible_to<double>;
};

enum class Decision { free, absorbed };

class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Adds an independent N(0, 2 D dt) displacement to each coordinate.
template <RandomSource S>
Vec3 brownian_step(const Vec3 &position, double diffusion, double dt, S &stream) {
  const double sigma = std::sqrt(2.0 * diffusion * dt);
  const double dx = stream.next_normal();
  const double dy = stream.next_normal();
  const double dz = stream.next_normal();
  return {position.x + sigma * dx, position.y + sigma * dy, position.z + sigma * dz};
}

/// Absorbed iff the end point is inside or on the sphere.
inline Decision decide_smc(const Vec3 & /*p0*/, const Vec3 &p1, const ReceiverGeometry &rx) {
  return rx.contains(p1) ? Decision::absorbed : Decision::free;
}

/// Absorbed iff the straight segment p0-p1 touches the sphere.
inline Decision decide_sc(const Vec3 &p0, const Vec3 &p1, const ReceiverGeometry &rx) {
  return math::segment_sphere_intersects(p0, p1, rx.center, rx.radius) ? Decision::absorbed : Decision::free;
}

/// An end point inside the sphere is absorbed outright; otherwise the planar
/// crossing probability is tested against one uniform (u <= Pr absorbs).
template <RandomSource S>
Decision decide_rmc(const Vec3 &p0, const Vec3 &p1, const ReceiverGeometry &rx, double diffusion, double dt,
                    S &stream) {
  const double final_distance = rx.distance_to_center(p1);
  if (final_distance <= rx.radius)
    return Decision::absorbed;
  const double initial_gap = rx.distance_to_center(p0) - rx.radius;
  const double final_gap = final_distance - rx.radius;
  const double pr = math::pr_rmc(initial_gap, final_gap, diffusion, dt);
  return stream.next_uniform() <= pr ? Decision::absorbed : Decision::free;
}

/// A priori decision, taken before the molecule moves.
template <RandomSource S>
Decision decide_apmc_pre(const Vec3 &p0, const ReceiverGeometry &rx, double diffusion, double dt, S &stream) {
  const double d = rx.distance_to_center(p0);
  if (d < rx.radius)
    throw InvariantViolation("APMC: free molecule found inside the receiver");
  const double pr = math::pr_apmc(d, rx.radius, diffusion, dt);
  return stream.next_uniform() <= pr ? Decision::absorbed : Decision::free;
}

/// Proposes steps from the original position p0 until one lands strictly
/// outside the sphere. Returns nullopt after `max_attempts` inside landings.
template <RandomSource S>
std::optional<Vec3> apmc_resample(const Vec3 &p0, const ReceiverGeometry &rx, double diffusion, double dt, S &stream,
                                  std::uint64_t max_attempts) {
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    const Vec3 proposal = brownian_step(p0, diffusion, dt, stream);
    if (!rx.contains(proposal))
      return proposal;
  }
  return std::nullopt;
}

} // namespace absorb
