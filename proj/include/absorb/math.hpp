#pragma once

#include <cstdint>

#include "absorb/core.hpp"

namespace absorb::math {

/// Complementary error function, max absolute error below 1e-12 on
/// |x| <= 6 (measured ~1e-16). Positive-term series for erf below 2.5,
/// continued fraction above. Independent of the platform libm erfc.
double erfc(double x);

/// Fraction of the N released molecules absorbed by time t:
///   (r_r / r_d) * erfc((r_d - r_r) / sqrt(4 D t)).
/// Exactly 0 at t = 0.
double analytic_fraction(double t, double receiver_radius, double distance, double diffusion);

/// Planar-boundary crossing probability exp(-l_i l_f / (D dt)) for a step
/// starting l_i and ending l_f away from the boundary.
double pr_rmc(double initial_gap, double final_gap, double diffusion, double dt);

/// Probability that a molecule at distance d_j from the receiver center is
/// absorbed within the next step: analytic_fraction(dt, r_r, d_j, D).
/// Throws std::domain_error if d_j < r_r.
double pr_apmc(double center_distance, double receiver_radius, double diffusion, double dt);

/// True iff the closed segment p0-p1 comes within `radius` of `center`.
bool segment_sphere_intersects(const Vec3 &p0, const Vec3 &p1, const Vec3 &center, double radius);

/// Expected number of molecules newly absorbed in step k (covering
/// ((k-1) dt, k dt]); N [F(k dt) - F((k-1) dt)], clamped at 0.
double analytic_increment(std::uint64_t step, const SimulationConfig &config);

} // namespace absorb::math
