#include "absorb/math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace absorb::math {

namespace {

constexpr double kSeriesLimit = 2.5;

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (1*3*...*(2n+1)).
// Every term is positive, so there is no cancellation for moderate x.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17)
      break;
  }
  return 2.0 * std::numbers::inv_sqrtpi * std::exp(-x2) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 2x / (2x^2+1 - 1*2/(2x^2+5 - 3*4/(2x^2+9 - ...)))
// evaluated with the modified Lentz method. Valid for x > 0; converges fast
// for x >= kSeriesLimit.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  const double y = 2.0 * x * x;
  double f = y + 1.0;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = -(2.0 * n - 1.0) * (2.0 * n);
    const double b = y + 1.0 + 4.0 * n;
    d = b + a * d;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16)
      break;
  }
  return std::numbers::inv_sqrtpi * std::exp(-x * x) * 2.0 * x / f;
}

} // namespace

double erfc(double x) {
  if (std::isnan(x))
    return x;
  if (x < 0.0)
    return 2.0 - erfc(-x);
  if (x < kSeriesLimit)
    return 1.0 - erf_series(x);
  if (x > 27.3) // e^{-x^2} underflows
    return 0.0;
  return erfc_continued_fraction(x);
}

double analytic_fraction(double t, double receiver_radius, double distance, double diffusion) {
  if (t <= 0.0)
    return 0.0;
  const double spread = std::sqrt(4.0 * diffusion * t);
  return receiver_radius / distance * erfc((distance - receiver_radius) / spread);
}

double pr_rmc(double initial_gap, double final_gap, double diffusion, double dt) {
  return std::exp(-initial_gap * final_gap / (diffusion * dt));
}

double pr_apmc(double center_distance, double receiver_radius, double diffusion, double dt) {
  if (center_distance < receiver_radius)
    throw std::domain_error("pr_apmc: molecule inside the receiver (d_j < r_r)");
  return analytic_fraction(dt, receiver_radius, center_distance, diffusion);
}

bool segment_sphere_intersects(const Vec3 &p0, const Vec3 &p1, const Vec3 &center, double radius) {
  // Endpoints go through the same distance test as ReceiverGeometry::contains
  // so that an SMC hit is always an SC hit, including rounding at ties.
  if (distance(p0, center) <= radius || distance(p1, center) <= radius)
    return true;
  const Vec3 seg = p1 - p0;
  const double len2 = dot(seg, seg);
  if (len2 == 0.0)
    return false;
  const double s = std::clamp(dot(center - p0, seg) / len2, 0.0, 1.0);
  return distance(p0 + s * seg, center) <= radius;
}

double analytic_increment(std::uint64_t step, const SimulationConfig &config) {
  if (step == 0)
    return 0.0;
  const auto F = [&](std::uint64_t k) {
    return analytic_fraction(static_cast<double>(k) * config.time_step, config.receiver_radius,
                             config.tx_rx_distance, config.diffusion_coefficient);
  };
  const double n = static_cast<double>(config.num_molecules);
  return std::max(0.0, n * (F(step) - F(step - 1)));
}

} // namespace absorb::math
