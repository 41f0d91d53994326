#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "absorb/math.hpp"
#include "doctest.h"

using namespace absorb;
using boost::multiprecision::cpp_bin_float_50;

namespace {

// 50-digit erfc, independent of the implementation under test.
double reference_erfc(double x) { return static_cast<double>(boost::math::erfc(cpp_bin_float_50(x))); }

// Reference values computed with mpmath at 40 digits.
struct Tabulated {
  double x;
  double erfc;
};
constexpr Tabulated kTable[] = {
    {-6.0, 1.999999999999999978480263},
    {-3.5, 1.999999256901627658587254},
    {-1.0, 1.842700792949714869341221},
    {-0.7, 1.677801193837418472975629},
    {0.0, 1.0},
    {1e-8, 0.9999999887162083290448746},
    {0.15, 0.8320040285726365052297905},
    {0.2475, 0.7263252965915345822093671},
    {0.5, 0.4795001221869534623172533},
    {0.7, 0.3221988061625815270243712},
    {1.0, 0.1572992070502851306587794},
    {1.5, 0.03389485352468927293302374},
    {2.0, 0.004677734981047265837930744},
    {2.4999, 0.0004071699003334509212023669},
    {2.5, 0.0004069520174449589395642157},
    {3.0, 0.00002209049699858544137277613},
    {3.7, 1.671510579091462023740755e-7},
    {4.5, 1.96616044154288747627916e-10},
    {5.0, 1.537459794428034850188343e-12},
    {6.0, 2.151973671249891311659335e-17},
};

Vec3 rotate(const Vec3 &v, const Vec3 &axis_unit, double angle) {
  // Rodrigues' formula.
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec3 cross{axis_unit.y * v.z - axis_unit.z * v.y, axis_unit.z * v.x - axis_unit.x * v.z,
                   axis_unit.x * v.y - axis_unit.y * v.x};
  return c * v + s * cross + ((1.0 - c) * dot(axis_unit, v)) * axis_unit;
}

} // namespace

TEST_CASE("erfc matches tabulated values to 1e-12") {
  for (const auto &row : kTable) {
    CAPTURE(row.x);
    CHECK(std::fabs(math::erfc(row.x) - row.erfc) <= 1e-12);
  }
  CHECK(math::erfc(0.0) == 1.0);
  CHECK(math::erfc(0.15) == doctest::Approx(0.832004).epsilon(1e-6));
}

TEST_CASE("erfc sweep against 50-digit reference") {
  double worst = 0.0;
  for (int i = -6000; i <= 6000; ++i) {
    const double x = i * 1e-3;
    worst = std::max(worst, std::fabs(math::erfc(x) - reference_erfc(x)));
  }
  MESSAGE("max |erfc error| on [-6, 6]: " << worst);
  CHECK(worst <= 1e-12);

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> any(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = any(gen);
    CHECK(std::fabs(math::erfc(x) - reference_erfc(x)) <= 1e-12);
  }
}

TEST_CASE("erfc reflection, range and tails") {
  CHECK(math::erfc(-0.7) == doctest::Approx(2.0 - math::erfc(0.7)).epsilon(1e-15));
  CHECK(math::erfc(30.0) == 0.0);
  CHECK(math::erfc(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(math::erfc(-std::numeric_limits<double>::infinity()) == 2.0);
  CHECK(math::erfc(-30.0) == 2.0);
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    const double v = math::erfc(x);
    CHECK(v >= 0.0);
    CHECK(v <= 2.0);
  }
  // Relative accuracy holds in the far tail too.
  CHECK(math::erfc(10.0) == doctest::Approx(reference_erfc(10.0)).epsilon(1e-13));
}

TEST_CASE("analytic fraction examples") {
  const double D = 1e-9;
  CHECK(math::analytic_fraction(0.0, 20e-6, 50e-6, D) == 0.0);
  CHECK(math::analytic_fraction(1e12, 20e-6, 50e-6, D) == doctest::Approx(0.4).epsilon(1e-6));
  // (r_r/r_d) erfc((r_d - r_r)/sqrt(4Dt)) at 40 digits with mpmath.
  CHECK(math::analytic_fraction(10.0, 20e-6, 50e-6, D) == doctest::Approx(0.33280161142905460).epsilon(1e-13));
  CHECK(math::analytic_fraction(10.0, 0.5e-6, 50e-6, D) == doctest::Approx(0.0072632529659153458).epsilon(1e-12));
}

TEST_CASE("analytic fraction is monotone in time and bounded by r_r/r_d") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double rr = (0.1 + 50 * u(gen)) * 1e-6;
    const double rd = rr + (0.1 + 100 * u(gen)) * 1e-6;
    const double D = std::pow(10.0, -11 + 3 * u(gen));
    double prev = 0.0;
    for (double t = 0.0; t < 200.0; t += 0.37) {
      const double f = math::analytic_fraction(t, rr, rd, D);
      CHECK(f >= prev);
      CHECK(f <= rr / rd);
      prev = f;
    }
  }
}

TEST_CASE("pr_rmc examples and range") {
  const double D = 1e-9;
  const double dt = 0.1;
  CHECK(math::pr_rmc(0.0, 5e-6, D, dt) == 1.0);
  CHECK(math::pr_rmc(7e-6, 0.0, D, dt) == 1.0);
  const double li = 4e-6;
  const double lf = D * dt / li;
  CHECK(math::pr_rmc(li, lf, D, dt) == doctest::Approx(0.36787944117144232).epsilon(1e-14));
  const double s = 3.0 * std::sqrt(D * dt);
  CHECK(math::pr_rmc(s, s, D, dt) == doctest::Approx(1.2340980408667955e-4).epsilon(1e-12));

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> gap(0.0, 1e-4);
  for (int i = 0; i < 5000; ++i) {
    const double a = gap(gen);
    const double b = gap(gen);
    const double p = math::pr_rmc(a, b, D, dt);
    CHECK(p <= 1.0);
    CHECK(p >= 0.0);
    CHECK(math::pr_rmc(a * 1.1, b, D, dt) <= p);
    CHECK(math::pr_rmc(a, b * 1.1, D, dt) <= p);
  }
}

TEST_CASE("pr_apmc examples") {
  const double D = 1e-9;
  const double dt = 0.5;
  const double rr = std::sqrt(4 * D * dt);
  CHECK(math::pr_apmc(rr, rr, D, dt) == 1.0);
  CHECK(math::pr_apmc(10e-6, 10e-6, D, dt) == 1.0);
  CHECK(math::pr_apmc(2 * rr, rr, D, dt) == doctest::Approx(0.078649603525142565).epsilon(1e-12));
  CHECK(math::pr_apmc(1.0, 10e-6, D, dt) == 0.0);
  CHECK_THROWS_AS(math::pr_apmc(9e-6, 10e-6, D, dt), std::domain_error);
}

TEST_CASE("pr_apmc is the analytic fraction over one step, range and monotone") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double rr = (0.1 + 50 * u(gen)) * 1e-6;
    const double d = rr + 200e-6 * u(gen) * u(gen);
    const double D = std::pow(10.0, -11 + 3 * u(gen));
    const double dt = 0.01 + 10 * u(gen);
    const double p = math::pr_apmc(d, rr, D, dt);
    CHECK(p == math::analytic_fraction(dt, rr, d, D));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(math::pr_apmc(d * 1.01 + 1e-9, rr, D, dt) <= p);
  }
}

TEST_CASE("segment sphere intersection examples") {
  const double r = 3.0;
  const Vec3 c{0, 0, 0};
  CHECK(math::segment_sphere_intersects({-2 * r, 0, 0}, {2 * r, 0, 0}, c, r));
  CHECK_FALSE(math::segment_sphere_intersects({2 * r, 2 * r, 0}, {3 * r, 2 * r, 0}, c, r));
  CHECK(math::segment_sphere_intersects({2 * r, 0, 0}, {0.5 * r, 0, 0}, c, r));
  // Tangent chord counts as touching.
  CHECK(math::segment_sphere_intersects({-r, r, 0}, {r, r, 0}, c, r));
  // Degenerate segment.
  CHECK_FALSE(math::segment_sphere_intersects({5, 0, 0}, {5, 0, 0}, c, r));
  CHECK(math::segment_sphere_intersects({1, 0, 0}, {1, 0, 0}, c, r));
  // Line passes through the sphere but the segment stops short.
  CHECK_FALSE(math::segment_sphere_intersects({10, 0, 0}, {5, 0, 0}, c, r));
}

TEST_CASE("segment sphere intersection is symmetric and rotation invariant") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const Vec3 c{1.0, -0.5, 0.25};
  const double r = 1.0;
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    const Vec3 p0{coord(gen), coord(gen), coord(gen)};
    const Vec3 p1{coord(gen), coord(gen), coord(gen)};
    const bool base = math::segment_sphere_intersects(p0, p1, c, r);
    hits += base;
    CHECK(base == math::segment_sphere_intersects(p1, p0, c, r));

    Vec3 axis{gauss(gen), gauss(gen), gauss(gen)};
    axis = (1.0 / norm(axis)) * axis;
    const double a = angle(gen);
    const Vec3 q0 = c + rotate(p0 - c, axis, a);
    const Vec3 q1 = c + rotate(p1 - c, axis, a);
    // Rotation perturbs coordinates at the 1e-16 level; only demand
    // agreement away from tangency.
    const Vec3 seg = p1 - p0;
    const double s = std::clamp(dot(c - p0, seg) / dot(seg, seg), 0.0, 1.0);
    const double clearance = std::fabs(distance(p0 + s * seg, c) - r);
    if (clearance > 1e-9)
      CHECK(base == math::segment_sphere_intersects(q0, q1, c, r));

    if (distance(p1, c) <= r)
      CHECK(base);
  }
  CHECK(hits > 1000);
  CHECK(hits < 19000);
}

TEST_CASE("analytic increments telescope to the cumulative fraction") {
  SimulationConfig c;
  c.receiver_radius = 10e-6;
  c.tx_rx_distance = 50e-6;
  c.num_molecules = 1000;
  c.time_step = 0.5;
  c.num_steps = 10;
  CHECK(math::analytic_increment(1, c) == doctest::Approx(1000 * math::analytic_fraction(0.5, 10e-6, 50e-6, 1e-9)));
  // Step 3 covers (1.0, 1.5] s; mpmath: 1000 [F(1.5) - F(1.0)].
  CHECK(math::analytic_increment(3, c) == doctest::Approx(18.823089785888823).epsilon(1e-11));
  CHECK(math::analytic_increment(2, c) == doctest::Approx(33.038031758125853).epsilon(1e-11));
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= 10; ++k) {
    const double inc = math::analytic_increment(k, c);
    CHECK(inc >= 0.0);
    sum += inc;
  }
  CHECK(sum == doctest::Approx(1000 * math::analytic_fraction(5.0, 10e-6, 50e-6, 1e-9)).epsilon(1e-12));

  c.diffusion_coefficient = 1e-300;
  CHECK(math::analytic_increment(4, c) == 0.0);
}
