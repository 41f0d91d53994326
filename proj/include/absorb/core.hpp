#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Shared domain types. Everything is strict SI internally (meters, seconds);
// micrometers only appear at the CLI / config-file boundary.
namespace absorb {

struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
  friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3 &v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3 &a, const Vec3 &b) { return norm(a - b); }

enum class Algorithm { smc, sc, rmc, apmc };

std::string_view to_string(Algorithm a);
/// Case-insensitive; returns nullopt for anything that is not smc|sc|rmc|apmc.
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SimulationConfig {
  double diffusion_coefficient{1e-9}; // m^2/s
  double receiver_radius{10e-6};      // m
  double tx_rx_distance{50e-6};       // m, origin to receiver center
  std::uint64_t num_molecules{1000};
  double time_step{0.5}; // s
  std::uint64_t num_steps{10};
  Algorithm algorithm{Algorithm::apmc};
  std::uint64_t trials{1};
  std::uint64_t seed{42};
  std::uint64_t max_resample_attempts{1000};

  friend bool operator==(const SimulationConfig &, const SimulationConfig &) = default;
};

enum class ConfigErrc {
  non_positive_diffusion,
  non_positive_radius,
  transmitter_inside_receiver,
  no_molecules,
  non_positive_time_step,
  no_steps,
  no_trials,
  no_resample_attempts,
};

std::string_view describe(ConfigErrc code);

class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(ConfigErrc code);
  ConfigErrc code() const noexcept { return code_; }

private:
  ConfigErrc code_;
};

/// Returns `config` unchanged when every invariant holds, otherwise throws
/// ConfigError for the first violated one (checked in declaration order).
/// NaN fields fail the corresponding positivity check.
SimulationConfig validate(const SimulationConfig &config);

/// The absorbing sphere. The transmitter sits at the origin and the receiver
/// center on the +x axis.
struct ReceiverGeometry {
  Vec3 center;
  double radius{0.0};

  static ReceiverGeometry from_config(const SimulationConfig &config) {
    return {{config.tx_rx_distance, 0.0, 0.0}, config.receiver_radius};
  }
  double distance_to_center(const Vec3 &p) const { return distance(p, center); }
  /// Boundary ties count as inside.
  bool contains(const Vec3 &p) const { return distance_to_center(p) <= radius; }
};

enum class MoleculeStatus : std::uint8_t { free, absorbed };

struct MoleculeState {
  Vec3 position;
  MoleculeStatus status{MoleculeStatus::free};
  std::optional<std::uint64_t> absorbed_at_step;

  bool is_free() const { return status == MoleculeStatus::free; }
  void mark_absorbed(std::uint64_t step) {
    status = MoleculeStatus::absorbed;
    absorbed_at_step = step;
  }
};

/// Cumulative absorption curve, one entry per recorded step k = 1..M at
/// time k*dt. `absorbed` is a count for a single trial and the trial mean
/// for aggregated results.
struct TimeSeriesResult {
  std::uint64_t num_molecules{0};
  std::vector<double> time;
  std::vector<double> absorbed;
  std::vector<double> fraction;
  std::vector<double> analytic_fraction;

  std::size_t size() const { return time.size(); }
};

/// Per-step newly absorbed counts over repeated trials.
struct DistributionResult {
  std::uint64_t num_molecules{0};
  double time_step{0.0};
  std::vector<std::vector<std::uint64_t>> newly_absorbed; // [trial][step]
  std::vector<double> mean;                               // per step
  std::vector<double> variance;                           // unbiased, 0 for one trial
  std::vector<double> analytic_increment;                 // per step

  std::size_t trials() const { return newly_absorbed.size(); }
  std::size_t steps() const { return mean.size(); }

  struct MassPoint {
    std::uint64_t count;
    double probability;
  };
  /// Empirical probability mass of newly absorbed counts at `step` (0-based),
  /// ascending by count.
  std::vector<MassPoint> mass_function(std::size_t step) const;
};

} // namespace absorb
