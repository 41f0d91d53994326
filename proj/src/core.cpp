#include "absorb/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>

namespace absorb {

std::string_view to_string(Algorithm a) {
  switch (a) {
  case Algorithm::smc:
    return "smc";
  case Algorithm::sc:
    return "sc";
  case Algorithm::rmc:
    return "rmc";
  case Algorithm::apmc:
    return "apmc";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto a : {Algorithm::smc, Algorithm::sc, Algorithm::rmc, Algorithm::apmc})
    if (lower == to_string(a))
      return a;
  return std::nullopt;
}

std::string_view describe(ConfigErrc code) {
  switch (code) {
  case ConfigErrc::non_positive_diffusion:
    return "non-positive diffusion coefficient";
  case ConfigErrc::non_positive_radius:
    return "non-positive receiver radius";
  case ConfigErrc::transmitter_inside_receiver:
    return "transmitter inside/on receiver";
  case ConfigErrc::no_molecules:
    return "number of molecules must be at least 1";
  case ConfigErrc::non_positive_time_step:
    return "non-positive time step";
  case ConfigErrc::no_steps:
    return "number of steps must be at least 1";
  case ConfigErrc::no_trials:
    return "number of trials must be at least 1";
  case ConfigErrc::no_resample_attempts:
    return "max resample attempts must be at least 1";
  }
  return "invalid configuration";
}

ConfigError::ConfigError(ConfigErrc code) : std::invalid_argument(std::string(describe(code))), code_(code) {}

SimulationConfig validate(const SimulationConfig &config) {
  // Written as !(x > 0) so NaN is rejected too.
  if (!(config.diffusion_coefficient > 0.0) || !std::isfinite(config.diffusion_coefficient))
    throw ConfigError(ConfigErrc::non_positive_diffusion);
  if (!(config.receiver_radius > 0.0) || !std::isfinite(config.receiver_radius))
    throw ConfigError(ConfigErrc::non_positive_radius);
  if (!(config.tx_rx_distance > config.receiver_radius) || !std::isfinite(config.tx_rx_distance))
    throw ConfigError(ConfigErrc::transmitter_inside_receiver);
  if (config.num_molecules < 1)
    throw ConfigError(ConfigErrc::no_molecules);
  if (!(config.time_step > 0.0) || !std::isfinite(config.time_step))
    throw ConfigError(ConfigErrc::non_positive_time_step);
  if (config.num_steps < 1)
    throw ConfigError(ConfigErrc::no_steps);
  if (config.trials < 1)
    throw ConfigError(ConfigErrc::no_trials);
  if (config.max_resample_attempts < 1)
    throw ConfigError(ConfigErrc::no_resample_attempts);
  return config;
}

std::vector<DistributionResult::MassPoint> DistributionResult::mass_function(std::size_t step) const {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (const auto &row : newly_absorbed)
    ++freq[row.at(step)];
  std::vector<MassPoint> out;
  out.reserve(freq.size());
  const double n = static_cast<double>(trials());
  for (const auto &[count, hits] : freq)
    out.push_back({count, static_cast<double>(hits) / n});
  return out;
}

} // namespace absorb
