#pragma once

#include <filesystem>
#include <string>

#include "absorb/core.hpp"
#include "json.hpp"

// Flat JSON config file. Keys match the SimulationConfig field names;
// receiver_radius and tx_rx_distance are in micrometers, time_step in
// seconds, diffusion_coefficient in m^2/s, algorithm as "smc"|"sc"|"rmc"|"apmc".
namespace absorb {

nlohmann::json config_to_json(const SimulationConfig &config);

/// Keys missing from `j` keep their value from `base`. Unknown keys, wrong
/// value types and unknown algorithm names throw std::invalid_argument.
/// The result is not validated.
SimulationConfig config_from_json(const nlohmann::json &j, const SimulationConfig &base = {});

SimulationConfig load_config(const std::filesystem::path &path, const SimulationConfig &base = {});

/// Length conversions used at the boundary. micrometers_for() picks a value
/// that from_micrometers() maps back to exactly `meters` whenever one exists,
/// which is always the case for lengths that came in through
/// from_micrometers(); otherwise the round trip is off by at most one ulp.
double from_micrometers(double um);
double micrometers_for(double meters);

} // namespace absorb
