#include "absorb/config_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace absorb {

double from_micrometers(double um) { return um / 1e6; }

double micrometers_for(double meters) {
  const double guess = meters * 1e6;
  if (from_micrometers(guess) == meters || !std::isfinite(guess))
    return guess;
  double lo = guess;
  double hi = guess;
  for (int i = 0; i < 8; ++i) {
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    if (from_micrometers(lo) == meters)
      return lo;
    if (from_micrometers(hi) == meters)
      return hi;
  }
  return guess;
}

nlohmann::json config_to_json(const SimulationConfig &c) {
  return {
      {"diffusion_coefficient", c.diffusion_coefficient},
      {"receiver_radius", micrometers_for(c.receiver_radius)},
      {"tx_rx_distance", micrometers_for(c.tx_rx_distance)},
      {"num_molecules", c.num_molecules},
      {"time_step", c.time_step},
      {"num_steps", c.num_steps},
      {"algorithm", std::string(to_string(c.algorithm))},
      {"trials", c.trials},
      {"seed", c.seed},
      {"max_resample_attempts", c.max_resample_attempts},
  };
}

namespace {

double number(const nlohmann::json &v, const std::string &key) {
  if (!v.is_number())
    throw std::invalid_argument("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t count(const nlohmann::json &v, const std::string &key) {
  if (!v.is_number_unsigned())
    throw std::invalid_argument("config key '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

} // namespace

SimulationConfig config_from_json(const nlohmann::json &j, const SimulationConfig &base) {
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  SimulationConfig c = base;
  for (const auto &[key, value] : j.items()) {
    if (key == "diffusion_coefficient")
      c.diffusion_coefficient = number(value, key);
    else if (key == "receiver_radius")
      c.receiver_radius = from_micrometers(number(value, key));
    else if (key == "tx_rx_distance")
      c.tx_rx_distance = from_micrometers(number(value, key));
    else if (key == "num_molecules")
      c.num_molecules = count(value, key);
    else if (key == "time_step")
      c.time_step = number(value, key);
    else if (key == "num_steps")
      c.num_steps = count(value, key);
    else if (key == "trials")
      c.trials = count(value, key);
    else if (key == "seed")
      c.seed = count(value, key);
    else if (key == "max_resample_attempts")
      c.max_resample_attempts = count(value, key);
    else if (key == "algorithm") {
      if (!value.is_string())
        throw std::invalid_argument("config key 'algorithm' must be a string");
      auto a = parse_algorithm(value.get<std::string>());
      if (!a)
        throw std::invalid_argument("unknown algorithm '" + value.get<std::string>() + "'");
      c.algorithm = *a;
    } else
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return c;
}

SimulationConfig load_config(const std::filesystem::path &path, const SimulationConfig &base) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config " + path.string() + ": " + std::strerror(errno));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error &e) {
    throw std::invalid_argument("malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, base);
}

} // namespace absorb
