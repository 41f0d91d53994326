#include "absorb/cli.hpp"

namespace absorb::cli {

namespace {

ExperimentPreset make(std::string name, double radius_um, double dt, std::uint64_t steps, std::uint64_t n,
                      std::uint64_t trials, std::vector<Algorithm> algorithms) {
  SimulationConfig c;
  c.diffusion_coefficient = 1e-9;
  c.receiver_radius = radius_um / 1e6;
  c.tx_rx_distance = 50.0 / 1e6;
  c.num_molecules = n;
  c.time_step = dt;
  c.num_steps = steps;
  c.trials = trials;
  c.algorithm = algorithms.back();
  return {std::move(name), c, std::move(algorithms)};
}

const std::vector<Algorithm> kAll{Algorithm::smc, Algorithm::sc, Algorithm::rmc, Algorithm::apmc};

} // namespace

const std::vector<std::string> &preset_names() {
  static const std::vector<std::string> names{"fig3a", "fig3b", "fig4a", "fig4b", "fig5"};
  return names;
}

std::optional<ExperimentPreset> find_preset(std::string_view name) {
  if (name == "fig3a")
    return make("fig3a", 20.0, 0.1, 100, 1'000'000, 1, kAll);
  if (name == "fig3b")
    return make("fig3b", 0.5, 0.1, 100, 1'000'000, 1, kAll);
  if (name == "fig4a")
    return make("fig4a", 10.0, 0.5, 100, 1'000'000, 1, kAll);
  if (name == "fig4b")
    return make("fig4b", 10.0, 5.0, 100, 1'000'000, 1, kAll);
  if (name == "fig5")
    return make("fig5", 10.0, 0.5, 10, 1'000, 1'000, {Algorithm::rmc, Algorithm::apmc});
  return std::nullopt;
}

} // namespace absorb::cli
