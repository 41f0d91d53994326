#include <algorithm>
#include <charconv>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "absorb/cli.hpp"
#include "absorb/config_io.hpp"

namespace absorb::cli {

namespace {

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

std::vector<Algorithm> parse_algorithm_list(const std::string &s) {
  std::vector<Algorithm> out;
  for (const auto &item : split_list(s)) {
    auto a = parse_algorithm(item);
    if (!a)
      throw UsageError("unknown algorithm '" + item + "' (expected smc, sc, rmc or apmc)");
    if (std::find(out.begin(), out.end(), *a) == out.end())
      out.push_back(*a);
  }
  if (out.empty())
    throw UsageError("empty algorithm list");
  return out;
}

std::uint64_t parse_seed(const std::string &s, const char *origin) {
  std::uint64_t v = 0;
  const auto *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty())
    throw UsageError(std::string(origin) + ": invalid seed '" + s + "'");
  return v;
}

bool is_scalable(const std::string &preset) { return preset.rfind("fig3", 0) == 0 || preset.rfind("fig4", 0) == 0; }

struct Flags {
  std::optional<std::string> preset;
  std::optional<std::string> algorithm;
  std::optional<double> diffusion;
  std::optional<double> radius_um;
  std::optional<double> distance_um;
  std::optional<double> dt;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> scale_n;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_resample;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> config;
};

void apply_overrides(SimulationConfig &c, const Flags &f) {
  if (f.diffusion)
    c.diffusion_coefficient = *f.diffusion;
  if (f.radius_um)
    c.receiver_radius = from_micrometers(*f.radius_um);
  if (f.distance_um)
    c.tx_rx_distance = from_micrometers(*f.distance_um);
  if (f.dt)
    c.time_step = *f.dt;
  if (f.steps)
    c.num_steps = *f.steps;
  if (f.trials)
    c.trials = *f.trials;
  if (f.max_resample)
    c.max_resample_attempts = *f.max_resample;
}

} // namespace

std::variant<RunPlan, HelpText> parse_args(const std::vector<std::string> &args, std::optional<std::string> env_seed) {
  CLI::App app{"Monte Carlo simulator for molecule absorption at a spherical receiver", "absorb_sim"};
  app.require_subcommand(1);
  CLI::App *run = app.add_subcommand("run", "Run a preset experiment or a custom configuration");

  Flags f;
  run->add_option("--preset", f.preset, "Preset name(s), comma separated: fig3a,fig3b,fig4a,fig4b,fig5 or all");
  run->add_option("--algorithm", f.algorithm, "Comma list of smc|sc|rmc|apmc");
  run->add_option("--diffusion", f.diffusion, "Diffusion coefficient [m^2/s]");
  run->add_option("--radius-um", f.radius_um, "Receiver radius [um]");
  run->add_option("--distance-um", f.distance_um, "Transmitter to receiver-center distance [um]");
  run->add_option("--dt", f.dt, "Time step [s]");
  run->add_option("--steps", f.steps, "Number of time steps M");
  run->add_option("--n", f.n, "Molecules released per trial (any run)");
  run->add_option("--scale-n", f.scale_n, "Molecules released per trial for fig3*/fig4* presets");
  run->add_option("--trials", f.trials, "Independent trials");
  run->add_option("--seed", f.seed, "Random seed (default 42, or $ABSORB_SIM_SEED)");
  run->add_option("--max-resample", f.max_resample, "APMC resample attempts before failing (default 1000)");
  run->add_option("--workers", f.workers, "Worker threads (default: hardware concurrency)");
  run->add_option("--out", f.out, "Output directory (default .)");
  run->add_option("--config", f.config, "JSON config file (lengths in um, times in s)");

  std::vector<const char *> argv{"absorb_sim"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    const bool sub = std::find(args.begin(), args.end(), "run") != args.end();
    return HelpText{sub ? run->help() : app.help()};
  } catch (const CLI::ParseError &e) {
    throw UsageError(e.what());
  }

  std::optional<std::uint64_t> seed = f.seed;
  if (!seed && env_seed)
    seed = parse_seed(*env_seed, "ABSORB_SIM_SEED");

  std::optional<std::vector<Algorithm>> algorithms;
  if (f.algorithm)
    algorithms = parse_algorithm_list(*f.algorithm);

  auto finish = [&](std::string name, SimulationConfig base, std::vector<Algorithm> default_algorithms) {
    SimulationConfig c = base;
    if (f.config) {
      try {
        c = load_config(*f.config, c);
      } catch (const std::exception &e) {
        throw UsageError(e.what());
      }
      if (!algorithms && f.preset == std::nullopt)
        default_algorithms = {c.algorithm};
    }
    apply_overrides(c, f);
    if (f.scale_n && is_scalable(name))
      c.num_molecules = *f.scale_n;
    if (f.n)
      c.num_molecules = *f.n;
    if (seed)
      c.seed = *seed;
    RunSpec spec{std::move(name), c, algorithms ? *algorithms : std::move(default_algorithms)};
    spec.config.algorithm = spec.algorithms.front();
    try {
      validate(spec.config);
    } catch (const ConfigError &e) {
      throw UsageError(spec.name + ": " + e.what());
    }
    return spec;
  };

  RunPlan plan;
  if (f.preset) {
    std::vector<std::string> names = split_list(*f.preset);
    if (names.size() == 1 && names.front() == "all")
      names = preset_names();
    if (names.empty())
      throw UsageError("empty preset list");
    for (const auto &name : names) {
      auto preset = find_preset(name);
      if (!preset)
        throw UsageError("unknown preset '" + name + "'");
      plan.runs.push_back(finish(preset->name, preset->config, preset->algorithms));
    }
    if (f.scale_n && std::none_of(names.begin(), names.end(), is_scalable))
      throw UsageError("--scale-n only applies to fig3*/fig4* presets");
  } else {
    if (f.scale_n)
      throw UsageError("--scale-n only applies to fig3*/fig4* presets; use --n");
    std::string name = f.config ? std::filesystem::path(*f.config).stem().string() : "custom";
    plan.runs.push_back(
        finish(std::move(name), SimulationConfig{}, {Algorithm::smc, Algorithm::sc, Algorithm::rmc, Algorithm::apmc}));
  }

  if (f.out)
    plan.out_dir = *f.out;
  if (f.workers) {
    if (*f.workers == 0)
      throw UsageError("--workers must be at least 1");
    plan.workers = *f.workers;
  } else {
    plan.workers = std::max(1u, std::thread::hardware_concurrency());
  }
  return plan;
}

} // namespace absorb::cli
