#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absorb/core.hpp"

namespace absorb::cli {

/// A named experiment: fig3a, fig3b, fig4a, fig4b, fig5.
struct ExperimentPreset {
  std::string name;
  SimulationConfig config;
  std::vector<Algorithm> algorithms;
};

const std::vector<std::string> &preset_names();
std::optional<ExperimentPreset> find_preset(std::string_view name);

/// One resolved experiment: a config (algorithm field ignored) run once per
/// algorithm, all sharing the same seed.
struct RunSpec {
  std::string name;
  SimulationConfig config;
  std::vector<Algorithm> algorithms;
};

struct RunPlan {
  std::vector<RunSpec> runs;
  std::filesystem::path out_dir{"."};
  unsigned workers{1};
};

struct HelpText {
  std::string text;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// `args` excludes the program name, e.g. {"run", "--preset", "fig3b"}.
/// `env_seed` is the value of ABSORB_SIM_SEED, if set; --seed wins over it.
/// Returns the help table for --help. Throws UsageError on anything else that
/// is wrong, including configs that fail validate().
std::variant<RunPlan, HelpText> parse_args(const std::vector<std::string> &args,
                                           std::optional<std::string> env_seed = std::nullopt);

struct AlgorithmSeries {
  Algorithm algorithm;
  TimeSeriesResult series;
};

/// Header `time_s,algorithm,absorbed,fraction,analytic_fraction`, rows time
/// major / algorithm minor, 12 significant digits. Throws std::invalid_argument
/// for empty or ragged input and std::runtime_error on I/O failure.
void write_timeseries_csv(std::span<const AlgorithmSeries> results, const std::filesystem::path &path);

/// Long-format mass function `step,time_s,newly_absorbed,probability` at
/// `path`, plus `<stem>_summary.csv` next to it with
/// `step,time_s,mean,variance,analytic_increment`.
void write_distribution_csv(const DistributionResult &dist, const std::filesystem::path &path);
std::filesystem::path summary_path_for(const std::filesystem::path &distribution_path);

/// Runs every (run, algorithm) pair and writes
///   <out>/<name>_timeseries.csv
///   <out>/<name>_<algorithm>_distribution.csv (+ _summary.csv)
/// Returns 0 iff everything completed; failures are reported on `log` and the
/// remaining runs still execute.
int execute(const RunPlan &plan, std::ostream &log);

} // namespace absorb::cli
