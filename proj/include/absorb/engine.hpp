#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "absorb/core.hpp"
#include "absorb/policy.hpp"
#include "absorb/rng.hpp"

namespace absorb {

class ResampleExhausted : public std::runtime_error {
public:
  ResampleExhausted(std::uint64_t molecule, std::uint64_t step, std::uint64_t attempts);

  std::uint64_t molecule() const noexcept { return molecule_; }
  std::uint64_t step() const noexcept { return step_; }
  std::uint64_t attempts() const noexcept { return attempts_; }

private:
  std::uint64_t molecule_;
  std::uint64_t step_;
  std::uint64_t attempts_;
};

/// One trial in flight. `streams[i]` belongs to `molecules[i]`.
struct TrialState {
  std::uint64_t step{0};
  std::vector<MoleculeState> molecules;
  std::vector<RandomStream> streams;
  std::uint64_t absorbed{0};
  std::uint64_t newly_absorbed{0};
};

/// All N molecules free at the origin, step 0, streams keyed by
/// (config.seed, trial_id, molecule index).
TrialState release(const SimulationConfig &config, std::uint64_t trial_id);

/// Advances every free molecule by one step under config.algorithm.
/// `workers` > 1 splits molecules across threads; the result does not depend
/// on it. Throws ResampleExhausted (lowest failing molecule id).
void run_step(TrialState &state, const SimulationConfig &config, const ReceiverGeometry &rx, unsigned workers = 1);

/// Newly absorbed count of each step k = 1..M for one trial.
std::vector<std::uint64_t> simulate_increments(const SimulationConfig &config, std::uint64_t trial_id,
                                               unsigned workers = 1);

TimeSeriesResult run_trial(const SimulationConfig &config, std::uint64_t trial_id = 0, unsigned workers = 1);

struct TrialsResult {
  DistributionResult distribution;
  TimeSeriesResult mean_series;
};

/// Runs trials 0..config.trials-1. Trials are spread over `workers` threads
/// (a single trial spreads its molecules instead). Output is independent of
/// `workers` and of scheduling.
TrialsResult run_trials(const SimulationConfig &config, unsigned workers = 1);

} // namespace absorb
