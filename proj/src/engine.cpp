#include "absorb/engine.hpp"

#include <numeric>

#include "absorb/math.hpp"
#include "parallel.hpp"

namespace absorb {

ResampleExhausted::ResampleExhausted(std::uint64_t molecule, std::uint64_t step, std::uint64_t attempts)
    : std::runtime_error("APMC resampling exhausted for molecule " + std::to_string(molecule) + " at step " +
                         std::to_string(step) + " after " + std::to_string(attempts) + " attempts"),
      molecule_(molecule), step_(step), attempts_(attempts) {}

TrialState release(const SimulationConfig &config, std::uint64_t trial_id) {
  TrialState state;
  state.molecules.resize(config.num_molecules);
  state.streams.reserve(config.num_molecules);
  for (std::uint64_t i = 0; i < config.num_molecules; ++i)
    state.streams.push_back(make_stream(config.seed, trial_id, i));
  return state;
}

namespace {

// Advances molecules [begin, end) to step `step`; returns how many were absorbed.
std::uint64_t step_range(TrialState &state, std::size_t begin, std::size_t end, std::uint64_t step,
                         const SimulationConfig &config, const ReceiverGeometry &rx) {
  const double D = config.diffusion_coefficient;
  const double dt = config.time_step;
  std::uint64_t absorbed = 0;
  for (std::size_t i = begin; i < end; ++i) {
    MoleculeState &m = state.molecules[i];
    if (!m.is_free())
      continue;
    RandomStream &stream = state.streams[i];
    const Vec3 p0 = m.position;

    if (config.algorithm == Algorithm::apmc) {
      if (decide_apmc_pre(p0, rx, D, dt, stream) == Decision::absorbed) {
        m.mark_absorbed(step);
        ++absorbed;
        continue;
      }
      auto moved = apmc_resample(p0, rx, D, dt, stream, config.max_resample_attempts);
      if (!moved)
        throw ResampleExhausted(i, step, config.max_resample_attempts);
      m.position = *moved;
      continue;
    }

    const Vec3 p1 = brownian_step(p0, D, dt, stream);
    Decision d = Decision::free;
    switch (config.algorithm) {
    case Algorithm::smc:
      d = decide_smc(p0, p1, rx);
      break;
    case Algorithm::sc:
      d = decide_sc(p0, p1, rx);
      break;
    case Algorithm::rmc:
      d = decide_rmc(p0, p1, rx, D, dt, stream);
      break;
    case Algorithm::apmc:
      break;
    }
    m.position = p1;
    if (d == Decision::absorbed) {
      m.mark_absorbed(step);
      ++absorbed;
    }
  }
  return absorbed;
}

} // namespace

void run_step(TrialState &state, const SimulationConfig &config, const ReceiverGeometry &rx, unsigned workers) {
  const std::uint64_t step = state.step + 1;
  const std::size_t n = state.molecules.size();
  std::uint64_t newly = 0;
  if (workers <= 1) {
    newly = step_range(state, 0, n, step, config, rx);
  } else {
    const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
    std::vector<std::uint64_t> partial(chunks, 0);
    detail::parallel_chunks(chunks, static_cast<unsigned>(chunks), [&](std::size_t c, std::size_t) {
      partial[c] = step_range(state, n * c / chunks, n * (c + 1) / chunks, step, config, rx);
    });
    newly = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  }
  state.step = step;
  state.newly_absorbed = newly;
  state.absorbed += newly;
}

std::vector<std::uint64_t> simulate_increments(const SimulationConfig &config, std::uint64_t trial_id,
                                               unsigned workers) {
  const ReceiverGeometry rx = ReceiverGeometry::from_config(config);
  TrialState state = release(config, trial_id);
  std::vector<std::uint64_t> increments;
  increments.reserve(config.num_steps);
  for (std::uint64_t k = 0; k < config.num_steps; ++k) {
    run_step(state, config, rx, workers);
    increments.push_back(state.newly_absorbed);
  }
  return increments;
}

namespace {

TimeSeriesResult make_series(const SimulationConfig &config, const std::vector<double> &absorbed) {
  TimeSeriesResult r;
  r.num_molecules = config.num_molecules;
  const double n = static_cast<double>(config.num_molecules);
  for (std::size_t k = 0; k < absorbed.size(); ++k) {
    const double t = static_cast<double>(k + 1) * config.time_step;
    r.time.push_back(t);
    r.absorbed.push_back(absorbed[k]);
    r.fraction.push_back(absorbed[k] / n);
    r.analytic_fraction.push_back(math::analytic_fraction(t, config.receiver_radius, config.tx_rx_distance,
                                                          config.diffusion_coefficient));
  }
  return r;
}

} // namespace

TimeSeriesResult run_trial(const SimulationConfig &config, std::uint64_t trial_id, unsigned workers) {
  const auto increments = simulate_increments(config, trial_id, workers);
  std::vector<double> cumulative;
  std::uint64_t total = 0;
  for (auto inc : increments) {
    total += inc;
    cumulative.push_back(static_cast<double>(total));
  }
  return make_series(config, cumulative);
}

TrialsResult run_trials(const SimulationConfig &config, unsigned workers) {
  const std::size_t trials = config.trials;
  const std::size_t steps = config.num_steps;

  DistributionResult dist;
  dist.num_molecules = config.num_molecules;
  dist.time_step = config.time_step;
  dist.newly_absorbed.resize(trials);

  if (trials == 1) {
    dist.newly_absorbed[0] = simulate_increments(config, 0, workers);
  } else {
    detail::parallel_chunks(trials, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t)
        dist.newly_absorbed[t] = simulate_increments(config, t, 1);
    });
  }

  // Integer sums make the aggregate independent of trial order.
  std::vector<std::uint64_t> step_sum(steps, 0);
  std::vector<std::uint64_t> cumulative_sum(steps, 0);
  for (const auto &row : dist.newly_absorbed) {
    std::uint64_t running = 0;
    for (std::size_t k = 0; k < steps; ++k) {
      running += row[k];
      step_sum[k] += row[k];
      cumulative_sum[k] += running;
    }
  }

  const double n_trials = static_cast<double>(trials);
  std::vector<double> mean_cumulative(steps);
  dist.mean.resize(steps);
  dist.variance.assign(steps, 0.0);
  dist.analytic_increment.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    dist.mean[k] = static_cast<double>(step_sum[k]) / n_trials;
    mean_cumulative[k] = static_cast<double>(cumulative_sum[k]) / n_trials;
    dist.analytic_increment[k] = math::analytic_increment(k + 1, config);
    if (trials > 1) {
      double ss = 0.0;
      for (const auto &row : dist.newly_absorbed) {
        const double dev = static_cast<double>(row[k]) - dist.mean[k];
        ss += dev * dev;
      }
      dist.variance[k] = ss / (n_trials - 1.0);
    }
  }

  return {std::move(dist), make_series(config, mean_cumulative)};
}

} // namespace absorb
