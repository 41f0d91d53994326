#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <ostream>

#include "absorb/cli.hpp"
#include "absorb/engine.hpp"

namespace absorb::cli {

namespace {

std::ofstream open_for_write(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + path.string() + ": " + std::strerror(errno));
  out.precision(12);
  return out;
}

void finish(std::ofstream &out, const std::filesystem::path &path) {
  out.flush();
  if (!out)
    throw std::runtime_error("write failed for " + path.string() + ": " + std::strerror(errno));
}

} // namespace

void write_timeseries_csv(std::span<const AlgorithmSeries> results, const std::filesystem::path &path) {
  if (results.empty())
    throw std::invalid_argument("no time series to write");
  const std::size_t steps = results.front().series.size();
  for (const auto &r : results)
    if (r.series.size() != steps)
      throw std::invalid_argument("time series of different lengths");

  auto out = open_for_write(path);
  out << "time_s,algorithm,absorbed,fraction,analytic_fraction\n";
  for (std::size_t k = 0; k < steps; ++k)
    for (const auto &r : results)
      out << r.series.time[k] << ',' << to_string(r.algorithm) << ',' << r.series.absorbed[k] << ','
          << r.series.fraction[k] << ',' << r.series.analytic_fraction[k] << '\n';
  finish(out, path);
}

std::filesystem::path summary_path_for(const std::filesystem::path &distribution_path) {
  auto p = distribution_path;
  p.replace_filename(distribution_path.stem().string() + "_summary.csv");
  return p;
}

void write_distribution_csv(const DistributionResult &dist, const std::filesystem::path &path) {
  if (dist.trials() == 0)
    throw std::invalid_argument("distribution has no trials");
  {
    auto out = open_for_write(path);
    out << "step,time_s,newly_absorbed,probability\n";
    for (std::size_t k = 0; k < dist.steps(); ++k) {
      const double t = static_cast<double>(k + 1) * dist.time_step;
      for (const auto &point : dist.mass_function(k))
        out << k + 1 << ',' << t << ',' << point.count << ',' << point.probability << '\n';
    }
    finish(out, path);
  }
  const auto summary = summary_path_for(path);
  auto out = open_for_write(summary);
  out << "step,time_s,mean,variance,analytic_increment\n";
  for (std::size_t k = 0; k < dist.steps(); ++k)
    out << k + 1 << ',' << static_cast<double>(k + 1) * dist.time_step << ',' << dist.mean[k] << ','
        << dist.variance[k] << ',' << dist.analytic_increment[k] << '\n';
  finish(out, summary);
}

int execute(const RunPlan &plan, std::ostream &log) {
  int status = 0;
  std::error_code ec;
  std::filesystem::create_directories(plan.out_dir, ec);
  if (ec) {
    log << "error: cannot create output directory " << plan.out_dir.string() << ": " << ec.message() << '\n';
    return 1;
  }

  for (const auto &run : plan.runs) {
    std::vector<AlgorithmSeries> series;
    for (Algorithm a : run.algorithms) {
      SimulationConfig config = run.config;
      config.algorithm = a;
      const auto started = std::chrono::steady_clock::now();
      try {
        TrialsResult result = run_trials(config, plan.workers);
        const auto dist_path = plan.out_dir / (run.name + "_" + std::string(to_string(a)) + "_distribution.csv");
        write_distribution_csv(result.distribution, dist_path);
        series.push_back({a, std::move(result.mean_series)});
      } catch (const std::exception &e) {
        log << "error: " << run.name << '/' << to_string(a) << " failed: " << e.what() << '\n';
        status = 1;
        continue;
      }
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
      log << run.name << '/' << to_string(a) << ": N=" << config.num_molecules << " M=" << config.num_steps
          << " trials=" << config.trials << " final fraction=" << series.back().series.fraction.back()
          << " analytic=" << series.back().series.analytic_fraction.back() << " (" << took.count() << " s)\n";
    }
    if (series.empty())
      continue;
    const auto ts_path = plan.out_dir / (run.name + "_timeseries.csv");
    try {
      write_timeseries_csv(series, ts_path);
    } catch (const std::exception &e) {
      log << "error: " << run.name << ": " << e.what() << '\n';
      status = 1;
    }
  }
  return status;
}

} // namespace absorb::cli
