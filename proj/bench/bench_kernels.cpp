// Times the serial reference path (jobs = 1) against the OpenMP path for
// the two parallel kernels: experiment replication batches and the
// concentration Monte Carlo.  Also asserts both paths agree bit-for-bit.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tsagg/bounds.hpp"
#include "tsagg/experiment.hpp"
#include "tsagg/parallel.hpp"
#include "tsagg/simulate.hpp"

using namespace tsagg;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

ExperimentConfig small_grid() {
  ExperimentConfig config;
  config.models = {"align1", "align2"};
  config.innovations = {"uniform"};
  config.n_values = {100};
  config.replications = 8;
  config.n_iter = 4000;
  config.n_burn = 2000;
  return config;
}

bool rows_equal(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i].test_mse != b.rows[i].test_mse ||
        a.rows[i].seed != b.rows[i].seed)
      return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) jobs = std::atoi(argv[++i]);
  }
  const int parallel_jobs = resolve_jobs(jobs);
  std::printf("openmp: %s, parallel path uses %d thread(s)\n",
              openmp_enabled() ? "enabled" : "disabled", parallel_jobs);

  {
    const auto config = small_grid();
    auto t0 = clock_type::now();
    const auto serial = run_experiment(config, 1);
    const double t_serial = seconds_since(t0);
    t0 = clock_type::now();
    const auto parallel = run_experiment(config, parallel_jobs);
    const double t_parallel = seconds_since(t0);
    std::printf("experiment batch (%zu tasks): serial %.3fs, openmp %.3fs, speedup %.2fx, identical: %s\n",
                serial.rows.size() / 3, t_serial, t_parallel,
                t_serial / t_parallel, rows_equal(serial, parallel) ? "yes" : "NO");
    if (!rows_equal(serial, parallel)) return 1;
  }

  {
    auto spec = ProcessSpec::ar({0.0}, InnovationSpec::uniform(0.8));
    std::vector<double> grid = {0.05, 0.10, 0.15, 0.20};
    auto run = [&](int j) {
      return samson_mc_check(
          spec, [](double x) { return x; }, 1.0, MixingProfile::iid(), grid,
          60, 40000, 99, std::nullopt, j);
    };
    auto t0 = clock_type::now();
    const auto serial = run(1);
    const double t_serial = seconds_since(t0);
    t0 = clock_type::now();
    const auto parallel = run(parallel_jobs);
    const double t_parallel = seconds_since(t0);
    bool same = serial.points.size() == parallel.points.size();
    for (std::size_t i = 0; same && i < serial.points.size(); ++i)
      same = serial.points[i].log_mgf == parallel.points[i].log_mgf;
    std::printf("concentration mc (%zu paths): serial %.3fs, openmp %.3fs, speedup %.2fx, identical: %s\n",
                static_cast<std::size_t>(40000), t_serial, t_parallel,
                t_serial / t_parallel, same ? "yes" : "NO");
    if (!same) return 1;
  }

  return 0;
}
