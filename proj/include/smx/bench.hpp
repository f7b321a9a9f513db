#pragma once

#include <vector>

#include "smx/generate.hpp"
#include "smx/report.hpp"
#include "smx/scheduler.hpp"
#include "smx/submatrix.hpp"

namespace smx {

enum class BenchMode { cores, sizes_fixed_d, sizes_linear_d };

/// Scaling-sweep parameters. `cores` varies the worker count on one matrix;
/// the sizes modes sweep n with either a fixed density or the linearly
/// decreasing density d = 0.16 * 1024 / n.
struct BenchConfig {
    BenchMode mode = BenchMode::cores;
    GeneratorSpec base;               // n/density ignored per mode where swept
    std::vector<int> workers_list;    // cores mode
    std::vector<index_t> sizes_list;  // sizes modes
    int workers = 1;                  // sizes modes
    int p = 1;
    int repeats = 1;
    SchedulerConfig sched;  // strategy/chunk template; workers filled per run
};

/// Density rule of the sizes-linear-d mode.
double linear_density(index_t n);

/// Runs the sweep and returns one record per configuration with wall-time
/// statistics over `repeats` runs; cores mode adds a speedup column relative
/// to the workers=1 row.
std::vector<ReportRecord> run_bench(const BenchConfig& cfg);

/// Builds the standard record for one method run (shared by the invroot
/// command and the bench sweeps).
ReportRecord describe_run(const std::string& matrix_id, const CscMatrix& a, const RunReport& run);

}  // namespace smx
