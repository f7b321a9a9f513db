#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "smx/csc.hpp"

namespace smx {

enum class Strategy { static_contiguous, shuffled, dynamic };

/// Worker pool configuration. `workers` are threads in one process; the
/// plan/collect split mirrors a message-passing layout so a distributed
/// backend could slot in behind the same interface.
struct SchedulerConfig {
    int workers = 1;
    Strategy strategy = Strategy::static_contiguous;
    std::uint64_t shuffle_seed = 0;  // shuffled only
    index_t chunk = 1;               // dynamic only

    void validate() const;
};

/// Ordered column ownership per worker; always a partition of {0..n-1}.
struct Assignment {
    std::vector<std::vector<index_t>> owned;
};

/// Wall/busy/phase accounting for one parallel run, all from the monotonic
/// clock. Solve time is measured around the kernel call only; building the
/// dense submatrix and writing the result column back are tracked as
/// separate phases.
struct TimingReport {
    std::vector<double> per_worker_busy;  // seconds, solve phase
    double wall_seconds = 0.0;
    double build_seconds = 0.0;     // summed over workers
    double solve_seconds = 0.0;     // summed over workers
    double assemble_seconds = 0.0;  // summed over workers
    index_t max_submatrix_dim = 0;
};

/// Contiguous split: the first n%w workers take one extra column.
Assignment plan_static(index_t n, int workers);

/// Seeded permutation of the columns dealt round-robin; deterministic in
/// (n, workers, seed), so every worker can rebuild its own share.
Assignment plan_shuffled(index_t n, int workers, std::uint64_t seed);

/// Per-column phase timings reported by a task, all in seconds.
struct TaskSample {
    double build = 0.0;
    double solve = 0.0;
    double assemble = 0.0;
    index_t dim = 0;
};

/// Runs task(j) for every column j on a pool of exactly `workers` threads.
/// static/shuffled pre-assign via the plan ops; dynamic pulls chunks from a
/// shared cursor. Tasks must be independent; the first thrown error aborts
/// the run (remaining workers drain) and is rethrown.
TimingReport run_parallel(index_t n, const SchedulerConfig& cfg,
                          const std::function<TaskSample(index_t)>& task);

}  // namespace smx
