#include "smx/scheduler.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "smx/errors.hpp"
#include "smx/rng.hpp"

namespace smx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

void SchedulerConfig::validate() const {
    if (workers < 1) throw Error(Errc::infeasible_spec, "scheduler: workers must be >= 1");
    if (strategy == Strategy::dynamic && chunk < 1) {
        throw Error(Errc::infeasible_spec, "scheduler: chunk must be >= 1");
    }
}

Assignment plan_static(index_t n, int workers) {
    if (workers < 1) throw Error(Errc::infeasible_spec, "plan_static: workers must be >= 1");
    Assignment plan;
    plan.owned.resize(static_cast<std::size_t>(workers));
    const index_t w = workers;
    const index_t base = n / w;
    const index_t extra = n % w;  // the first `extra` workers take one more
    index_t next = 0;
    for (index_t k = 0; k < w; ++k) {
        const index_t count = base + (k < extra ? 1 : 0);
        auto& mine = plan.owned[static_cast<std::size_t>(k)];
        mine.resize(static_cast<std::size_t>(count));
        std::iota(mine.begin(), mine.end(), next);
        next += count;
    }
    return plan;
}

Assignment plan_shuffled(index_t n, int workers, std::uint64_t seed) {
    if (workers < 1) throw Error(Errc::infeasible_spec, "plan_shuffled: workers must be >= 1");
    std::vector<index_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    rng.shuffle(perm);
    Assignment plan;
    plan.owned.resize(static_cast<std::size_t>(workers));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        plan.owned[i % static_cast<std::size_t>(workers)].push_back(perm[i]);
    }
    return plan;
}

TimingReport run_parallel(index_t n, const SchedulerConfig& cfg,
                          const std::function<TaskSample(index_t)>& task) {
    cfg.validate();
    const int workers = cfg.workers;
    const auto t0 = Clock::now();

    Assignment plan;
    if (cfg.strategy == Strategy::static_contiguous) {
        plan = plan_static(n, workers);
    } else if (cfg.strategy == Strategy::shuffled) {
        plan = plan_shuffled(n, workers, cfg.shuffle_seed);
    }

    TimingReport report;
    report.per_worker_busy.assign(static_cast<std::size_t>(workers), 0.0);

    std::atomic<index_t> cursor{0};
    std::atomic<bool> abort{false};
    std::atomic<index_t> max_dim{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    std::vector<double> build(static_cast<std::size_t>(workers), 0.0);
    std::vector<double> assemble(static_cast<std::size_t>(workers), 0.0);

    auto run_column = [&](int wk, index_t j) {
        const TaskSample sample = task(j);
        report.per_worker_busy[static_cast<std::size_t>(wk)] += sample.solve;
        build[static_cast<std::size_t>(wk)] += sample.build;
        assemble[static_cast<std::size_t>(wk)] += sample.assemble;
        index_t seen = max_dim.load(std::memory_order_relaxed);
        while (sample.dim > seen &&
               !max_dim.compare_exchange_weak(seen, sample.dim, std::memory_order_relaxed)) {
        }
    };

    auto worker_body = [&](int wk) {
        try {
            if (cfg.strategy == Strategy::dynamic) {
                for (;;) {
                    if (abort.load(std::memory_order_relaxed)) return;
                    const index_t begin = cursor.fetch_add(cfg.chunk, std::memory_order_relaxed);
                    if (begin >= n) return;
                    const index_t end = std::min<index_t>(n, begin + cfg.chunk);
                    for (index_t j = begin; j < end; ++j) {
                        if (abort.load(std::memory_order_relaxed)) return;
                        run_column(wk, j);
                    }
                }
            } else {
                for (index_t j : plan.owned[static_cast<std::size_t>(wk)]) {
                    if (abort.load(std::memory_order_relaxed)) return;
                    run_column(wk, j);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            abort.store(true, std::memory_order_relaxed);
        }
    };

    if (workers == 1) {
        worker_body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int wk = 0; wk < workers; ++wk) pool.emplace_back(worker_body, wk);
        for (std::thread& t : pool) t.join();
    }
    report.wall_seconds = seconds_since(t0);

    if (first_error) std::rethrow_exception(first_error);

    report.build_seconds = std::accumulate(build.begin(), build.end(), 0.0);
    report.assemble_seconds = std::accumulate(assemble.begin(), assemble.end(), 0.0);
    report.solve_seconds = std::accumulate(report.per_worker_busy.begin(),
                                           report.per_worker_busy.end(), 0.0);
    report.max_submatrix_dim = max_dim.load();
    return report;
}

}  // namespace smx
