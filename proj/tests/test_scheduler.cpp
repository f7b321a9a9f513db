#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <numeric>
#include <set>

#include "smx/errors.hpp"
#include "smx/generate.hpp"
#include "smx/scheduler.hpp"
#include "smx/submatrix.hpp"
#include "test_support.hpp"

using namespace smx;

namespace {

bool is_partition(const Assignment& plan, index_t n) {
    std::set<index_t> seen;
    for (const auto& owned : plan.owned) {
        for (index_t j : owned) {
            if (j < 0 || j >= n) return false;
            if (!seen.insert(j).second) return false;
        }
    }
    return static_cast<index_t>(seen.size()) == n;
}

}  // namespace

TEST_SUITE_BEGIN("scheduler");

TEST_CASE("static plan splits 10 columns over 3 workers as 4/3/3, contiguous") {
    const Assignment plan = plan_static(10, 3);
    CHECK(plan.owned[0] == std::vector<index_t>{0, 1, 2, 3});
    CHECK(plan.owned[1] == std::vector<index_t>{4, 5, 6});
    CHECK(plan.owned[2] == std::vector<index_t>{7, 8, 9});
}

TEST_CASE("static plan degenerate cases") {
    const Assignment one_each = plan_static(4, 4);
    for (int k = 0; k < 4; ++k) CHECK(one_each.owned[static_cast<std::size_t>(k)].size() == 1);

    const Assignment sparse_workers = plan_static(4, 8);
    int with_work = 0, without = 0;
    for (const auto& owned : sparse_workers.owned) {
        owned.empty() ? ++without : ++with_work;
    }
    CHECK(with_work == 4);
    CHECK(without == 4);
    CHECK(is_partition(sparse_workers, 4));
}

TEST_CASE("shuffled plan partitions deterministically") {
    const Assignment a = plan_shuffled(6, 2, 99);
    const Assignment b = plan_shuffled(6, 2, 99);
    CHECK(is_partition(a, 6));
    CHECK(a.owned[0].size() == 3);
    CHECK(a.owned[1].size() == 3);
    CHECK(a.owned[0] == b.owned[0]);
    CHECK(a.owned[1] == b.owned[1]);

    const Assignment c = plan_shuffled(6, 2, 100);
    CHECK(is_partition(c, 6));
    CHECK((c.owned[0] != a.owned[0] || c.owned[1] != a.owned[1]));
}

TEST_CASE("shuffled plan with one worker is a permutation of all columns") {
    const Assignment plan = plan_shuffled(16, 1, 5);
    CHECK(is_partition(plan, 16));
    std::vector<index_t> sorted = plan.owned[0];
    std::sort(sorted.begin(), sorted.end());
    std::vector<index_t> expect(16);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(sorted == expect);
    CHECK(plan.owned[0] != expect);  // actually permuted
}

TEST_CASE("two columns, two workers: one each, any seed") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
        const Assignment plan = plan_shuffled(2, 2, seed);
        CHECK(plan.owned[0].size() == 1);
        CHECK(plan.owned[1].size() == 1);
    }
}

TEST_CASE("run_parallel executes every task exactly once under all strategies") {
    const index_t n = 101;
    for (auto strategy : {Strategy::static_contiguous, Strategy::shuffled, Strategy::dynamic}) {
        for (int workers : {1, 3, 7}) {
            std::vector<std::atomic<int>> hits(static_cast<std::size_t>(n));
            SchedulerConfig cfg;
            cfg.workers = workers;
            cfg.strategy = strategy;
            cfg.chunk = 4;
            cfg.shuffle_seed = 7;
            const TimingReport t = run_parallel(n, cfg, [&](index_t j) {
                hits[static_cast<std::size_t>(j)].fetch_add(1);
                TaskSample s;
                s.dim = j + 1;
                return s;
            });
            for (const auto& h : hits) CHECK(h.load() == 1);
            CHECK(t.max_submatrix_dim == n);
            CHECK(t.per_worker_busy.size() == static_cast<std::size_t>(workers));
        }
    }
}

TEST_CASE("first task error wins and aborts the run") {
    SchedulerConfig cfg;
    cfg.workers = 4;
    cfg.strategy = Strategy::dynamic;
    std::atomic<int> executed{0};
    try {
        run_parallel(400, cfg, [&](index_t j) -> TaskSample {
            executed.fetch_add(1);
            if (j == 13) throw Error(Errc::not_positive_definite, "boom", j);
            // enough work per task that the abort flag is seen long before the
            // queue drains on its own
            std::this_thread::sleep_for(std::chrono::microseconds(500));
            return {};
        });
        FAIL("expected error propagation");
    } catch (const Error& e) {
        CHECK(e.code == Errc::not_positive_definite);
        CHECK(e.index == 13);
    }
    // workers drain instead of finishing the whole range
    CHECK(executed.load() < 200);
}

TEST_CASE("columns and residual are identical across strategies and worker counts") {
    GeneratorSpec spec;
    spec.n = 160;
    spec.d = 0.08;
    spec.kappa = 3.0;
    spec.seed = 2024;
    const CscMatrix a = generate_sparse_spd(spec);

    SchedulerConfig base;
    base.workers = 1;
    const CscMatrix reference = submatrix_inverse_proot(a, MethodConfig::for_p(2), base).first;

    for (auto strategy : {Strategy::static_contiguous, Strategy::shuffled, Strategy::dynamic}) {
        for (int workers : {1, 2, 5}) {
            SchedulerConfig cfg;
            cfg.workers = workers;
            cfg.strategy = strategy;
            cfg.shuffle_seed = 31;
            cfg.chunk = 3;
            const CscMatrix x = submatrix_inverse_proot(a, MethodConfig::for_p(2), cfg).first;
            REQUIRE(pattern_equal(reference, x));
            CHECK(x.val == reference.val);  // bit-identical
        }
    }
}

TEST_CASE("timing report is internally consistent") {
    GeneratorSpec spec;
    spec.n = 200;
    spec.d = 0.05;
    spec.kappa = 2.0;
    spec.seed = 5;
    const CscMatrix a = generate_sparse_spd(spec);
    SchedulerConfig cfg;
    cfg.workers = 2;
    const auto [x, report] = submatrix_inverse_proot(a, MethodConfig::for_p(1), cfg);
    (void)x;
    for (double busy : report.timing.per_worker_busy) CHECK(busy >= 0.0);
    CHECK(report.timing.wall_seconds > 0.0);
    CHECK(report.timing.solve_seconds ==
          doctest::Approx(std::accumulate(report.timing.per_worker_busy.begin(),
                                          report.timing.per_worker_busy.end(), 0.0)));
    CHECK(report.timing.max_submatrix_dim > 0);
    CHECK_FALSE(report.arrowhead_warning);
}

TEST_SUITE_END();
