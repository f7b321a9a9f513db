#include "smx/bench.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smx/errors.hpp"

namespace smx {

double linear_density(index_t n) { return 0.16 * 1024.0 / static_cast<double>(n); }

ReportRecord describe_run(const std::string& matrix_id, const CscMatrix& a, const RunReport& run) {
    ReportRecord rec;
    rec.set("matrix_id", matrix_id);
    rec.set("n", run.n);
    rec.set("nnz", run.nnz);
    rec.set("density", a.density());
    rec.set("p", run.p);
    rec.set("strategy", run.strategy);
    rec.set("workers", run.workers);
    rec.set("wall_time_ms", run.timing.wall_seconds * 1e3);
    rec.set("build_ms", run.timing.build_seconds * 1e3);
    rec.set("solve_ms", run.timing.solve_seconds * 1e3);
    rec.set("assemble_ms", run.timing.assemble_seconds * 1e3);
    rec.set("max_submatrix_dim", run.timing.max_submatrix_dim);
    rec.set("arrowhead_warning", static_cast<std::int64_t>(run.arrowhead_warning ? 1 : 0));
    return rec;
}

namespace {

struct Timed {
    RunReport report;
    std::vector<double> walls_ms;  // one per repeat, sorted
};

Timed run_config(const CscMatrix& a, int p, const SchedulerConfig& sched, int repeats) {
    Timed t;
    for (int r = 0; r < repeats; ++r) {
        auto [x, report] = submatrix_inverse_proot(a, MethodConfig::for_p(p), sched);
        (void)x;
        t.walls_ms.push_back(report.timing.wall_seconds * 1e3);
        t.report = report;
    }
    std::sort(t.walls_ms.begin(), t.walls_ms.end());
    return t;
}

void set_wall_stats(ReportRecord& rec, const std::vector<double>& walls_ms) {
    rec.set("repeats", static_cast<std::int64_t>(walls_ms.size()));
    rec.set("wall_ms_min", walls_ms.front());
    rec.set("wall_ms_median", walls_ms[walls_ms.size() / 2]);
    rec.set("wall_ms_max", walls_ms.back());
}

}  // namespace

std::vector<ReportRecord> run_bench(const BenchConfig& cfg) {
    if (cfg.repeats < 1) throw Error(Errc::infeasible_spec, "bench: repeats must be >= 1");
    std::vector<ReportRecord> records;

    if (cfg.mode == BenchMode::cores) {
        if (cfg.workers_list.empty()) {
            throw Error(Errc::infeasible_spec, "bench: cores mode needs a workers list");
        }
        std::vector<int> workers = cfg.workers_list;
        if (std::find(workers.begin(), workers.end(), 1) == workers.end()) {
            workers.insert(workers.begin(), 1);  // speedup baseline
        }
        const CscMatrix a = generate_sparse_spd(cfg.base);
        double baseline_ms = 0.0;
        for (int w : workers) {
            SchedulerConfig sched = cfg.sched;
            sched.workers = w;
            const Timed t = run_config(a, cfg.p, sched, cfg.repeats);
            const double median = t.walls_ms[t.walls_ms.size() / 2];
            if (w == 1) baseline_ms = median;
            ReportRecord rec = describe_run("generated", a, t.report);
            set_wall_stats(rec, t.walls_ms);
            if (baseline_ms > 0.0) rec.set("speedup", baseline_ms / median);
            records.push_back(std::move(rec));
        }
        return records;
    }

    if (cfg.sizes_list.empty()) {
        throw Error(Errc::infeasible_spec, "bench: sizes mode needs a sizes list");
    }
    for (index_t n : cfg.sizes_list) {
        GeneratorSpec spec = cfg.base;
        spec.n = n;
        if (cfg.mode == BenchMode::sizes_linear_d) spec.d = linear_density(n);
        const CscMatrix a = generate_sparse_spd(spec);
        SchedulerConfig sched = cfg.sched;
        sched.workers = cfg.workers;
        const Timed t = run_config(a, cfg.p, sched, cfg.repeats);
        ReportRecord rec = describe_run("generated", a, t.report);
        set_wall_stats(rec, t.walls_ms);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace smx
