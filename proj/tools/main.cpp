// Command-line front end: matrix generation, submatrix-method runs,
// preconditioned-CG experiments, SuiteSparse fetching and scaling sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "smx/bench.hpp"
#include "smx/cg.hpp"
#include "smx/errors.hpp"
#include "smx/fetch.hpp"
#include "smx/generate.hpp"
#include "smx/ilu0.hpp"
#include "smx/mm_io.hpp"
#include "smx/norms.hpp"
#include "smx/report.hpp"
#include "smx/scheduler.hpp"
#include "smx/submatrix.hpp"

namespace {

using namespace smx;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNetwork = 3;

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct GenArgs {
    index_t n = 0;
    double density = 0.0;
    double kappa = 2.0;
    std::string kind = "balanced";
    std::uint64_t seed = 0;
    std::string out;
};

struct InvrootArgs {
    std::string in;
    int p = 1;
    int workers = default_workers();
    std::string strategy = "static";
    index_t chunk = 1;
    std::uint64_t shuffle_seed = 0;
    std::optional<double> refine_tol;
    int refine_maxiter = 50;
    bool symmetrize_output = false;
    bool compute_residual = false;
    std::string out;
    std::string report;
};

struct PrecondArgs {
    std::string in;
    std::string preconditioner = "none";
    double tol = 1e-6;
    int maxiter = -1;  // default 2n
    int workers = default_workers();
};

struct FetchArgs {
    std::string group;
    std::string name;
    std::string cache_dir = "suitesparse-cache";
    std::string base_url;
};

struct BenchArgs {
    std::string mode;
    index_t n = 8192;
    double density = 0.01;
    double kappa = 2.0;
    std::string kind = "balanced";
    std::uint64_t seed = 1;
    std::vector<int> workers_list;
    std::vector<index_t> sizes_list;
    int workers = default_workers();
    int p = 1;
    int repeats = 1;
    std::string strategy = "static";
    index_t chunk = 1;
    std::string out;
};

MatrixKind parse_kind(const std::string& kind) {
    return kind == "unbalanced" ? MatrixKind::unbalanced : MatrixKind::balanced;
}

SchedulerConfig make_sched(const std::string& strategy, int workers, index_t chunk,
                           std::uint64_t shuffle_seed) {
    SchedulerConfig sched;
    sched.workers = workers;
    sched.chunk = chunk;
    sched.shuffle_seed = shuffle_seed;
    if (strategy == "static") {
        sched.strategy = Strategy::static_contiguous;
    } else if (strategy == "shuffled") {
        sched.strategy = Strategy::shuffled;
    } else {
        sched.strategy = Strategy::dynamic;
    }
    return sched;
}

int run_gen(const GenArgs& args) {
    GeneratorSpec spec;
    spec.n = args.n;
    spec.d = args.density;
    spec.kappa = args.kappa;
    spec.kind = parse_kind(args.kind);
    spec.seed = args.seed;
    const CscMatrix a = generate_sparse_spd(spec);
    write_matrix_market_file(a, args.out);

    const CondEstimate cond = estimate_condition(a, 1e-3, 100);
    std::printf("wrote %s: n=%lld nnz=%lld density=%.6g kappa_est=%.4g\n", args.out.c_str(),
                static_cast<long long>(a.n), static_cast<long long>(a.nnz()), a.density(),
                cond.kappa);
    return 0;
}

int run_invroot(const InvrootArgs& args) {
    const CscMatrix a = read_matrix_market_file(args.in);

    MethodConfig cfg = MethodConfig::for_p(args.p);
    if (args.refine_tol) cfg.refine = RefineConfig{*args.refine_tol, args.refine_maxiter};
    const SchedulerConfig sched =
        make_sched(args.strategy, args.workers, args.chunk, args.shuffle_seed);

    auto [x, run] = submatrix_inverse_proot(a, cfg, sched);
    if (args.symmetrize_output) x = symmetrize(x);
    if (!args.out.empty()) write_matrix_market_file(x, args.out);

    ReportRecord rec = describe_run(args.in, a, run);
    if (args.compute_residual) {
        rec.set("residual_norm", residual_norm(a, x, args.p));
    }
    if (!args.report.empty()) {
        write_reports_file({rec}, args.report);
    }
    std::printf("n=%lld p=%d workers=%d strategy=%s wall_ms=%.3f max_submatrix=%lld%s\n",
                static_cast<long long>(run.n), run.p, run.workers, run.strategy.c_str(),
                run.timing.wall_seconds * 1e3,
                static_cast<long long>(run.timing.max_submatrix_dim),
                run.arrowhead_warning ? " (arrowhead-like column present)" : "");
    if (args.compute_residual) {
        std::printf("residual_norm=%.6g\n", rec.get_double("residual_norm"));
    }
    return 0;
}

int run_precond(const PrecondArgs& args) {
    const CscMatrix a = read_matrix_market_file(args.in);
    if (!a.symmetric) {
        throw Error(Errc::not_symmetric, args.in + " is not symmetric");
    }
    std::vector<double> b(static_cast<std::size_t>(a.n), 1.0);

    std::string kappa_text = "-";
    try {
        // bounded effort; for very ill-conditioned matrices this
        // underestimates and is reported as a lower bound
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", estimate_condition(a, 1e-2, 12, 2000).kappa);
        kappa_text = buf;
    } catch (const Error&) {
    }

    CgReport report;
    if (args.preconditioner == "sm") {
        const SchedulerConfig sched = make_sched("dynamic", args.workers, 1, 0);
        const CscMatrix k = make_sm_preconditioner(a, sched);
        report = cg_solve_split_preconditioned(a, b, k, args.tol, args.maxiter);
    } else if (args.preconditioner == "ilu0") {
        report = cg_solve_ilu0_preconditioned(a, b, ilu0(a), args.tol, args.maxiter);
    } else {
        report = cg_solve(a, b, args.tol, args.maxiter);
    }

    std::string iter_text = report.converged ? std::to_string(report.iterations) : "DNC";
    std::printf("%s n=%lld kappa_est=%s preconditioner=%s iterations=%s\n", args.in.c_str(),
                static_cast<long long>(a.n), kappa_text.c_str(), args.preconditioner.c_str(),
                iter_text.c_str());
    return 0;
}

int run_fetch(const FetchArgs& args) {
    FetchOptions options;
    options.base_url = args.base_url;
    options.cache_dir = args.cache_dir;
    const std::string path = fetch_suitesparse(args.group, args.name, options);
    std::printf("%s\n", path.c_str());
    return 0;
}

int run_bench(const BenchArgs& args) {
    BenchConfig cfg;
    cfg.base.n = args.n;
    cfg.base.d = args.density;
    cfg.base.kappa = args.kappa;
    cfg.base.kind = parse_kind(args.kind);
    cfg.base.seed = args.seed;
    cfg.workers_list = args.workers_list;
    cfg.sizes_list = args.sizes_list;
    cfg.workers = args.workers;
    cfg.p = args.p;
    cfg.repeats = args.repeats;
    cfg.sched = make_sched(args.strategy, 1, args.chunk, 0);
    if (args.mode == "cores") {
        cfg.mode = BenchMode::cores;
    } else if (args.mode == "sizes-fixed-d") {
        cfg.mode = BenchMode::sizes_fixed_d;
    } else {
        cfg.mode = BenchMode::sizes_linear_d;
    }

    const std::vector<ReportRecord> records = run_bench(cfg);
    if (args.out.empty()) {
        write_reports(records, std::cout);
    } else {
        write_reports_file(records, args.out);
        std::printf("wrote %zu records to %s\n", records.size(), args.out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"submatrix method for approximate inverse p-th roots of sparse matrices"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random sparse SPD matrix");
    gen_cmd->add_option("--n", gen.n, "matrix dimension")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--density", gen.density, "target density in (0,1]")
        ->required()
        ->check(CLI::Range(1e-9, 1.0));
    gen_cmd->add_option("--kappa", gen.kappa, "target condition number")
        ->check(CLI::Range(1.0, 1e16));
    gen_cmd->add_option("--kind", gen.kind, "fill structure")
        ->check(CLI::IsMember({"balanced", "unbalanced"}));
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--out", gen.out, "output Matrix Market file")->required();

    InvrootArgs inv;
    CLI::App* inv_cmd = app.add_subcommand("invroot", "approximate inverse p-th root");
    inv_cmd->add_option("--in", inv.in, "input Matrix Market file")->required();
    inv_cmd->add_option("--p", inv.p, "root exponent")->check(CLI::PositiveNumber);
    inv_cmd->add_option("--workers", inv.workers, "worker threads")->check(CLI::PositiveNumber);
    inv_cmd->add_option("--strategy", inv.strategy, "task assignment")
        ->check(CLI::IsMember({"static", "shuffled", "dynamic"}));
    inv_cmd->add_option("--chunk", inv.chunk, "dynamic chunk size")->check(CLI::PositiveNumber);
    inv_cmd->add_option("--shuffle-seed", inv.shuffle_seed, "seed for the shuffled strategy");
    inv_cmd->add_option("--refine-tol", inv.refine_tol, "refine each submatrix to this residual");
    inv_cmd->add_option("--refine-maxiter", inv.refine_maxiter, "refinement iteration cap");
    inv_cmd->add_flag("--symmetrize", inv.symmetrize_output, "emit (X + X^T)/2");
    inv_cmd->add_flag("--residual", inv.compute_residual, "compute ||X^p A - I||_2");
    inv_cmd->add_option("--out", inv.out, "result Matrix Market file");
    inv_cmd->add_option("--report", inv.report, "run report file");

    PrecondArgs pre;
    CLI::App* pre_cmd = app.add_subcommand("precond", "CG iteration counts with preconditioners");
    pre_cmd->add_option("--in", pre.in, "input Matrix Market file")->required();
    pre_cmd->add_option("--preconditioner", pre.preconditioner, "preconditioner")
        ->check(CLI::IsMember({"none", "sm", "ilu0"}));
    pre_cmd->add_option("--tol", pre.tol, "relative residual threshold")
        ->check(CLI::Range(1e-16, 1.0));
    pre_cmd->add_option("--maxiter", pre.maxiter, "iteration cap (default 2n)");
    pre_cmd->add_option("--workers", pre.workers, "workers for the sm preconditioner");

    FetchArgs fetch;
    CLI::App* fetch_cmd = app.add_subcommand("fetch", "download a SuiteSparse matrix");
    fetch_cmd->add_option("--group", fetch.group, "collection group")->required();
    fetch_cmd->add_option("--name", fetch.name, "matrix name")->required();
    fetch_cmd->add_option("--cache-dir", fetch.cache_dir, "cache directory");
    fetch_cmd->add_option("--base-url", fetch.base_url,
                          "collection host (default: SM_SUITESPARSE_URL or sparse.tamu.edu)");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "scaling sweeps");
    bench_cmd->add_option("--mode", bench.mode, "sweep mode")
        ->required()
        ->check(CLI::IsMember({"cores", "sizes-fixed-d", "sizes-linear-d"}));
    bench_cmd->add_option("--n", bench.n, "matrix dimension (cores mode)");
    bench_cmd->add_option("--density", bench.density, "density (cores / sizes-fixed-d)");
    bench_cmd->add_option("--kappa", bench.kappa, "target condition number");
    bench_cmd->add_option("--kind", bench.kind, "fill structure")
        ->check(CLI::IsMember({"balanced", "unbalanced"}));
    bench_cmd->add_option("--seed", bench.seed, "rng seed");
    bench_cmd->add_option("--workers-list", bench.workers_list, "worker counts (cores mode)")
        ->delimiter(',');
    bench_cmd->add_option("--sizes-list", bench.sizes_list, "matrix sizes (sizes modes)")
        ->delimiter(',');
    bench_cmd->add_option("--workers", bench.workers, "workers (sizes modes)");
    bench_cmd->add_option("--p", bench.p, "root exponent")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--repeats", bench.repeats, "repetitions per configuration")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--strategy", bench.strategy, "task assignment")
        ->check(CLI::IsMember({"static", "shuffled", "dynamic"}));
    bench_cmd->add_option("--chunk", bench.chunk, "dynamic chunk size");
    bench_cmd->add_option("--out", bench.out, "report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (inv_cmd->parsed()) return run_invroot(inv);
        if (pre_cmd->parsed()) return run_precond(pre);
        if (fetch_cmd->parsed()) return run_fetch(fetch);
        if (bench_cmd->parsed()) return run_bench(bench);
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", errc_name(e.code), e.what());
        return e.code == Errc::network_error ? kExitNetwork : kExitFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return 0;
}
