#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "smx/mm_io.hpp"
#include "smx/report.hpp"
#include "test_support.hpp"

using namespace smx;
namespace fs = std::filesystem;

#ifndef SMX_CLI_PATH
#error "SMX_CLI_PATH must point at the built binary"
#endif

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const fs::path out_file = fs::temp_directory_path() / "smx-cli-test-output.txt";
    const std::string cmd =
        std::string(SMX_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult result;
    result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "smx-cli-tests") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen is deterministic and prints a summary") {
    TempDir dir;
    const std::string flags =
        " --n 96 --density 0.1 --kappa 2 --kind balanced --seed 7 --out ";
    const CommandResult first = run_cli("gen" + flags + dir.file("a.mtx"));
    CHECK(first.exit_code == 0);
    CHECK(first.output.find("kappa_est") != std::string::npos);

    const CommandResult second = run_cli("gen" + flags + dir.file("b.mtx"));
    CHECK(second.exit_code == 0);
    CHECK(slurp(dir.file("a.mtx")) == slurp(dir.file("b.mtx")));
    CHECK_FALSE(slurp(dir.file("a.mtx")).empty());
}

TEST_CASE("gen rejects out-of-range flags with exit code 2") {
    TempDir dir;
    CHECK(run_cli("gen --n 10 --density 0 --out " + dir.file("x.mtx")).exit_code == 2);
    CHECK(run_cli("gen --n 10 --out " + dir.file("x.mtx")).exit_code == 2);  // missing required
    CHECK(run_cli("gen --n 10 --density 0.5 --kind bogus --out " + dir.file("x.mtx")).exit_code ==
          2);
}

TEST_CASE("invroot on a block-diagonal file reports a tiny residual") {
    TempDir dir;
    write_matrix_market_file(test::csc_from_rows({{2, 1, 0}, {1, 2, 0}, {0, 0, 3}}),
                             dir.file("bd.mtx"));
    const CommandResult r = run_cli("invroot --in " + dir.file("bd.mtx") +
                                    " --p 1 --residual --out " + dir.file("x.mtx") +
                                    " --report " + dir.file("report.txt"));
    CHECK(r.exit_code == 0);

    const auto records = parse_reports_file(dir.file("report.txt"));
    REQUIRE(records.size() == 1);
    CHECK(records[0].get_double("residual_norm") < 1e-10);
    CHECK(records[0].get_int("n") == 3);

    const CscMatrix x = read_matrix_market_file(dir.file("x.mtx"));
    CHECK(x.at(0, 0) == doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("invroot output is independent of the worker count") {
    TempDir dir;
    CHECK(run_cli("gen --n 128 --density 0.08 --kappa 3 --seed 9 --out " + dir.file("m.mtx"))
              .exit_code == 0);
    CHECK(run_cli("invroot --in " + dir.file("m.mtx") + " --p 2 --workers 1 --out " +
                  dir.file("w1.mtx"))
              .exit_code == 0);
    CHECK(run_cli("invroot --in " + dir.file("m.mtx") +
                  " --p 2 --workers 8 --strategy dynamic --out " + dir.file("w8.mtx"))
              .exit_code == 0);
    CHECK(slurp(dir.file("w1.mtx")) == slurp(dir.file("w8.mtx")));
}

TEST_CASE("invroot names the offending columns on a zero diagonal") {
    TempDir dir;
    write_matrix_market_file(test::csc_from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 1}}),
                             dir.file("zd.mtx"));
    const CommandResult r = run_cli("invroot --in " + dir.file("zd.mtx") + " --p 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("DiagonalZero") != std::string::npos);
    CHECK(r.output.find("0 1") != std::string::npos);
}

TEST_CASE("invroot exits 1 on unreadable input") {
    const CommandResult r = run_cli("invroot --in /nonexistent/nope.mtx");
    CHECK(r.exit_code == 1);
}

TEST_CASE("precond on the identity finishes in one iteration for every preconditioner") {
    TempDir dir;
    write_matrix_market_file(CscMatrix::identity(12), dir.file("eye.mtx"));
    for (const std::string pc : {"none", "sm", "ilu0"}) {
        const CommandResult r =
            run_cli("precond --in " + dir.file("eye.mtx") + " --preconditioner " + pc);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("iterations=1") != std::string::npos);
    }
}

TEST_CASE("bench emits parseable records with wall statistics and speedup") {
    TempDir dir;
    const CommandResult r = run_cli(
        "bench --mode cores --n 64 --density 0.2 --kappa 2 --seed 3 --workers-list 1,2 "
        "--p 1 --repeats 3 --out " +
        dir.file("bench.txt"));
    CHECK(r.exit_code == 0);
    const auto records = parse_reports_file(dir.file("bench.txt"));
    REQUIRE(records.size() == 2);
    for (const auto& rec : records) {
        CHECK(rec.get_int("repeats") == 3);
        CHECK(rec.get_double("wall_ms_min") <= rec.get_double("wall_ms_median"));
        CHECK(rec.get_double("wall_ms_median") <= rec.get_double("wall_ms_max"));
        CHECK(rec.get("speedup").has_value());
    }
    CHECK(records[0].get_int("workers") == 1);
    CHECK(records[1].get_int("workers") == 2);

    const CommandResult sizes = run_cli(
        "bench --mode sizes-fixed-d --sizes-list 32,64 --density 0.2 --workers 2 --out " +
        dir.file("sizes.txt"));
    CHECK(sizes.exit_code == 0);
    const auto size_records = parse_reports_file(dir.file("sizes.txt"));
    REQUIRE(size_records.size() == 2);
    CHECK(size_records[0].get_int("n") == 32);
    CHECK(size_records[1].get_int("n") == 64);
    CHECK(size_records[1].get_double("density") == doctest::Approx(0.2).epsilon(0.25));
}

TEST_CASE("fetch maps an unreachable host to exit code 3") {
    TempDir dir;
    const CommandResult r = run_cli("fetch --group G --name m --base-url http://127.0.0.1:9 "
                                    "--cache-dir " +
                                    dir.file("cache"));
    CHECK(r.exit_code == 3);
}

TEST_SUITE_END();
