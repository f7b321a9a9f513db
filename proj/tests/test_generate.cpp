#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smx/cg.hpp"
#include "smx/errors.hpp"
#include "smx/generate.hpp"
#include "smx/norms.hpp"
#include "smx/rng.hpp"

using namespace smx;

namespace {

std::vector<index_t> column_counts(const CscMatrix& a) {
    std::vector<index_t> counts(static_cast<std::size_t>(a.n));
    for (index_t j = 0; j < a.n; ++j) counts[static_cast<std::size_t>(j)] = a.col_ptr[j + 1] - a.col_ptr[j];
    return counts;
}

double coefficient_of_variation(const std::vector<index_t>& counts) {
    const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) /
                        static_cast<double>(counts.size());
    double var = 0.0;
    for (index_t c : counts) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    var /= static_cast<double>(counts.size());
    return std::sqrt(var) / mean;
}

/// SPD witness: CG on a random right-hand side must converge.
bool cg_converges(const CscMatrix& a) {
    Rng rng(99);
    std::vector<double> b(static_cast<std::size_t>(a.n));
    for (double& v : b) v = rng.uniform(-1.0, 1.0);
    return cg_solve(a, b, 1e-8).converged;
}

}  // namespace

TEST_SUITE_BEGIN("sparse_core");

TEST_CASE("dense kappa~1 request stays near the identity") {
    GeneratorSpec spec;
    spec.n = 4;
    spec.d = 1.0;
    spec.kappa = 1.0;
    spec.seed = 3;
    const CscMatrix a = generate_sparse_spd(spec);
    CHECK(a.nnz() == 16);
    CHECK(a.symmetric);
    CHECK(estimate_condition(a).kappa <= 2.0);
}

TEST_CASE("balanced generation hits density, spd, kappa and balance targets") {
    GeneratorSpec spec;
    spec.n = 256;
    spec.d = 0.05;
    spec.kappa = 2.0;
    spec.kind = MatrixKind::balanced;
    spec.seed = 41;
    const CscMatrix a = generate_sparse_spd(spec);

    CHECK(a.symmetric);
    CHECK(a.density() == doctest::Approx(0.05).epsilon(0.2));
    CHECK(coefficient_of_variation(column_counts(a)) < 0.2);
    CHECK(cg_converges(a));
    const double kappa = estimate_condition(a).kappa;
    CHECK(kappa > 1.0);
    CHECK(kappa < 4.0);  // within a factor of 2 of the target
}

TEST_CASE("same spec and seed give identical matrices") {
    GeneratorSpec spec;
    spec.n = 128;
    spec.d = 0.08;
    spec.kappa = 3.0;
    spec.seed = 123456;
    const CscMatrix a = generate_sparse_spd(spec);
    const CscMatrix b = generate_sparse_spd(spec);
    CHECK(pattern_equal(a, b));
    CHECK(a.val == b.val);

    spec.seed = 123457;
    const CscMatrix c = generate_sparse_spd(spec);
    CHECK(c.row_ind != a.row_ind);
}

TEST_CASE("unbalanced generation produces clustered column fill") {
    GeneratorSpec spec;
    spec.n = 256;
    spec.d = 0.05;
    spec.kappa = 2.0;
    spec.kind = MatrixKind::unbalanced;
    spec.seed = 17;
    const CscMatrix a = generate_sparse_spd(spec);

    const std::vector<index_t> counts = column_counts(a);
    std::vector<double> quartile_fill(4, 0.0);
    for (index_t j = 0; j < a.n; ++j) {
        quartile_fill[std::min<std::size_t>(3, static_cast<std::size_t>(4 * j / a.n))] +=
            static_cast<double>(counts[static_cast<std::size_t>(j)]);
    }
    const double densest = *std::max_element(quartile_fill.begin(), quartile_fill.end());
    const double sparsest = *std::min_element(quartile_fill.begin(), quartile_fill.end());
    CHECK(densest >= 2.0 * sparsest);
    CHECK(a.density() == doctest::Approx(0.05).epsilon(0.2));
    CHECK(cg_converges(a));
}

TEST_CASE("diagonal-only request realizes kappa exactly") {
    GeneratorSpec spec;
    spec.n = 64;
    spec.d = 1.0 / 64.0;
    spec.kappa = 8.0;
    spec.seed = 5;
    const CscMatrix a = generate_sparse_spd(spec);
    CHECK(a.nnz() == 64);
    // the diagonal values span [1, kappa] exactly; the estimator itself is
    // only asked for percent-level accuracy
    CHECK(estimate_condition(a).kappa == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("infeasible specs are rejected") {
    GeneratorSpec spec;
    spec.n = 100;
    spec.d = 0.001;  // d*n < 1
    spec.kappa = 2.0;
    CHECK_THROWS_AS(generate_sparse_spd(spec), Error);
    spec.d = 0.0;
    CHECK_THROWS_AS(generate_sparse_spd(spec), Error);
    spec.d = 0.5;
    spec.kappa = 0.5;
    CHECK_THROWS_AS(generate_sparse_spd(spec), Error);
    spec.kappa = 2.0;
    spec.n = 0;
    CHECK_THROWS_AS(generate_sparse_spd(spec), Error);
}

TEST_SUITE_END();
