#include <doctest.h>

#include <cmath>

#include "smx/cg.hpp"
#include "smx/energy.hpp"
#include "smx/errors.hpp"
#include "smx/generate.hpp"
#include "smx/ilu0.hpp"
#include "test_support.hpp"

using namespace smx;

namespace {

SchedulerConfig serial() {
    SchedulerConfig s;
    s.workers = 1;
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("apps");

TEST_CASE("cg on the identity converges in one iteration") {
    const CgReport r = cg_solve(CscMatrix::identity(5), {1, -2, 3, 0.5, 4});
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.x[2] == doctest::Approx(3.0));
}

TEST_CASE("cg on diag(1,2,3) solves exactly within 3 iterations") {
    const CscMatrix a = test::csc_from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    const CgReport r = cg_solve(a, {1, 1, 1}, 1e-12);
    CHECK(r.converged);
    CHECK(r.iterations <= 3);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(0.5));
    CHECK(r.x[2] == doctest::Approx(1.0 / 3));
}

TEST_CASE("cg reports Breakdown on indefinite systems") {
    const CscMatrix a = test::csc_from_rows({{1, 0}, {0, -1}});
    try {
        cg_solve(a, {1, 1});
        FAIL("expected Breakdown");
    } catch (const Error& e) {
        CHECK(e.code == Errc::breakdown);
    }
}

TEST_CASE("cg converges within n + 5 iterations on well-conditioned SPD") {
    Rng rng(8);
    for (index_t n : {32, 64, 128}) {
        GeneratorSpec spec;
        spec.n = n;
        spec.d = 0.2;
        spec.kappa = 4.0;
        spec.seed = rng.next_u64();
        const CscMatrix a = generate_sparse_spd(spec);
        std::vector<double> b(static_cast<std::size_t>(n));
        for (double& v : b) v = rng.uniform(-1.0, 1.0);
        const CgReport r = cg_solve(a, b, 1e-8);
        CHECK(r.converged);
        CHECK(r.iterations <= static_cast<int>(n) + 5);
    }
}

TEST_CASE("non-convergence is a report, not an error") {
    GeneratorSpec spec;
    spec.n = 64;
    spec.d = 0.2;
    spec.kappa = 1e4;
    spec.seed = 4;
    const CscMatrix a = generate_sparse_spd(spec);
    std::vector<double> b(64, 1.0);
    const CgReport r = cg_solve(a, b, 1e-14, 3);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
}

TEST_CASE("sm preconditioner of a diagonal matrix is the exact inverse root") {
    const CscMatrix a = test::csc_from_rows({{4, 0, 0}, {0, 9, 0}, {0, 0, 16}});
    const CscMatrix k = make_sm_preconditioner(a, serial());
    CHECK(k.at(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(k.at(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(k.at(2, 2) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pattern_equal(k, a));
}

TEST_CASE("split-preconditioned cg with an exact diagonal K finishes in one iteration") {
    const CscMatrix a = test::csc_from_rows({{4, 0, 0}, {0, 9, 0}, {0, 0, 16}});
    const CscMatrix k = make_sm_preconditioner(a, serial());
    const CgReport r = cg_solve_split_preconditioned(a, {1, 2, 3}, k);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.x[0] == doctest::Approx(0.25));
    CHECK(r.x[1] == doctest::Approx(2.0 / 9));
    CHECK(r.x[2] == doctest::Approx(3.0 / 16));
}

TEST_CASE("split preconditioning with an exact dense K converges in O(1) iterations") {
    Rng rng(14);
    for (index_t n : {24, 48, 96}) {
        const DenseMatrix ad = test::random_dense_spd(n, 50.0, rng);
        const CscMatrix a = sparsify(ad);
        const CscMatrix k = sparsify(inverse_proot_dense(ad, 2));
        std::vector<double> b(static_cast<std::size_t>(n), 1.0);
        const CgReport r = cg_solve_split_preconditioned(a, b, k, 1e-10);
        CHECK(r.converged);
        CHECK(r.iterations <= 3);

        // x solves the original system
        std::vector<double> ax(static_cast<std::size_t>(n));
        matvec(a, r.x.data(), ax.data());
        for (double& v : ax) v -= 1.0;
        double err = 0.0;
        for (double v : ax) err = std::max(err, std::fabs(v));
        CHECK(err < 1e-8);
    }
}

TEST_CASE("block-diagonal SPD: sm preconditioner is exact, one-iteration solve") {
    // two dense 2x2 blocks
    const CscMatrix a = test::csc_from_rows(
        {{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 5, 2}, {0, 0, 2, 5}});
    const CscMatrix k = make_sm_preconditioner(a, serial());
    const CgReport r = cg_solve_split_preconditioned(a, {1, 1, 1, 1}, k, 1e-10);
    CHECK(r.converged);
    CHECK(r.iterations <= 2);
}

TEST_CASE("ilu0 of a diagonal matrix is L = I, U = A") {
    const CscMatrix a = test::csc_from_rows({{2, 0}, {0, 5}});
    const Ilu0Factors f = ilu0(a);
    CHECK(test::max_entry_diff(densify(f.l), DenseMatrix::identity(2)) == 0.0);
    CHECK(test::max_entry_diff(densify(f.u), densify(a)) == 0.0);
}

TEST_CASE("ilu0 on a tridiagonal pattern is the exact LU") {
    const CscMatrix a = test::csc_from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
    const Ilu0Factors f = ilu0(a);
    const DenseMatrix product = multiply(densify(f.l), densify(f.u));
    CHECK(test::max_entry_diff(product, densify(a)) < 1e-12);
}

TEST_CASE("ilu0 signals ZeroPivot with the column index") {
    const CscMatrix a = test::csc_from_rows({{0, 1}, {1, 1}});
    try {
        ilu0(a);
        FAIL("expected ZeroPivot");
    } catch (const Error& e) {
        CHECK(e.code == Errc::zero_pivot);
        CHECK(e.index == 0);
    }
}

TEST_CASE("ilu0 product matches A on the pattern (zero fill-in property)") {
    GeneratorSpec spec;
    spec.n = 96;
    spec.d = 0.08;
    spec.kappa = 10.0;
    spec.seed = 77;
    const CscMatrix a = generate_sparse_spd(spec);
    const Ilu0Factors f = ilu0(a);
    CHECK(is_symmetric(a));

    const CscMatrix lu = multiply(f.l, f.u);
    for (index_t j = 0; j < a.n; ++j) {
        for (index_t k = a.col_ptr[j]; k < a.col_ptr[j + 1]; ++k) {
            const index_t i = a.row_ind[static_cast<std::size_t>(k)];
            CHECK(lu.at(i, j) ==
                  doctest::Approx(a.val[static_cast<std::size_t>(k)]).epsilon(1e-10));
        }
    }

    // factors never leave A's pattern
    for (index_t j = 0; j < f.l.n; ++j) {
        for (index_t k = f.l.col_ptr[j]; k < f.l.col_ptr[j + 1]; ++k) {
            CHECK(a.at(f.l.row_ind[static_cast<std::size_t>(k)], j) != 0.0);
        }
        for (index_t k = f.u.col_ptr[j]; k < f.u.col_ptr[j + 1]; ++k) {
            CHECK(a.at(f.u.row_ind[static_cast<std::size_t>(k)], j) != 0.0);
        }
    }
}

TEST_CASE("ilu0-preconditioned cg solves and speeds up an SPD system") {
    GeneratorSpec spec;
    spec.n = 256;
    spec.d = 0.05;
    spec.kappa = 1e3;
    spec.seed = 6;
    const CscMatrix a = generate_sparse_spd(spec);
    std::vector<double> b(256, 1.0);
    const CgReport plain = cg_solve(a, b, 1e-6);
    const CgReport pre = cg_solve_ilu0_preconditioned(a, b, ilu0(a), 1e-6);
    CHECK(pre.converged);
    CHECK(pre.iterations <= plain.iterations);
}

TEST_CASE("band energy of P = I is the trace") {
    const CscMatrix h = test::csc_from_rows({{3, 1}, {1, -2}});
    CHECK(band_energy(CscMatrix::identity(2), h) == doctest::Approx(1.0));
}

TEST_CASE("band energy hand example") {
    const CscMatrix p = test::csc_from_rows({{1, 2}, {2, 1}});
    const CscMatrix h = test::csc_from_rows({{0, 1}, {1, 0}});
    CHECK(band_energy(p, h) == doctest::Approx(4.0));
}

TEST_CASE("band energy of the zero matrix vanishes") {
    const CscMatrix z = csc_from_triplets({}, 3);
    const CscMatrix h = test::csc_from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    CHECK(band_energy(z, h) == 0.0);
}

TEST_CASE("identity overlap gives e_bs_sm = e_bs exactly") {
    Rng rng(19);
    const CscMatrix p = sparsify(test::random_dense_spd(8, 3.0, rng));
    const CscMatrix h = sparsify(test::random_dense_spd(8, 5.0, rng));
    const EnergyReport r = band_energy_sm(CscMatrix::identity(8), p, h, serial());
    CHECK(r.delta_rel < 1e-13);
    CHECK(r.e_bs == doctest::Approx(r.e_bs_sm));
}

TEST_CASE("block-diagonal overlap: exact inverse, vanishing relative error") {
    const CscMatrix s = test::csc_from_rows(
        {{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 3, 1}, {0, 0, 1, 3}});
    Rng rng(23);
    const CscMatrix p = sparsify(test::random_dense_spd(4, 2.0, rng));
    const CscMatrix h = sparsify(test::random_dense_spd(4, 2.0, rng));
    const EnergyReport r = band_energy_sm(s, p, h, serial());
    CHECK(r.delta_rel < 1e-12);
}

TEST_SUITE_END();
