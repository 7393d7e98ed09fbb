#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "corona/functional.hpp"
#include "corona/hardy.hpp"

using namespace corona;

namespace {
AnalyticPoly P(std::vector<Complex> c) { return AnalyticPoly(std::move(c)); }
}  // namespace

TEST_CASE("toeplitz_section: identity, shift, banded") {
    FiniteSectionOp id = toeplitz_section(P({1.0}), 3);
    CHECK(id.matrix.isApprox(Eigen::MatrixXcd::Identity(4, 4)));

    FiniteSectionOp sh = toeplitz_section(P({0.0, 1.0}), 2);
    CHECK(std::abs(sh.matrix(1, 0) - 1.0) == 0.0);
    CHECK(std::abs(sh.matrix(2, 1) - 1.0) == 0.0);
    CHECK(sh.matrix.cwiseAbs().sum() == doctest::Approx(2.0));

    FiniteSectionOp bd = toeplitz_section(P({2.0, 0.0, 1.0}), 3);
    for (int i = 0; i <= 3; ++i) CHECK(std::abs(bd.matrix(i, i) - 2.0) == 0.0);
    for (int i = 2; i <= 3; ++i) CHECK(std::abs(bd.matrix(i, i - 2) - 1.0) == 0.0);

    CHECK_THROWS_AS(toeplitz_section(P({2.0, 0.0, 1.0}), 1), Error);
}

TEST_CASE("row_section: block assembly and compression consistency") {
    PolyRow F10({P({1.0}), AnalyticPoly::zero()});
    FiniteSectionOp op = row_section(F10, 2);
    CHECK(op.matrix.leftCols(3).isApprox(Eigen::MatrixXcd::Identity(3, 3)));
    CHECK(op.matrix.rightCols(3).cwiseAbs().sum() == 0.0);

    PolyRow F({P({0.0, 1.0}), P({1.0})});
    FiniteSectionOp op1 = row_section(F, 1);
    Eigen::MatrixXcd expect(2, 4);
    expect << 0, 0, 1, 0, 1, 0, 0, 1;
    CHECK(op1.matrix.isApprox(expect));

    // sections embed as leading blocks
    FiniteSectionOp a = row_section(F, 2);
    FiniteSectionOp b = row_section(F, 3);
    for (int k = 0; k < 2; ++k) {
        CHECK(b.matrix.block(0, k * 4, 3, 3).isApprox(a.matrix.block(0, k * 3, 3, 3)));
    }
}

TEST_CASE("minimal_norm_solve: corona-style data") {
    PolyRow F({P({0.0, 1.0}), P({1.0, -1.0})});  // [z, 1-z]
    SolveResult r = minimal_norm_solve(F, P({1.0}), P({1.0}), 8);
    CHECK(r.residual <= 1e-10);
    CHECK(r.norm <= std::sqrt(2.0));  // (1,1) is feasible at norm sqrt(2)
    CHECK(r.norm == doctest::Approx(1.2720195).epsilon(1e-6));

    PolyRow F2({P({1.0}), AnalyticPoly::zero()});
    SolveResult r2 = minimal_norm_solve(F2, P({1.0}), P({1.0}), 4);
    CHECK(r2.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r2.G[0](0) - 1.0) <= 1e-12);
    CHECK(r2.G[1].norm() <= 1e-12);

    SolveResult r3 = minimal_norm_solve(F, AnalyticPoly::zero(), P({1.0}), 4);
    CHECK(r3.norm == 0.0);

    CHECK_THROWS_AS(minimal_norm_solve(F, P({0.0, 0.0, 1.0}), P({0.0, 1.0}), 2), Error);
}

TEST_CASE("parseval: coefficient norm equals boundary quadrature") {
    AnalyticPoly g = P({1.0, 0.5, Complex{0.0, 0.25}});
    BoundaryQuadrature b = build_boundary_quadrature(512);
    double acc = 0.0;
    for (const auto& z : b.nodes) acc += std::norm(eval(g, z));
    CHECK(acc * b.weight == doctest::Approx(coeff_norm_sq(g)).epsilon(1e-10));
}

TEST_CASE("leech_psd_check: corona datum thresholds") {
    PolyRow F({P({0.0, 1.0}), P({1.0, -1.0})});
    AnalyticPoly f = P({1.0});

    PsdCheck pass2 = leech_psd_check(F, f, 2.0, 16);
    CHECK(pass2.pass);
    CHECK(pass2.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-9));

    PsdCheck fail01 = leech_psd_check(F, f, 0.1, 16);
    CHECK_FALSE(fail01.pass);
    CHECK(fail01.min_eigenvalue == doctest::Approx(-0.995).epsilon(1e-9));

    // f = 0: C^2 M_F M_F^* alone is positive semidefinite
    PsdCheck zf = leech_psd_check(F, AnalyticPoly::zero(), 1.0, 8);
    CHECK(zf.pass);
    CHECK(zf.min_eigenvalue >= -1e-12);

    // F = [1], f = 1, C = 1: the matrix vanishes
    PsdCheck triv = leech_psd_check(PolyRow({P({1.0})}), P({1.0}), 1.0, 8);
    CHECK(triv.pass);
    CHECK(std::abs(triv.min_eigenvalue) <= 1e-14);

    CHECK_THROWS_AS(leech_psd_check(F, f, 0.0, 8), Error);
}

TEST_CASE("leech_psd_check: section min-eigenvalue is non-increasing in N") {
    PolyRow F({P({0.0, 1.0}), P({1.0, -1.0})});
    AnalyticPoly f = P({1.0});
    double prev = std::numeric_limits<double>::infinity();
    for (int N : {4, 8, 16, 32}) {
        PsdCheck c = leech_psd_check(F, f, 1.5, N);
        CHECK(c.min_eigenvalue <= prev + 1e-12);
        prev = c.min_eigenvalue;
    }
}

TEST_CASE("leech_psd_check is sharp at the max-over-g ratio") {
    // The section inequality at C holds exactly when C dominates the largest
    // minimal-norm ratio over all right-hand sides of degree <= N, which is
    // the operator norm of pinv(M_F) M_f.
    PolyRow F({P({0.5, 0.25}), P({0.25})});
    AnalyticPoly f = pow(entry_square_sum(F), 2);
    const int N = 24;
    Eigen::MatrixXcd A = row_section(F, N).matrix;
    Eigen::MatrixXcd B = toeplitz_section(compress(f, N), N).matrix;
    Eigen::BDCSVD<Eigen::MatrixXcd> svdA(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::MatrixXcd K = svdA.solve(B);  // least-squares => pinv(A) B columnwise
    Eigen::BDCSVD<Eigen::MatrixXcd> svdK(K);
    const double opnorm = svdK.singularValues()(0);

    CHECK(leech_psd_check(F, f, opnorm * 1.000001, N).pass);
    CHECK_FALSE(leech_psd_check(F, f, opnorm * 0.995, N).pass);

    // a single right-hand side can sit strictly below that threshold
    SolveResult sr = minimal_norm_solve(F, f, P({1.0}), N);
    CHECK(sr.norm < opnorm);
}

TEST_CASE("pick_matrix_check: single node criterion and guards") {
    PolyRow F({P({0.0, 1.0}), P({1.0, -1.0})});
    AnalyticPoly f = P({1.0});
    Complex z0{0.5, 0.1};
    const double crit = std::abs(eval(f, z0)) / row_norm(F, z0);
    CHECK(pick_matrix_check(F, f, crit * 1.001, {z0}).pass);
    CHECK_FALSE(pick_matrix_check(F, f, crit * 0.999, {z0}).pass);

    // f = 0 leaves the Szego-weighted Gram matrix, which is PSD
    PsdCheck g = pick_matrix_check(F, AnalyticPoly::zero(), 1.0, pick_node_pool());
    CHECK(g.pass);

    CHECK(pick_matrix_check(F, f, 2.0, pick_node_pool()).pass);

    CHECK_THROWS_AS(pick_matrix_check(F, f, 1.0, {z0, z0}), Error);
    CHECK_THROWS_AS(pick_matrix_check(F, f, 1.0, {Complex{1.0, 0.0}}), Error);
}

TEST_CASE("pick/leech coherence: operator failure surfaces in the pool") {
    PolyRow F({P({0.0, 1.0}), P({1.0, -1.0})});
    AnalyticPoly f = P({1.0});
    const double C = 0.5;
    CHECK_FALSE(leech_psd_check(F, f, C, 16).pass);

    // search the fixed pool: some node set must fail Pick at C * 1.1
    const auto pool = pick_node_pool();
    bool found = !pick_matrix_check(F, f, C * 1.1, pool).pass;
    for (const auto& node : pool) {
        if (found) break;
        found = !pick_matrix_check(F, f, C * 1.1, {node}).pass;
    }
    CHECK(found);
}

TEST_CASE("norm_bound_experiment: ratios are monotone and bounded") {
    PolyRow F({P({0.5, 0.25}), P({0.25})});
    AnalyticPoly f = pow(entry_square_sum(F), 2);
    auto rows = norm_bound_experiment(F, f, P({1.0, 0.5}), {8, 16, 32, 64});
    REQUIRE(rows.size() == 4);
    double prev = -1.0;
    for (const auto& r : rows) {
        CHECK(r.residual <= 1e-10);
        CHECK(r.ratio >= prev - 1e-12);
        CHECK(r.ratio <= total_bound_constant());
        prev = r.ratio;
    }

    auto zero_rows = norm_bound_experiment(F, AnalyticPoly::zero(), P({1.0}), {4, 8});
    for (const auto& r : zero_rows) CHECK(r.ratio == 0.0);

    auto unit = norm_bound_experiment(PolyRow({P({1.0})}), P({1.0}), P({1.0}), {2, 4, 8});
    for (const auto& r : unit) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
}
