#include "corona/hardy.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace corona {

FiniteSectionOp toeplitz_section(const AnalyticPoly& p, int N) {
    if (N < p.degree()) {
        throw Error(Errc::degree_too_small, "toeplitz_section needs N >= deg p");
    }
    FiniteSectionOp op;
    op.input_degree = N;
    op.output_degree = N;
    op.matrix = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= i; ++j) {
            op.matrix(i, j) = p.coeff(i - j);
        }
    }
    return op;
}

FiniteSectionOp row_section(const PolyRow& F, int N) {
    FiniteSectionOp op;
    op.input_degree = N;
    op.output_degree = N;
    op.matrix = Eigen::MatrixXcd::Zero(N + 1, static_cast<Eigen::Index>(F.n()) * (N + 1));
    for (int k = 0; k < F.n(); ++k) {
        op.matrix.block(0, k * (N + 1), N + 1, N + 1) = toeplitz_section(F.entry(k), N).matrix;
    }
    return op;
}

namespace {

Eigen::VectorXcd rhs_vector(const AnalyticPoly& f, const AnalyticPoly& g, int N) {
    const AnalyticPoly fg = compress(multiply(f, g), N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N + 1);
    for (int i = 0; i <= N; ++i) rhs(i) = fg.coeff(i);
    return rhs;
}

// Section of M_f with coefficients beyond N compressed away (P_N M_f P_N).
Eigen::MatrixXcd scalar_section(const AnalyticPoly& f, int N) {
    return toeplitz_section(compress(f, N), N).matrix;
}

}  // namespace

SolveResult minimal_norm_solve(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                               int N) {
    if (N < f.degree() + g.degree()) {
        throw Error(Errc::degree_too_small, "minimal_norm_solve needs N >= deg f + deg g");
    }
    const Eigen::MatrixXcd A = row_section(F, N).matrix;
    const Eigen::VectorXcd rhs = rhs_vector(f, g, N);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXcd y = svd.matrixU().adjoint() * rhs;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        y(i) = sv(i) > cutoff ? y(i) / sv(i) : Complex{0.0, 0.0};
    }
    Eigen::VectorXcd x = svd.matrixV() * y;

    SolveResult out;
    out.residual = (A * x - rhs).norm();
    out.norm = x.norm();
    const double tol_solve = 1e-8 * rhs.norm();
    if (out.residual > std::max(tol_solve, 1e-14)) {
        throw Error(Errc::rank_deficient,
                    "finite-section system inconsistent: N too small or hypothesis violated");
    }
    out.G.reserve(F.n());
    for (int k = 0; k < F.n(); ++k) out.G.push_back(x.segment(k * (N + 1), N + 1));
    return out;
}

PsdCheck leech_psd_check(const PolyRow& F, const AnalyticPoly& f, double C, int N,
                         double psd_tol) {
    if (!(C > 0.0)) throw Error(Errc::domain_error, "leech_psd_check needs C > 0");
    const Eigen::MatrixXcd A = row_section(F, N).matrix;
    const Eigen::MatrixXcd B = scalar_section(f, N);
    const Eigen::MatrixXcd FF = A * A.adjoint();
    const Eigen::MatrixXcd GG = B * B.adjoint();
    const Eigen::MatrixXcd M = C * C * FF - GG;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    PsdCheck out;
    out.min_eigenvalue = es.eigenvalues()(0);
    out.scale = std::max(1.0, std::abs(C * C * FF.trace().real()) + std::abs(GG.trace().real()));
    out.pass = out.min_eigenvalue >= -psd_tol * out.scale;
    return out;
}

PsdCheck pick_matrix_check(const PolyRow& F, const AnalyticPoly& f, double C,
                           const std::vector<Complex>& nodes, double psd_tol) {
    const int m = static_cast<int>(nodes.size());
    for (int i = 0; i < m; ++i) {
        if (std::abs(nodes[i]) >= 1.0) {
            throw Error(Errc::domain_error, "pick nodes must lie inside the open disc");
        }
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(nodes[i] - nodes[j]) < 1e-12) {
                throw Error(Errc::duplicate_nodes, "pick nodes must be distinct");
            }
        }
    }
    std::vector<Eigen::RowVectorXcd> Fv(m);
    std::vector<Complex> fv(m);
    for (int i = 0; i < m; ++i) {
        Fv[i] = eval_row(F, nodes[i]);
        fv[i] = eval(f, nodes[i]);
    }
    Eigen::MatrixXcd K(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Complex FF = (Fv[i] * Fv[j].adjoint())(0, 0);
            K(i, j) = (C * C * FF - fv[i] * std::conj(fv[j])) /
                      (1.0 - nodes[i] * std::conj(nodes[j]));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K, Eigen::EigenvaluesOnly);
    PsdCheck out;
    out.min_eigenvalue = es.eigenvalues()(0);
    out.scale = std::max(1.0, std::abs(K.trace().real()));
    out.pass = out.min_eigenvalue >= -psd_tol * out.scale;
    return out;
}

std::vector<Complex> pick_node_pool() {
    std::vector<Complex> pool;
    pool.reserve(32);
    for (double r : {0.3, 0.6, 0.8, 0.9}) {
        for (int k = 0; k < 8; ++k) pool.push_back(std::polar(r, 2.0 * M_PI * k / 8.0));
    }
    return pool;
}

std::vector<NormBoundRow> norm_bound_experiment(const PolyRow& F, const AnalyticPoly& f,
                                                const AnalyticPoly& g,
                                                const std::vector<int>& Ns) {
    const double gnorm = std::sqrt(coeff_norm_sq(g));
    std::vector<NormBoundRow> rows;
    rows.reserve(Ns.size());
    for (int N : Ns) {
        SolveResult sr = minimal_norm_solve(F, f, g, N);
        NormBoundRow row;
        row.N = N;
        row.residual = sr.residual;
        row.ratio = gnorm > 0.0 ? sr.norm / gnorm : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace corona
