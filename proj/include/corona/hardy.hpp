#pragma once

#include <vector>

#include <Eigen/Dense>

#include "corona/analytic.hpp"

namespace corona {

/// Finite section of a multiplication operator in the monomial basis.
/// For a scalar symbol this is lower-triangular Toeplitz; for a row symbol it
/// is the horizontal concatenation of the per-entry sections. The section of
/// degree N embeds in the section of degree N+1 as the leading block.
struct FiniteSectionOp {
    Eigen::MatrixXcd matrix;
    int input_degree = 0;
    int output_degree = 0;
};

/// (N+1)x(N+1) section of M_p; entry (i,j) = coeff_{i-j}(p).
/// Throws Errc::degree_too_small when N < deg p.
FiniteSectionOp toeplitz_section(const AnalyticPoly& p, int N);

/// (N+1) x n(N+1) section [T_{f_1} | ... | T_{f_n}] of M_F.
FiniteSectionOp row_section(const PolyRow& F, int N);

struct SolveResult {
    std::vector<Eigen::VectorXcd> G;  // n coefficient vectors of length N+1
    double residual = 0.0;            // ||M_F G - compress_N(f g)||_2
    double norm = 0.0;                // ||G||_2
};

/// Least-squares minimal-norm solution of M_F^(N) G = compress_N(f g) via the
/// SVD pseudoinverse (singular values below 1e-12 sigma_max treated as zero).
/// Throws Errc::degree_too_small when N < deg f + deg g and Errc::rank_deficient
/// when the residual exceeds 1e-8 ||f g||_2.
SolveResult minimal_norm_solve(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                               int N);

struct PsdCheck {
    double min_eigenvalue = 0.0;
    bool pass = false;
    double scale = 1.0;  // trace scale used for the tolerance
};

/// Smallest eigenvalue of C^2 M_F M_F^* - M_f M_f^* at degree N;
/// pass iff min eigenvalue >= -psd_tol * scale. Requires C > 0.
PsdCheck leech_psd_check(const PolyRow& F, const AnalyticPoly& f, double C, int N,
                         double psd_tol = 1e-10);

/// Smallest eigenvalue of the Pick matrix
///   [(C^2 F(z_i) F(z_j)^* - f(z_i) conj(f(z_j))) / (1 - z_i conj(z_j))]
/// over the given nodes. Throws Errc::duplicate_nodes for coincident nodes and
/// Errc::domain_error for nodes outside the open disc.
PsdCheck pick_matrix_check(const PolyRow& F, const AnalyticPoly& f, double C,
                           const std::vector<Complex>& nodes, double psd_tol = 1e-10);

/// The fixed 32-node pool: radii {0.3, 0.6, 0.8, 0.9} x 8 equispaced angles.
std::vector<Complex> pick_node_pool();

struct NormBoundRow {
    int N = 0;
    double residual = 0.0;
    double ratio = 0.0;  // ||G||_2 / ||g||_2
};

/// Minimal-norm ratios per truncation degree. The ratio sequence is
/// non-decreasing in N (larger sections constrain more).
std::vector<NormBoundRow> norm_bound_experiment(const PolyRow& F, const AnalyticPoly& f,
                                                const AnalyticPoly& g, const std::vector<int>& Ns);

}  // namespace corona
