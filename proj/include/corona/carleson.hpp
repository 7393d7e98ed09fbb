#pragma once

#include <utility>
#include <vector>

#include "corona/analytic.hpp"
#include "corona/fields.hpp"
#include "corona/quadrature.hpp"

namespace corona {

/// Co-analytic test vector h(z) = sum_{k>=1} c_k zbar^k with c_k in C^n.
/// The constant term is absent, so h(0) = 0 and h lies in ((H^2)^n)^perp.
class CoanalyticVector {
  public:
    CoanalyticVector(int n, std::vector<Eigen::VectorXcd> conj_coeffs);

    /// h = e_j zbar^k (canonical basis direction j, 0-based).
    static CoanalyticVector basis(int n, int j, int k);
    static CoanalyticVector zero(int n) { return CoanalyticVector(n, {}); }

    int n() const { return n_; }
    int K() const { return static_cast<int>(coeffs_.size()); }
    Eigen::VectorXcd eval(Complex z) const;
    double boundary_norm_sq() const;  // sum_k ||c_k||^2

  private:
    int n_ = 0;
    std::vector<Eigen::VectorXcd> coeffs_;  // coeffs_[k-1] is c_k
};

/// xi(z) = Pi(z) h(z).
Eigen::VectorXcd xi_sample(const PolyRow& F, const CoanalyticVector& h, Complex z,
                           double delta_min = 1e-6);

/// ||xi||_2^2 = boundary quadrature of ||Pi h||^2 over the circle.
double xi_boundary_norm_sq(const PolyRow& F, const CoanalyticVector& h,
                           const BoundaryQuadrature& b, double delta_min = 1e-6);

struct BoundReport {
    double lhs = 0.0;
    double rhs_constant = 0.0;
    double norm_factor = 0.0;
    bool pass = false;
    std::vector<std::pair<double, double>> epsilon_trace;  // (eps, lhs_eps)

    double rhs() const { return rhs_constant * norm_factor; }
};

/// int ||dPi||^2 psi(log ||F||^-2) |g|^2 d mu <= 2e ||g||_2^2.
BoundReport lemma_carleson_bound(const PolyRow& F, const PsiSpec& psi, const AnalyticPoly& g,
                                 const DiscQuadrature& q, const BoundaryQuadrature& b,
                                 double slack = 0.05, double delta_min = 1e-6);

/// First report:  int phi(||F||) ||dPi||^2 ||xi||^2 d mu <= 2e ||xi||_2^2.
/// Second report: int ||dbar[conj(f^1/2) xi]||^2 d mu <= 4e ||xi||_2^2, with the
/// integrand computed branch-free as ||conj(f') xi / 2 + conj(f) dbar(xi)||^2 / |f|,
/// dbar(xi) from numeric_wirtinger, punctured around the zeros of f.
std::pair<BoundReport, BoundReport> lemma_dbar_embedding(
    const PolyRow& F, const AnalyticPoly& f, const PsiSpec& psi, const CoanalyticVector& h,
    const DiscQuadrature& q, const BoundaryQuadrature& b, const std::vector<Complex>& f_zeros,
    const std::vector<double>& epsilons, double fd_step = 1e-4, double slack = 0.05,
    double delta_min = 1e-6);

/// limsup_{eps->0} int_{Omega_eps} e^alpha Delta~alpha |g|^2 d mu <= e ||g||_2^2.
/// Delta~alpha comes from the finite-difference stencil and may be negative
/// pointwise; no absolute value is taken. Throws Errc::alpha_range if alpha
/// leaves [0,1] beyond alpha_tol on the evaluated nodes.
BoundReport uchiyama_bound(const std::function<double(Complex)>& alpha_fn,
                           const std::vector<Complex>& centers, const AnalyticPoly& g,
                           const DiscQuadrature& q, const BoundaryQuadrature& b,
                           const std::vector<double>& epsilons, double fd_step = 1e-4,
                           double slack = 0.05, double alpha_tol = 1e-9);

/// int |f|^2 ||F||^-6 |(F f^-1/2)' F^*|^2 |g|^2 d mu <= (2e^2 + e) ||g||_2^2,
/// with the branch-free integrand |(F'f - F f'/2) F^*|^2 / (|f| ||F||^6) |g|^2,
/// punctured at the zeros of f. Throws Errc::zero_f when f is identically zero.
BoundReport main_carleson_bound(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                                const DiscQuadrature& q, const BoundaryQuadrature& b,
                                const std::vector<Complex>& f_zeros,
                                const std::vector<double>& epsilons, double slack = 0.05,
                                double delta_min = 1e-6);

}  // namespace corona
