#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "corona/analytic.hpp"
#include "corona/quadrature.hpp"

namespace corona {

/// Pointwise values of the projection fields at a grid node. Phi is the
/// column ||F||^-2 F^*, Pi the orthogonal projection onto ker F(z), and the
/// derivative fields come from the closed rational formulas:
///   dPi     = -F^* (F F^*)^{-1} F' Pi
///   dbarPhi = ||F||^-2 (F')^* - ||F||^-4 (F (F')^*) F^* = ||F||^-2 Pi (F')^*
struct FieldSample {
    Complex z;
    Eigen::RowVectorXcd F_val;
    Eigen::RowVectorXcd F_deriv;
    Eigen::VectorXcd phi;
    Eigen::MatrixXcd pi;
    Eigen::MatrixXcd d_pi;
    Eigen::VectorXcd dbar_phi;
    double alpha = 0.0;  // |f| / ||F||^2
    double beta = 0.0;   // log(||F||^2)
    double norm_sq = 0.0;
    Complex f_val;
    Complex f_deriv;
};

/// Throws Errc::small_norm when ||F(z)|| < delta_min.
FieldSample sample_fields(const PolyRow& F, const AnalyticPoly& f, Complex z,
                          double delta_min = 1e-6);

/// Operator norm squared of dPi from the closed form
/// (||F||^2 ||F'||^2 - |F' F^*|^2) / ||F||^4 (dPi has rank one, so this equals
/// both the spectral and the Hilbert-Schmidt norm squared).
double d_pi_norm_sq(const Eigen::RowVectorXcd& F_val, const Eigen::RowVectorXcd& F_deriv);

struct IdentityReport {
    // Residuals, pre-scaled by 1/max(1, sup||F'||^2 / delta^2):
    //   0: Pi dbarPhi = dbarPhi
    //   1: dbarPhi = -(dPi)^* Phi
    //   2: d dbarPhi = dPi dbarPhi + (dPi)^* Phi F' Phi   (LHS finite-difference)
    //   3: Pi dPi = 0
    //   4: (dPi)^* Pi = 0
    //   5: ||dPi||^2 = ||F||^2 ||dbarPhi||^2              (operator norm via SVD)
    //   6: ||dPi||^2 = (||F||^2 ||F'||^2 - |F' F^*|^2)/||F||^4
    std::array<double, 7> residuals{};
    std::array<const char*, 7> names{};
    int sample_count = 0;
    std::uint64_t seed = 0;
    double scale = 1.0;
    double fd_step = 0.0;

    double max_residual() const;
};

/// Maximum residual of the Lemma identities over `sample_count` quadrature
/// nodes drawn with the given seed. Cross-checked derivatives come from
/// numeric_wirtinger.
IdentityReport verify_pi_identities(const PolyRow& F, const DiscQuadrature& q, int sample_count,
                                    double fd_step = 1e-4, std::uint64_t seed = 0x5eed5eedULL,
                                    double delta_min = 1e-6);

enum class ScalarKind { reciprocal, log };

/// Max residual of Delta~ h(||G||^2) = h''(||G||^2)|G' G^*|^2 + h'(||G||^2)||G'||^2
/// over sampled nodes, with the left side from the finite-difference stencil.
double verify_laplacian_formula(const PolyRow& G, ScalarKind h_kind, const DiscQuadrature& q,
                                int sample_count, double fd_step = 1e-4,
                                std::uint64_t seed = 0x5eed5eedULL, double delta_min = 1e-6);

/// Max residual of
///   |f|^2 ||F||^-6 |(F f^-1/2)' F^*|^2 = Delta~alpha + (|f|/||F||^2) Delta~beta
/// over sampled nodes excluding 10*fd_step neighbourhoods of the zeros of f.
/// The left side is computed branch-free as |(F'f - F f'/2) F^*|^2 / (|f| ||F||^6).
double verify_measure_laplace(const PolyRow& F, const AnalyticPoly& f, const DiscQuadrature& q,
                              int sample_count, double fd_step = 1e-4,
                              std::uint64_t seed = 0x5eed5eedULL, double delta_min = 1e-6);

}  // namespace corona
