#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "corona/error.hpp"

namespace corona {

using Complex = std::complex<double>;

/// Gauss-Legendre nodes and weights for the integral over [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product quadrature on the open disc for d mu = (2/pi) log(1/|z|) dA.
/// Radial rule: Gauss-Legendre in t on (0,1) mapped through r = t^2 (the map
/// flattens the log endpoint singularity; the full factor
/// (2/pi) log(1/r) r dr/dt is folded into the weights, nodes never at r = 0).
/// Angular rule: equispaced trapezoid, exact for trigonometric polynomials.
struct DiscQuadrature {
    std::vector<Complex> nodes;    // radial-major: node[i*angular + j]
    std::vector<double> weights;
    int radial_count = 0;
    int angular_count = 0;

    std::size_t size() const { return nodes.size(); }
};

/// Throws Errc::bad_resolution below radial 16 / angular 32.
DiscQuadrature build_disc_quadrature(int radial_count, int angular_count);

/// M equispaced points on the unit circle with uniform weight 1/M.
struct BoundaryQuadrature {
    std::vector<Complex> nodes;
    double weight = 0.0;   // uniform

    std::size_t size() const { return nodes.size(); }
};

BoundaryQuadrature build_boundary_quadrature(int M);

/// Disc grid with all nodes inside any closed eps-disc about a centre removed.
struct PuncturedDomain {
    std::vector<Complex> nodes;
    std::vector<double> weights;
    std::vector<Complex> centers;
    double epsilon = 0.0;
    double removed_weight = 0.0;

    std::size_t size() const { return nodes.size(); }
};

PuncturedDomain puncture(const DiscQuadrature& q, const std::vector<Complex>& centers,
                         double epsilon);

/// sum weights[i] * samples[i]; throws Errc::length_mismatch.
Complex integrate_mu(const DiscQuadrature& q, const std::vector<Complex>& samples);
Complex integrate_mu(const PuncturedDomain& q, const std::vector<Complex>& samples);
Complex integrate_boundary(const BoundaryQuadrature& q, const std::vector<Complex>& samples);

struct WirtingerDerivatives {
    Eigen::MatrixXcd d;     // 1/2 (d/dx - i d/dy)
    Eigen::MatrixXcd dbar;  // 1/2 (d/dx + i d/dy)
};

/// Central-difference Wirtinger derivatives with stride `step` in each real
/// direction. The caller owns the step choice.
WirtingerDerivatives numeric_wirtinger(const std::function<Eigen::MatrixXcd(Complex)>& eval_fn,
                                       Complex z, double step);

/// Scalar convenience overload.
struct WirtingerScalar {
    Complex d, dbar;
};
WirtingerScalar numeric_wirtinger(const std::function<Complex(Complex)>& eval_fn, Complex z,
                                  double step);

/// Five-point stencil approximation of Delta~ u = (1/4) Laplacian u for a real
/// field u.
double numeric_laplacian(const std::function<double(Complex)>& u_fn, Complex z, double step);

/// Magnitude-adaptive finite-difference stride: step * max(1, |z|).
inline double fd_stride(Complex z, double step) {
    return step * std::max(1.0, std::abs(z));
}

/// | integral of Delta~u d mu - (boundary mean of u - u(0)) |.
double green_residual(const std::function<double(Complex)>& u_fn,
                      const std::function<double(Complex)>& u_laplacian_fn,
                      const DiscQuadrature& q, const BoundaryQuadrature& b);

/// Residuals of Green's formula on the punctured domains Omega_eps, one per
/// epsilon. Epsilons must be given in decreasing order.
std::vector<double> punctured_green_residual(const std::function<double(Complex)>& u_fn,
                                             const std::function<double(Complex)>& u_laplacian_fn,
                                             const std::vector<Complex>& centers,
                                             const std::vector<double>& epsilons,
                                             const DiscQuadrature& q, const BoundaryQuadrature& b);

}  // namespace corona
