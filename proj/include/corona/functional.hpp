#pragma once

#include <vector>

#include "corona/carleson.hpp"

namespace corona {

/// The three integral pieces of int d[<dbarPhi f g, xi>] d mu for xi = Pi h,
/// together with the boundary-integral oracle int_T <Phi f g, h> dm they must
/// sum to by Green's formula.
struct TermBreakdown {
    Complex term_I;
    Complex term_II;
    Complex term_III;
    double bound_I = 0.0;
    double bound_II = 0.0;
    double bound_III = 0.0;
    double xi_norm = 0.0;
    Complex oracle;
    Complex total;  // term_I + term_II + term_III
    std::vector<std::pair<double, Complex>> trace_I;
    std::vector<std::pair<double, Complex>> trace_II;
};

/// I = int <d[dbarPhi f^1/2], conj(f^1/2) xi> g d mu via the branch-free
/// reduction ||F||^-4 <F^*((F'f - F f'/2) F^*), (dPi) xi> g, punctured at the
/// zeros of f (value at the smallest epsilon, trace attached).
Complex term_I(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
               const CoanalyticVector& h, const DiscQuadrature& q,
               const std::vector<Complex>& f_zeros, const std::vector<double>& epsilons,
               std::vector<std::pair<double, Complex>>* trace = nullptr, double delta_min = 1e-6);

/// II = int <dbarPhi f^1/2, dbar[conj(f^1/2) xi]> g d mu via
/// <dbarPhi, conj(f') xi / 2 + conj(f) dbar(xi)> g with dbar(xi) from
/// numeric_wirtinger, punctured.
Complex term_II(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                const CoanalyticVector& h, const DiscQuadrature& q,
                const std::vector<Complex>& f_zeros, const std::vector<double>& epsilons,
                double fd_step = 1e-4, std::vector<std::pair<double, Complex>>* trace = nullptr,
                double delta_min = 1e-6);

/// III = int <dbarPhi, xi> f g' d mu (smooth integrand, no puncturing).
Complex term_III(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                 const CoanalyticVector& h, const DiscQuadrature& q, double delta_min = 1e-6);

/// Boundary quadrature of <Phi f g, h> over the circle. Green's formula makes
/// this the target of I + II + III (h(0) = 0 kills the centre term).
Complex functional_oracle(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                          const CoanalyticVector& h, const BoundaryQuadrature& b,
                          double delta_min = 1e-6);

/// C0 = e sqrt(4e+2) + 2 sqrt(2) e + sqrt(2e), the sum of the three term
/// constants.
double functional_term_constant();
/// C_total = 1 + C0, the solver norm bound.
double total_bound_constant();

double term_I_constant();    // e sqrt(4e + 2)
double term_II_constant();   // 2 sqrt(2) e
double term_III_constant();  // sqrt(2e)

/// Full evaluation for one test vector h.
TermBreakdown evaluate_terms(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                             const CoanalyticVector& h, const DiscQuadrature& q,
                             const BoundaryQuadrature& b, const std::vector<Complex>& f_zeros,
                             const std::vector<double>& epsilons, double fd_step = 1e-4,
                             double delta_min = 1e-6);

}  // namespace corona
