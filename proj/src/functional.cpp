#include "corona/functional.hpp"

#include <cmath>

namespace corona {

namespace {

Eigen::VectorXcd xi_of(const PolyRow& F, const CoanalyticVector& h, Complex z, double delta_min) {
    return xi_sample(F, h, z, delta_min);
}

std::vector<double> center_distances(const DiscQuadrature& q, const std::vector<Complex>& centers) {
    std::vector<double> d(q.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (const auto& c : centers) d[i] = std::min(d[i], std::abs(q.nodes[i] - c));
    }
    return d;
}

Complex punctured_sum(const DiscQuadrature& q, const std::vector<double>& dist,
                      const std::vector<Complex>& integrand, const std::vector<double>& epsilons,
                      std::vector<std::pair<double, Complex>>* trace) {
    Complex last{0.0, 0.0};
    if (trace) trace->clear();
    for (double eps : epsilons) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (dist[i] > eps) acc += q.weights[i] * integrand[i];
        }
        if (trace) trace->emplace_back(eps, acc);
        last = acc;
    }
    return last;
}

}  // namespace

double term_I_constant() { return M_E * std::sqrt(4.0 * M_E + 2.0); }
double term_II_constant() { return 2.0 * std::sqrt(2.0) * M_E; }
double term_III_constant() { return std::sqrt(2.0 * M_E); }
double functional_term_constant() {
    return term_I_constant() + term_II_constant() + term_III_constant();
}
double total_bound_constant() { return 1.0 + functional_term_constant(); }

Complex term_I(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
               const CoanalyticVector& h, const DiscQuadrature& q,
               const std::vector<Complex>& f_zeros, const std::vector<double>& epsilons,
               std::vector<std::pair<double, Complex>>* trace, double delta_min) {
    const AnalyticPoly fp = derivative(f);
    std::vector<Complex> integrand(q.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Complex z = q.nodes[i];
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        Eigen::RowVectorXcd Fpv = eval_row_derivative(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
        Eigen::VectorXcd xi = xi_of(F, h, z, delta_min);
        // (dPi) xi = -F^* (F' xi) / ||F||^2 since Pi xi = xi.
        Eigen::VectorXcd d_pi_xi = -Fv.adjoint() * ((Fpv * xi)(0, 0) / nF2);
        // f^{3/2} (F f^-1/2)' = F' f - F f'/2: the branch cancels entirely.
        const Complex scal =
            ((Fpv * eval(f, z) - 0.5 * Fv * eval(fp, z)) * Fv.adjoint())(0, 0);
        Eigen::VectorXcd lhs_vec = Fv.adjoint() * scal;
        // <a, b> = sum a_i conj(b_i) = b.dot(a) in Eigen's convention.
        integrand[i] = d_pi_xi.dot(lhs_vec) / (nF2 * nF2) * eval(g, z);
    }
    return punctured_sum(q, center_distances(q, f_zeros), integrand, epsilons, trace);
}

Complex term_II(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                const CoanalyticVector& h, const DiscQuadrature& q,
                const std::vector<Complex>& f_zeros, const std::vector<double>& epsilons,
                double fd_step, std::vector<std::pair<double, Complex>>* trace,
                double delta_min) {
    const AnalyticPoly fp = derivative(f);
    const double min_eps = epsilons.empty() ? 0.0 : epsilons.back();
    const std::vector<double> dist = center_distances(q, f_zeros);
    std::vector<Complex> integrand(q.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (dist[i] <= min_eps) continue;
        const Complex z = q.nodes[i];
        FieldSample s = sample_fields(F, f, z, delta_min);
        Eigen::VectorXcd xi = xi_of(F, h, z, delta_min);
        const double hh = fd_stride(z, fd_step);
        const Complex dx{hh, 0.0}, dy{0.0, hh};
        Eigen::VectorXcd fx =
            (xi_of(F, h, z + dx, delta_min) - xi_of(F, h, z - dx, delta_min)) / (2.0 * hh);
        Eigen::VectorXcd fy =
            (xi_of(F, h, z + dy, delta_min) - xi_of(F, h, z - dy, delta_min)) / (2.0 * hh);
        Eigen::VectorXcd dbar_xi = 0.5 * (fx + Complex{0.0, 1.0} * fy);
        Eigen::VectorXcd rhs_vec = 0.5 * std::conj(s.f_deriv) * xi + std::conj(s.f_val) * dbar_xi;
        integrand[i] = rhs_vec.dot(s.dbar_phi) * eval(g, z);
    }
    return punctured_sum(q, dist, integrand, epsilons, trace);
}

Complex term_III(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                 const CoanalyticVector& h, const DiscQuadrature& q, double delta_min) {
    const AnalyticPoly gp = derivative(g);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Complex z = q.nodes[i];
        FieldSample s = sample_fields(F, f, z, delta_min);
        Eigen::VectorXcd xi = xi_of(F, h, z, delta_min);
        acc += q.weights[i] * xi.dot(s.dbar_phi) * s.f_val * eval(gp, z);
    }
    return acc;
}

Complex functional_oracle(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                          const CoanalyticVector& h, const BoundaryQuadrature& b,
                          double delta_min) {
    Complex acc{0.0, 0.0};
    for (const auto& z : b.nodes) {
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
        Eigen::VectorXcd G0 = Fv.adjoint() * (eval(f, z) * eval(g, z) / nF2);
        acc += h.eval(z).dot(G0);
    }
    return b.weight * acc;
}

TermBreakdown evaluate_terms(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                             const CoanalyticVector& h, const DiscQuadrature& q,
                             const BoundaryQuadrature& b, const std::vector<Complex>& f_zeros,
                             const std::vector<double>& epsilons, double fd_step,
                             double delta_min) {
    TermBreakdown tb;
    tb.xi_norm = std::sqrt(xi_boundary_norm_sq(F, h, b, delta_min));
    tb.term_I = term_I(F, f, g, h, q, f_zeros, epsilons, &tb.trace_I, delta_min);
    tb.term_II = term_II(F, f, g, h, q, f_zeros, epsilons, fd_step, &tb.trace_II, delta_min);
    tb.term_III = term_III(F, f, g, h, q, delta_min);
    tb.bound_I = term_I_constant() * tb.xi_norm;
    tb.bound_II = term_II_constant() * tb.xi_norm;
    tb.bound_III = term_III_constant() * tb.xi_norm;
    tb.oracle = functional_oracle(F, f, g, h, b, delta_min);
    tb.total = tb.term_I + tb.term_II + tb.term_III;
    return tb;
}

}  // namespace corona
