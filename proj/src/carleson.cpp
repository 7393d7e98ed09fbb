#include "corona/carleson.hpp"

#include <cmath>

namespace corona {

namespace {

// xi = Pi h evaluated without forming Pi: xi = h - F^* (F h) / ||F||^2.
Eigen::VectorXcd xi_at(const PolyRow& F, const CoanalyticVector& h, Complex z, double delta_min) {
    Eigen::RowVectorXcd Fv = eval_row(F, z);
    const double nF2 = Fv.squaredNorm();
    if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
    Eigen::VectorXcd hv = h.eval(z);
    const Complex Fh = (Fv * hv)(0, 0);
    return hv - Fv.adjoint() * (Fh / nF2);
}

Eigen::VectorXcd dbar_xi_numeric(const PolyRow& F, const CoanalyticVector& h, Complex z,
                                 double step, double delta_min) {
    const double hh = fd_stride(z, step);
    const Complex dx = Complex{hh, 0.0}, dy = Complex{0.0, hh};
    Eigen::VectorXcd fx = (xi_at(F, h, z + dx, delta_min) - xi_at(F, h, z - dx, delta_min)) / (2.0 * hh);
    Eigen::VectorXcd fy = (xi_at(F, h, z + dy, delta_min) - xi_at(F, h, z - dy, delta_min)) / (2.0 * hh);
    return 0.5 * (fx + Complex{0.0, 1.0} * fy);
}

// Distance of every node to the nearest centre; empty centres -> +inf.
std::vector<double> center_distances(const DiscQuadrature& q, const std::vector<Complex>& centers) {
    std::vector<double> d(q.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (const auto& c : centers) d[i] = std::min(d[i], std::abs(q.nodes[i] - c));
    }
    return d;
}

// Sums of a pointwise integrand over the punctured grids, one per epsilon
// (epsilons decreasing, so the node sets grow).
std::vector<std::pair<double, double>> epsilon_sums(const DiscQuadrature& q,
                                                    const std::vector<double>& dist,
                                                    const std::vector<double>& integrand,
                                                    const std::vector<double>& epsilons) {
    std::vector<std::pair<double, double>> trace;
    trace.reserve(epsilons.size());
    for (double eps : epsilons) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (dist[i] > eps) acc += q.weights[i] * integrand[i];
        }
        trace.emplace_back(eps, acc);
    }
    return trace;
}

bool bound_pass(double lhs, double rhs, double slack) {
    return lhs <= rhs * (1.0 + slack) + 1e-14;
}

double boundary_norm_sq_of(const AnalyticPoly& g, const BoundaryQuadrature& b) {
    double acc = 0.0;
    for (const auto& z : b.nodes) acc += std::norm(eval(g, z));
    return acc * b.weight;
}

}  // namespace

CoanalyticVector::CoanalyticVector(int n, std::vector<Eigen::VectorXcd> conj_coeffs)
    : n_(n), coeffs_(std::move(conj_coeffs)) {
    for (const auto& c : coeffs_) {
        if (c.size() != n_) throw Error(Errc::length_mismatch, "coanalytic coefficient size != n");
    }
}

CoanalyticVector CoanalyticVector::basis(int n, int j, int k) {
    if (j < 0 || j >= n || k < 1) throw Error(Errc::domain_error, "basis needs 0 <= j < n, k >= 1");
    std::vector<Eigen::VectorXcd> cs(k, Eigen::VectorXcd::Zero(n));
    cs[k - 1](j) = 1.0;
    return CoanalyticVector(n, std::move(cs));
}

Eigen::VectorXcd CoanalyticVector::eval(Complex z) const {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n_);
    const Complex zb = std::conj(z);
    Complex p = zb;  // zbar^k, k starting at 1: h(0) = 0 by construction
    for (const auto& c : coeffs_) {
        acc += c * p;
        p *= zb;
    }
    return acc;
}

double CoanalyticVector::boundary_norm_sq() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += c.squaredNorm();
    return s;
}

Eigen::VectorXcd xi_sample(const PolyRow& F, const CoanalyticVector& h, Complex z,
                           double delta_min) {
    return xi_at(F, h, z, delta_min);
}

double xi_boundary_norm_sq(const PolyRow& F, const CoanalyticVector& h,
                           const BoundaryQuadrature& b, double delta_min) {
    double acc = 0.0;
    for (const auto& z : b.nodes) acc += xi_at(F, h, z, delta_min).squaredNorm();
    return acc * b.weight;
}

BoundReport lemma_carleson_bound(const PolyRow& F, const PsiSpec& psi, const AnalyticPoly& g,
                                 const DiscQuadrature& q, const BoundaryQuadrature& b,
                                 double slack, double delta_min) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Complex z = q.nodes[i];
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
        // log ||F||^-2 >= 0 whenever ||F|| <= 1; clamp guards rounding at the sup.
        const double arg = std::max(std::log(1.0 / nF2), 0.0);
        lhs += q.weights[i] * d_pi_norm_sq(Fv, eval_row_derivative(F, z)) * psi_eval(psi, arg) *
               std::norm(eval(g, z));
    }
    BoundReport rep;
    rep.lhs = lhs;
    rep.rhs_constant = 2.0 * M_E;
    rep.norm_factor = boundary_norm_sq_of(g, b);
    rep.pass = bound_pass(rep.lhs, rep.rhs(), slack);
    return rep;
}

std::pair<BoundReport, BoundReport> lemma_dbar_embedding(
    const PolyRow& F, const AnalyticPoly& f, const PsiSpec& psi, const CoanalyticVector& h,
    const DiscQuadrature& q, const BoundaryQuadrature& b, const std::vector<Complex>& f_zeros,
    const std::vector<double>& epsilons, double fd_step, double slack, double delta_min) {
    const double xi2 = xi_boundary_norm_sq(F, h, b, delta_min);
    const AnalyticPoly fp = derivative(f);
    const bool f_is_zero = f.is_zero();
    const double min_eps = epsilons.empty() ? 0.0 : epsilons.back();
    const std::vector<double> dist = center_distances(q, f_zeros);

    double lhs_a = 0.0;
    std::vector<double> integrand_b(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Complex z = q.nodes[i];
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
        Eigen::VectorXcd xi = xi_at(F, h, z, delta_min);
        lhs_a += q.weights[i] * phi_eval(psi, std::sqrt(std::min(nF2, 1.0))) *
                 d_pi_norm_sq(Fv, eval_row_derivative(F, z)) * xi.squaredNorm();
        if (!f_is_zero && dist[i] > min_eps) {
            Eigen::VectorXcd dbxi = dbar_xi_numeric(F, h, z, fd_step, delta_min);
            const Complex fv = eval(f, z);
            const Complex fpv = eval(fp, z);
            // || dbar[conj(f^1/2) xi] ||^2 = || conj(f') xi / 2 + conj(f) dbar xi ||^2 / |f|
            Eigen::VectorXcd num = 0.5 * std::conj(fpv) * xi + std::conj(fv) * dbxi;
            integrand_b[i] = num.squaredNorm() / std::abs(fv);
        }
    }

    BoundReport rep_a;
    rep_a.lhs = lhs_a;
    rep_a.rhs_constant = 2.0 * M_E;
    rep_a.norm_factor = xi2;
    rep_a.pass = bound_pass(rep_a.lhs, rep_a.rhs(), slack);

    BoundReport rep_b;
    rep_b.rhs_constant = 4.0 * M_E;
    rep_b.norm_factor = xi2;
    rep_b.epsilon_trace = epsilon_sums(q, dist, integrand_b, epsilons);
    rep_b.lhs = rep_b.epsilon_trace.empty() ? 0.0 : rep_b.epsilon_trace.back().second;
    rep_b.pass = bound_pass(rep_b.lhs, rep_b.rhs(), slack);
    return {rep_a, rep_b};
}

BoundReport uchiyama_bound(const std::function<double(Complex)>& alpha_fn,
                           const std::vector<Complex>& centers, const AnalyticPoly& g,
                           const DiscQuadrature& q, const BoundaryQuadrature& b,
                           const std::vector<double>& epsilons, double fd_step, double slack,
                           double alpha_tol) {
    const double min_eps = epsilons.empty() ? 0.0 : epsilons.back();
    std::vector<double> dist = center_distances(q, centers);
    std::vector<double> integrand(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (dist[i] <= min_eps) continue;
        const Complex z = q.nodes[i];
        const double a = alpha_fn(z);
        if (a < -alpha_tol || a > 1.0 + alpha_tol) {
            throw Error(Errc::alpha_range, "alpha leaves [0,1] at a quadrature node");
        }
        // Delta~alpha may be negative; the integrand stays signed.
        const double lap = numeric_laplacian(alpha_fn, z, fd_stride(z, fd_step));
        integrand[i] = std::exp(a) * lap * std::norm(eval(g, z));
    }
    BoundReport rep;
    rep.rhs_constant = M_E;
    rep.norm_factor = boundary_norm_sq_of(g, b);
    rep.epsilon_trace = epsilon_sums(q, dist, integrand, epsilons);
    rep.lhs = rep.epsilon_trace.empty() ? 0.0 : rep.epsilon_trace.back().second;
    rep.pass = bound_pass(rep.lhs, rep.rhs(), slack);
    return rep;
}

BoundReport main_carleson_bound(const PolyRow& F, const AnalyticPoly& f, const AnalyticPoly& g,
                                const DiscQuadrature& q, const BoundaryQuadrature& b,
                                const std::vector<Complex>& f_zeros,
                                const std::vector<double>& epsilons, double slack,
                                double delta_min) {
    if (f.is_zero()) throw Error(Errc::zero_f, "main Carleson bound needs f not identically 0");
    const AnalyticPoly fp = derivative(f);
    const double min_eps = epsilons.empty() ? 0.0 : epsilons.back();
    const std::vector<double> dist = center_distances(q, f_zeros);
    std::vector<double> integrand(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (dist[i] <= min_eps) continue;
        const Complex z = q.nodes[i];
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        Eigen::RowVectorXcd Fpv = eval_row_derivative(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F(z)|| below floor");
        const Complex fv = eval(f, z);
        const Complex fpv = eval(fp, z);
        const Eigen::RowVectorXcd num = Fpv * fv - 0.5 * Fv * fpv;
        integrand[i] = std::norm((num * Fv.adjoint())(0, 0)) /
                       (std::abs(fv) * nF2 * nF2 * nF2) * std::norm(eval(g, z));
    }
    BoundReport rep;
    rep.rhs_constant = 2.0 * M_E * M_E + M_E;
    rep.norm_factor = boundary_norm_sq_of(g, b);
    rep.epsilon_trace = epsilon_sums(q, dist, integrand, epsilons);
    rep.lhs = rep.epsilon_trace.empty() ? 0.0 : rep.epsilon_trace.back().second;
    rep.pass = bound_pass(rep.lhs, rep.rhs(), slack);
    return rep;
}

}  // namespace corona
