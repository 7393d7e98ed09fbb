#include "corona/fields.hpp"

#include <cmath>
#include <random>

namespace corona {

namespace {

// dbarPhi = ||F||^-2 (F')^* - ||F||^-4 (F (F')^*) F^* = ||F||^-2 Pi (F')^*.
// The projector form keeps the field structurally zero for scalar rows.
Eigen::VectorXcd dbar_phi_closed(const PolyRow& F, Complex z) {
    Eigen::RowVectorXcd Fv = eval_row(F, z);
    Eigen::RowVectorXcd Fp = eval_row_derivative(F, z);
    const double nF2 = Fv.squaredNorm();
    const int n = F.n();
    Eigen::MatrixXcd pi = Eigen::MatrixXcd::Identity(n, n) - Fv.adjoint() * Fv / nF2;
    return pi * Fp.adjoint() / nF2;
}

std::vector<std::size_t> draw_samples(std::size_t node_count, int sample_count,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dist(0, node_count - 1);
    std::vector<std::size_t> idx(sample_count);
    for (auto& i : idx) i = dist(rng);
    return idx;
}

}  // namespace

FieldSample sample_fields(const PolyRow& F, const AnalyticPoly& f, Complex z, double delta_min) {
    FieldSample s;
    s.z = z;
    s.F_val = eval_row(F, z);
    s.F_deriv = eval_row_derivative(F, z);
    s.norm_sq = s.F_val.squaredNorm();
    if (std::sqrt(s.norm_sq) < delta_min) {
        throw Error(Errc::small_norm, "||F(z)|| below the zero-freeness floor");
    }
    const int n = F.n();
    s.phi = s.F_val.adjoint() / s.norm_sq;
    s.pi = Eigen::MatrixXcd::Identity(n, n) - s.F_val.adjoint() * s.F_val / s.norm_sq;
    s.d_pi = -(s.F_val.adjoint() * (s.F_deriv * s.pi)) / s.norm_sq;
    s.dbar_phi = dbar_phi_closed(F, z);
    s.f_val = eval(f, z);
    s.f_deriv = eval(derivative(f), z);
    s.alpha = std::abs(s.f_val) / s.norm_sq;
    s.beta = std::log(s.norm_sq);
    return s;
}

double d_pi_norm_sq(const Eigen::RowVectorXcd& F_val, const Eigen::RowVectorXcd& F_deriv) {
    if (F_val.size() == 1) return 0.0;  // Pi vanishes identically for scalar rows
    const double nF2 = F_val.squaredNorm();
    const double nFp2 = F_deriv.squaredNorm();
    const Complex FpFstar = (F_deriv * F_val.adjoint())(0, 0);
    // Cauchy-Schwarz difference; clamp any cancellation dust.
    return std::max(0.0, nF2 * nFp2 - std::norm(FpFstar)) / (nF2 * nF2);
}

double IdentityReport::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

IdentityReport verify_pi_identities(const PolyRow& F, const DiscQuadrature& q, int sample_count,
                                    double fd_step, std::uint64_t seed, double delta_min) {
    IdentityReport rep;
    rep.names = {"pi_dbar_phi",  "dbar_phi_adjoint", "d_dbar_phi", "pi_d_pi",
                 "d_pi_star_pi", "norm_transfer",    "norm_formula"};
    rep.sample_count = sample_count;
    rep.seed = seed;
    rep.fd_step = fd_step;

    // Identities mix orders of magnitude; residuals are absolute with the
    // fields pre-scaled by max(1, sup||F'||^2 / delta^2).
    double delta = std::numeric_limits<double>::infinity();
    double sup_fp = 0.0;
    for (const auto& z : q.nodes) {
        delta = std::min(delta, row_norm(F, z));
        sup_fp = std::max(sup_fp, eval_row_derivative(F, z).norm());
    }
    if (delta < delta_min) throw Error(Errc::small_norm, "F vanishes on the grid");
    rep.scale = std::max(1.0, sup_fp * sup_fp / (delta * delta));

    const AnalyticPoly fzero = AnalyticPoly::zero();
    auto idx = draw_samples(q.size(), sample_count, seed);
    for (std::size_t i : idx) {
        const Complex z = q.nodes[i];
        FieldSample s = sample_fields(F, fzero, z, delta_min);
        const Eigen::MatrixXcd d_pi_star = s.d_pi.adjoint();

        double r0 = (s.pi * s.dbar_phi - s.dbar_phi).norm();
        double r1 = (s.dbar_phi + d_pi_star * s.phi).norm();

        const double h = fd_stride(z, fd_step);
        auto eval_dbar_phi = [&](Complex w) -> Eigen::MatrixXcd { return dbar_phi_closed(F, w); };
        Eigen::MatrixXcd d_dbar_phi = numeric_wirtinger(eval_dbar_phi, z, h).d;
        const Complex FpPhi = (s.F_deriv * s.phi)(0, 0);
        Eigen::MatrixXcd rhs = s.d_pi * s.dbar_phi + d_pi_star * s.phi * FpPhi;
        double r2 = (d_dbar_phi - rhs).norm();

        double r3 = (s.pi * s.d_pi).norm();
        double r4 = (d_pi_star * s.pi).norm();

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.d_pi);
        const double op = svd.singularValues()(0);
        double r5 = std::abs(op * op - s.norm_sq * s.dbar_phi.squaredNorm());
        double r6 = std::abs(op * op - d_pi_norm_sq(s.F_val, s.F_deriv));

        const std::array<double, 7> res{r0, r1, r2, r3, r4, r5, r6};
        for (std::size_t k = 0; k < res.size(); ++k) {
            rep.residuals[k] = std::max(rep.residuals[k], res[k] / rep.scale);
        }
    }
    return rep;
}

double verify_laplacian_formula(const PolyRow& G, ScalarKind h_kind, const DiscQuadrature& q,
                                int sample_count, double fd_step, std::uint64_t seed,
                                double delta_min) {
    auto idx = draw_samples(q.size(), sample_count, seed);
    auto h_of_norm = [&](Complex w) -> double {
        double t = eval_row(G, w).squaredNorm();
        return h_kind == ScalarKind::reciprocal ? 1.0 / t : std::log(t);
    };
    double worst = 0.0;
    for (std::size_t i : idx) {
        const Complex z = q.nodes[i];
        Eigen::RowVectorXcd Gv = eval_row(G, z);
        Eigen::RowVectorXcd Gp = eval_row_derivative(G, z);
        const double t = Gv.squaredNorm();
        if (std::sqrt(t) < delta_min) {
            throw Error(Errc::small_norm, "||G|| below floor in laplacian formula check");
        }
        double hp, hpp;
        if (h_kind == ScalarKind::reciprocal) {
            hp = -1.0 / (t * t);
            hpp = 2.0 / (t * t * t);
        } else {
            hp = 1.0 / t;
            hpp = -1.0 / (t * t);
        }
        const double cross = std::norm((Gp * Gv.adjoint())(0, 0));
        const double rhs = hpp * cross + hp * Gp.squaredNorm();
        const double lhs = numeric_laplacian(h_of_norm, z, fd_stride(z, fd_step));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double verify_measure_laplace(const PolyRow& F, const AnalyticPoly& f, const DiscQuadrature& q,
                              int sample_count, double fd_step, std::uint64_t seed,
                              double delta_min) {
    if (f.is_zero()) throw Error(Errc::zero_f, "measure-laplace check needs f not identically 0");
    const std::vector<Complex> zeros = f.degree() > 0 ? find_zeros(f, 1.0) : std::vector<Complex>{};
    const double exclusion = 10.0 * fd_step;

    auto idx = draw_samples(q.size(), sample_count, seed);
    std::vector<Complex> pts;
    for (std::size_t i : idx) {
        const Complex z = q.nodes[i];
        bool near = false;
        for (const auto& w : zeros) {
            if (std::abs(z - w) <= exclusion) {
                near = true;
                break;
            }
        }
        if (!near) pts.push_back(z);
    }
    if (pts.empty()) throw Error(Errc::near_zero_of_f, "all samples fell near zeros of f");

    const AnalyticPoly fp = derivative(f);
    auto alpha_at = [&](Complex w) -> double {
        return std::abs(eval(f, w)) / eval_row(F, w).squaredNorm();
    };
    auto beta_at = [&](Complex w) -> double { return std::log(eval_row(F, w).squaredNorm()); };

    double worst = 0.0;
    for (const Complex z : pts) {
        Eigen::RowVectorXcd Fv = eval_row(F, z);
        Eigen::RowVectorXcd Fp = eval_row_derivative(F, z);
        const double nF2 = Fv.squaredNorm();
        if (std::sqrt(nF2) < delta_min) throw Error(Errc::small_norm, "||F|| below floor");
        const Complex fv = eval(f, z);
        const Complex fpv = eval(fp, z);
        // (F f^-1/2)' = f^-3/2 (F' f - F f'/2); the branch cancels in the display.
        const Eigen::RowVectorXcd num = Fp * fv - 0.5 * Fv * fpv;
        const double lhs = std::norm((num * Fv.adjoint())(0, 0)) / (std::abs(fv) * nF2 * nF2 * nF2);
        const double h = fd_stride(z, fd_step);
        const double rhs = numeric_laplacian(alpha_at, z, h) +
                           (std::abs(fv) / nF2) * numeric_laplacian(beta_at, z, h);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace corona
