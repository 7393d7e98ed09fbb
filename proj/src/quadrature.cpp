#include "corona/quadrature.hpp"

#include <cmath>

namespace corona {

// Newton iteration on the Legendre recurrence; nodes are symmetric about 0.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

DiscQuadrature build_disc_quadrature(int radial_count, int angular_count) {
    if (radial_count < 16 || angular_count < 32) {
        throw Error(Errc::bad_resolution, "disc quadrature needs radial >= 16, angular >= 32");
    }
    DiscQuadrature q;
    q.radial_count = radial_count;
    q.angular_count = angular_count;
    std::vector<double> x, w;
    gauss_legendre(radial_count, x, w);
    q.nodes.reserve(static_cast<std::size_t>(radial_count) * angular_count);
    q.weights.reserve(q.nodes.capacity());
    const double dtheta = 2.0 * M_PI / angular_count;
    for (int i = 0; i < radial_count; ++i) {
        const double t = 0.5 * (x[i] + 1.0);
        const double wt = 0.5 * w[i];
        const double r = t * t;  // r = t^2 flattens the log endpoint singularity
        const double weight = (2.0 / M_PI) * std::log(1.0 / r) * r * (2.0 * t) * wt * dtheta;
        for (int j = 0; j < angular_count; ++j) {
            q.nodes.push_back(std::polar(r, dtheta * j));
            q.weights.push_back(weight);
        }
    }
    return q;
}

BoundaryQuadrature build_boundary_quadrature(int M) {
    if (M < 1) throw Error(Errc::bad_resolution, "boundary quadrature needs M >= 1");
    BoundaryQuadrature b;
    b.weight = 1.0 / M;
    b.nodes.reserve(M);
    for (int j = 0; j < M; ++j) b.nodes.push_back(std::polar(1.0, 2.0 * M_PI * j / M));
    return b;
}

PuncturedDomain puncture(const DiscQuadrature& q, const std::vector<Complex>& centers,
                         double epsilon) {
    if (epsilon <= 0.0) throw Error(Errc::domain_error, "puncture radius must be positive");
    PuncturedDomain p;
    p.centers = centers;
    p.epsilon = epsilon;
    p.nodes.reserve(q.size());
    p.weights.reserve(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        bool removed = false;
        for (const auto& c : centers) {
            if (std::abs(q.nodes[i] - c) <= epsilon) {
                removed = true;
                break;
            }
        }
        if (removed) {
            p.removed_weight += q.weights[i];
        } else {
            p.nodes.push_back(q.nodes[i]);
            p.weights.push_back(q.weights[i]);
        }
    }
    return p;
}

namespace {
template <typename Q>
Complex fold(const Q& q, const std::vector<Complex>& samples) {
    if (samples.size() != q.nodes.size()) {
        throw Error(Errc::length_mismatch, "sample count does not match node count");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < samples.size(); ++i) acc += q.weights[i] * samples[i];
    return acc;
}
}  // namespace

Complex integrate_mu(const DiscQuadrature& q, const std::vector<Complex>& samples) {
    return fold(q, samples);
}

Complex integrate_mu(const PuncturedDomain& q, const std::vector<Complex>& samples) {
    return fold(q, samples);
}

Complex integrate_boundary(const BoundaryQuadrature& q, const std::vector<Complex>& samples) {
    if (samples.size() != q.nodes.size()) {
        throw Error(Errc::length_mismatch, "sample count does not match node count");
    }
    Complex acc{0.0, 0.0};
    for (const auto& s : samples) acc += s;
    return q.weight * acc;
}

WirtingerDerivatives numeric_wirtinger(const std::function<Eigen::MatrixXcd(Complex)>& eval_fn,
                                       Complex z, double step) {
    const Complex h{step, 0.0}, ih{0.0, step};
    Eigen::MatrixXcd dx = (eval_fn(z + h) - eval_fn(z - h)) / (2.0 * step);
    Eigen::MatrixXcd dy = (eval_fn(z + ih) - eval_fn(z - ih)) / (2.0 * step);
    WirtingerDerivatives out;
    out.d = 0.5 * (dx - Complex{0.0, 1.0} * dy);
    out.dbar = 0.5 * (dx + Complex{0.0, 1.0} * dy);
    return out;
}

WirtingerScalar numeric_wirtinger(const std::function<Complex(Complex)>& eval_fn, Complex z,
                                  double step) {
    const Complex h{step, 0.0}, ih{0.0, step};
    Complex dx = (eval_fn(z + h) - eval_fn(z - h)) / (2.0 * step);
    Complex dy = (eval_fn(z + ih) - eval_fn(z - ih)) / (2.0 * step);
    return {0.5 * (dx - Complex{0.0, 1.0} * dy), 0.5 * (dx + Complex{0.0, 1.0} * dy)};
}

double numeric_laplacian(const std::function<double(Complex)>& u_fn, Complex z, double step) {
    const Complex h{step, 0.0}, ih{0.0, step};
    return (u_fn(z + h) + u_fn(z - h) + u_fn(z + ih) + u_fn(z - ih) - 4.0 * u_fn(z)) /
           (4.0 * step * step);
}

double green_residual(const std::function<double(Complex)>& u_fn,
                      const std::function<double(Complex)>& u_laplacian_fn,
                      const DiscQuadrature& q, const BoundaryQuadrature& b) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) lhs += q.weights[i] * u_laplacian_fn(q.nodes[i]);
    double mean = 0.0;
    for (const auto& z : b.nodes) mean += u_fn(z);
    mean *= b.weight;
    return std::abs(lhs - (mean - u_fn(Complex{0.0, 0.0})));
}

std::vector<double> punctured_green_residual(const std::function<double(Complex)>& u_fn,
                                             const std::function<double(Complex)>& u_laplacian_fn,
                                             const std::vector<Complex>& centers,
                                             const std::vector<double>& epsilons,
                                             const DiscQuadrature& q,
                                             const BoundaryQuadrature& b) {
    double mean = 0.0;
    for (const auto& z : b.nodes) mean += u_fn(z);
    mean *= b.weight;
    const double rhs = mean - u_fn(Complex{0.0, 0.0});

    std::vector<double> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) {
        PuncturedDomain p = puncture(q, centers, eps);
        double lhs = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) lhs += p.weights[i] * u_laplacian_fn(p.nodes[i]);
        out.push_back(std::abs(lhs - rhs));
    }
    return out;
}

}  // namespace corona
