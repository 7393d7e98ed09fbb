#include "corona/analytic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace corona {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::bad_resolution: return "BAD_RESOLUTION";
        case Errc::length_mismatch: return "LENGTH_MISMATCH";
        case Errc::small_norm: return "SMALL_NORM";
        case Errc::zero_poly: return "ZERO_POLY";
        case Errc::degree_too_small: return "DEGREE_TOO_SMALL";
        case Errc::rank_deficient: return "RANK_DEFICIENT";
        case Errc::duplicate_nodes: return "DUPLICATE_NODES";
        case Errc::alpha_range: return "ALPHA_RANGE";
        case Errc::near_zero_of_f: return "NEAR_ZERO_OF_F";
        case Errc::zero_f: return "ZERO_F";
        case Errc::domain_error: return "DOMAIN_ERROR";
        case Errc::fail_sup_norm: return "FAIL_SUP_NORM";
        case Errc::fail_zero_free: return "FAIL_ZERO_FREE";
        case Errc::fail_hypothesis: return "FAIL_HYPOTHESIS";
        case Errc::config_error: return "CONFIG_ERROR";
    }
    return "UNKNOWN";
}

AnalyticPoly::AnalyticPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == Complex{0.0, 0.0}) {
        coeffs_.pop_back();
    }
}

Complex eval(const AnalyticPoly& p, Complex z) {
    Complex acc{0.0, 0.0};
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

AnalyticPoly derivative(const AnalyticPoly& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return AnalyticPoly::zero();
    std::vector<Complex> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * c[k];
    }
    return AnalyticPoly(std::move(d));
}

AnalyticPoly add(const AnalyticPoly& a, const AnalyticPoly& b) {
    std::vector<Complex> out(std::max(a.coeffs().size(), b.coeffs().size()), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) out[k] += a.coeffs()[k];
    for (std::size_t k = 0; k < b.coeffs().size(); ++k) out[k] += b.coeffs()[k];
    return AnalyticPoly(std::move(out));
}

AnalyticPoly multiply(const AnalyticPoly& a, const AnalyticPoly& b) {
    if (a.is_zero() || b.is_zero()) return AnalyticPoly::zero();
    std::vector<Complex> out(a.coeffs().size() + b.coeffs().size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            out[i + j] += a.coeffs()[i] * b.coeffs()[j];
        }
    }
    return AnalyticPoly(std::move(out));
}

AnalyticPoly scale(const AnalyticPoly& p, Complex c) {
    std::vector<Complex> out = p.coeffs();
    for (auto& x : out) x *= c;
    return AnalyticPoly(std::move(out));
}

AnalyticPoly pow(const AnalyticPoly& p, int m) {
    AnalyticPoly out = AnalyticPoly::constant(1.0);
    for (int i = 0; i < m; ++i) out = multiply(out, p);
    return out;
}

AnalyticPoly compress(const AnalyticPoly& p, int N) {
    const auto& c = p.coeffs();
    std::vector<Complex> out(c.begin(), c.begin() + std::min<std::size_t>(c.size(), N + 1));
    return AnalyticPoly(std::move(out));
}

double coeff_norm_sq(const AnalyticPoly& p) {
    double s = 0.0;
    for (const auto& c : p.coeffs()) s += std::norm(c);
    return s;
}

std::vector<Complex> find_zeros(const AnalyticPoly& p, double radius) {
    if (p.is_zero()) throw Error(Errc::zero_poly, "find_zeros requires a nonzero polynomial");
    const int deg = p.degree();
    if (deg == 0) return {};
    // Companion matrix of the monic normalization.
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    const Complex lead = p.coeffs()[deg];
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -p.coeffs()[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    constexpr double kRootTol = 1e-9;  // zeros on the circle must be captured
    std::vector<Complex> out;
    for (int i = 0; i < deg; ++i) {
        Complex w = es.eigenvalues()(i);
        if (std::abs(w) <= radius + kRootTol) out.push_back(w);
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

PolyRow::PolyRow(std::vector<AnalyticPoly> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(Errc::domain_error, "PolyRow needs at least one entry");
}

int PolyRow::max_degree() const {
    int d = 0;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
}

Eigen::RowVectorXcd eval_row(const PolyRow& F, Complex z) {
    Eigen::RowVectorXcd v(F.n());
    for (int k = 0; k < F.n(); ++k) v(k) = eval(F.entry(k), z);
    return v;
}

Eigen::RowVectorXcd eval_row_derivative(const PolyRow& F, Complex z) {
    Eigen::RowVectorXcd v(F.n());
    for (int k = 0; k < F.n(); ++k) v(k) = eval(derivative(F.entry(k)), z);
    return v;
}

double row_norm(const PolyRow& F, Complex z) {
    double s = 0.0;
    for (int k = 0; k < F.n(); ++k) s += std::norm(eval(F.entry(k), z));
    return std::sqrt(s);
}

AnalyticPoly entry_square_sum(const PolyRow& F) {
    AnalyticPoly q = AnalyticPoly::zero();
    for (const auto& e : F.entries()) q = add(q, multiply(e, e));
    return q;
}

PsiSpec PsiSpec::exponential() {
    PsiSpec p;
    p.kind_ = Kind::exponential;
    return p;
}

PsiSpec PsiSpec::normalized_power(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw Error(Errc::domain_error, "normalized-power psi needs 0 < epsilon <= 1");
    }
    PsiSpec p;
    p.kind_ = Kind::normalized_power;
    p.epsilon_ = eps;
    return p;
}

PsiSpec PsiSpec::table(std::vector<double> s, std::vector<double> values) {
    if (s.size() != values.size() || s.size() < 2) {
        throw Error(Errc::domain_error, "table psi needs matching knot/value lists, length >= 2");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && !(s[i] > s[i - 1])) {
            throw Error(Errc::domain_error, "table psi knots must be strictly increasing");
        }
        if (values[i] < 0.0 || values[i] > 1.0) {
            throw Error(Errc::domain_error, "table psi values must lie in [0,1]");
        }
        if (i > 0 && values[i] > values[i - 1] + 1e-15) {
            throw Error(Errc::domain_error, "table psi values must be non-increasing");
        }
    }
    PsiSpec p;
    p.kind_ = Kind::table;
    p.knots_ = std::move(s);
    p.values_ = std::move(values);
    return p;
}

const char* PsiSpec::kind_name() const {
    switch (kind_) {
        case Kind::exponential: return "exponential";
        case Kind::normalized_power: return "normalized-power";
        case Kind::table: return "table";
    }
    return "?";
}

double psi_eval(const PsiSpec& psi, double s) {
    if (s < 0.0) throw Error(Errc::domain_error, "psi is defined on [0, infinity)");
    switch (psi.kind()) {
        case PsiSpec::Kind::exponential:
            return std::exp(-s);
        case PsiSpec::Kind::normalized_power:
            return psi.epsilon() * std::pow(1.0 + s, -(1.0 + psi.epsilon()));
        case PsiSpec::Kind::table: {
            const auto& xs = psi.knots();
            const auto& vs = psi.values();
            if (s <= xs.front()) return vs.front();
            if (s >= xs.back()) return vs.back();
            auto it = std::upper_bound(xs.begin(), xs.end(), s);
            std::size_t i = static_cast<std::size_t>(it - xs.begin());
            double t = (s - xs[i - 1]) / (xs[i] - xs[i - 1]);
            return vs[i - 1] + t * (vs[i] - vs[i - 1]);
        }
    }
    return 0.0;
}

double phi_eval(const PsiSpec& psi, double s) {
    if (s < 0.0) throw Error(Errc::domain_error, "phi is defined for s >= 0");
    if (s == 0.0) return 0.0;
    // For s > 1 the argument log(1/s^2) is negative; cap at psi(0) so the
    // margin of an invalid scenario remains well defined.
    double arg = std::log(1.0 / (s * s));
    return s * s * psi_eval(psi, std::max(arg, 0.0));
}

std::vector<Errc> HypothesisReport::failures() const {
    std::vector<Errc> out;
    if (!sup_ok) out.push_back(Errc::fail_sup_norm);
    if (!zero_free_ok) out.push_back(Errc::fail_zero_free);
    if (!hypothesis_ok) out.push_back(Errc::fail_hypothesis);
    return out;
}

HypothesisReport validate_scenario(const PolyRow& F, const AnalyticPoly& f, const PsiSpec& psi,
                                   int resolution, double delta_floor, double margin_tol) {
    if (resolution < 64) throw Error(Errc::bad_resolution, "validation resolution must be >= 64");
    HypothesisReport rep;
    rep.resolution = resolution;
    rep.radial_count = resolution / 2;
    rep.delta_floor = delta_floor;
    rep.margin_tol = margin_tol;

    double sup = 0.0, boundary_sup = 0.0;
    double delta = std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    auto visit = [&](Complex z, bool boundary) {
        double s = row_norm(F, z);
        sup = std::max(sup, s);
        if (boundary) boundary_sup = std::max(boundary_sup, s);
        delta = std::min(delta, s);
        margin = std::min(margin, phi_eval(psi, s) - std::abs(eval(f, z)));
    };
    visit(Complex{0.0, 0.0}, false);
    for (int j = 1; j <= rep.radial_count; ++j) {
        double r = static_cast<double>(j) / rep.radial_count;
        for (int i = 0; i < resolution; ++i) {
            double th = 2.0 * M_PI * i / resolution;
            visit(std::polar(r, th), j == rep.radial_count);
        }
    }
    rep.sup_norm = sup;
    rep.boundary_sup = boundary_sup;
    rep.delta = delta;
    rep.margin = margin;
    rep.sup_ok = sup <= 1.0 + 1e-12;
    rep.zero_free_ok = delta >= delta_floor;
    rep.hypothesis_ok = margin >= -margin_tol;
    return rep;
}

}  // namespace corona
