#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "corona/error.hpp"

namespace corona {

using Complex = std::complex<double>;

/// Analytic polynomial p(z) = sum coeffs[k] z^k. The trailing (highest-index)
/// coefficient is nonzero unless the polynomial is identically zero, in which
/// case coeffs is empty.
class AnalyticPoly {
  public:
    AnalyticPoly() = default;
    explicit AnalyticPoly(std::vector<Complex> coeffs);

    static AnalyticPoly zero() { return AnalyticPoly{}; }
    static AnalyticPoly constant(Complex c) { return AnalyticPoly({c}); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex{0.0, 0.0};
    }

  private:
    std::vector<Complex> coeffs_;
};

/// Horner evaluation of p at z.
Complex eval(const AnalyticPoly& p, Complex z);

/// Coefficient sequence of p'.
AnalyticPoly derivative(const AnalyticPoly& p);

AnalyticPoly add(const AnalyticPoly& a, const AnalyticPoly& b);
AnalyticPoly multiply(const AnalyticPoly& a, const AnalyticPoly& b);
AnalyticPoly scale(const AnalyticPoly& p, Complex c);
AnalyticPoly pow(const AnalyticPoly& p, int m);
/// Drop all coefficients above degree N (projection onto span{1..z^N}).
AnalyticPoly compress(const AnalyticPoly& p, int N);

/// Parseval norm: ||p||_2^2 = sum |coeffs[k]|^2.
double coeff_norm_sq(const AnalyticPoly& p);

/// All roots w with |w| <= radius + 1e-9, with multiplicity, from the
/// companion-matrix eigenproblem of the monic normalization.
/// Throws Errc::zero_poly when p is identically zero.
std::vector<Complex> find_zeros(const AnalyticPoly& p, double radius);

/// Row-valued polynomial F = [f_1, ..., f_n], n >= 1.
class PolyRow {
  public:
    PolyRow() = default;
    explicit PolyRow(std::vector<AnalyticPoly> entries);

    int n() const { return static_cast<int>(entries_.size()); }
    const std::vector<AnalyticPoly>& entries() const { return entries_; }
    const AnalyticPoly& entry(int k) const { return entries_[k]; }
    int max_degree() const;

  private:
    std::vector<AnalyticPoly> entries_;
};

/// F(z) as a 1 x n row vector.
Eigen::RowVectorXcd eval_row(const PolyRow& F, Complex z);
/// F'(z) as a 1 x n row vector.
Eigen::RowVectorXcd eval_row_derivative(const PolyRow& F, Complex z);
/// Euclidean norm of the row vector F(z).
double row_norm(const PolyRow& F, Complex z);
/// sum of the entrywise squares f_1^2 + ... + f_n^2 (unconjugated).
AnalyticPoly entry_square_sum(const PolyRow& F);

/// Weight psi: [0,inf) -> [0,1], non-increasing with integral at most 1, and
/// the derived gauge phi(s) = s^2 psi(log s^-2).
class PsiSpec {
  public:
    enum class Kind { exponential, normalized_power, table };

    static PsiSpec exponential();
    /// psi(s) = eps / (1+s)^(1+eps); requires 0 < eps <= 1 so that psi(0) <= 1.
    static PsiSpec normalized_power(double eps);
    /// Piecewise-linear table on ascending knots with constant extrapolation by
    /// the last value. Values must be non-increasing and lie in [0,1].
    static PsiSpec table(std::vector<double> s, std::vector<double> values);

    Kind kind() const { return kind_; }
    double epsilon() const { return epsilon_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    const char* kind_name() const;

  private:
    Kind kind_ = Kind::exponential;
    double epsilon_ = 1.0;
    std::vector<double> knots_, values_;
};

/// psi(s). Throws Errc::domain_error for negative s.
double psi_eval(const PsiSpec& psi, double s);
/// phi(s) = s^2 psi(log s^-2), with phi(0) = 0 (the limit, since psi <= 1).
/// For s > 1 the argument of psi is negative; psi is capped at psi(0) there so
/// that margins of invalid scenarios remain well defined.
double phi_eval(const PsiSpec& psi, double s);

struct HypothesisReport {
    double sup_norm = 0.0;    // max of ||F|| over boundary + interior grid
    double boundary_sup = 0.0;
    double delta = 0.0;       // min of ||F|| over the closed-disc grid
    double margin = 0.0;      // min of phi(||F||) - |f|
    bool sup_ok = false;
    bool zero_free_ok = false;
    bool hypothesis_ok = false;
    int resolution = 0;       // angular grid size; radial count is resolution/2
    int radial_count = 0;
    double delta_floor = 0.0;
    double margin_tol = 0.0;

    bool pass() const { return sup_ok && zero_free_ok && hypothesis_ok; }
    std::vector<Errc> failures() const;
};

/// Grid check of the hypotheses of the main estimate: ||F||_inf <= 1, F
/// zero-free on the closed disc, and |f| <= phi(||F||). The grid is
/// `resolution` equispaced boundary points crossed with resolution/2 + 1
/// equispaced radii in [0,1] (the centre counted once).
HypothesisReport validate_scenario(const PolyRow& F, const AnalyticPoly& f, const PsiSpec& psi,
                                   int resolution, double delta_floor = 1e-6,
                                   double margin_tol = 1e-9);

}  // namespace corona
