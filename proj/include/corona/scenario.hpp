#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "corona/analytic.hpp"

namespace corona {

struct GridSpec {
    int radial = 128;
    int angular = 256;
    int boundary = 1024;
};

struct Tolerances {
    double slack = 0.05;            // multiplicative slack on Carleson/term bounds
    double solve = 1e-8;            // residual factor for minimal_norm_solve
    double psd = 1e-10;             // PSD tolerance factor (times trace scale)
    double oracle = 1e-4;           // functional decomposition defect
    double identities = 1e-5;       // scaled identity residuals
    double measure_laplace = 1e-4;
    double delta_min = 1e-6;        // zero-freeness floor
    double hypothesis = 1e-9;       // margin rounding tolerance
};

/// A fully resolved scenario: the data (F, f, g, psi) plus every numeric knob.
/// `resolved` echoes the complete configuration so that reports are
/// self-contained and reproducible.
struct Scenario {
    std::string name;
    bool expect_fail = false;
    PolyRow F;
    AnalyticPoly f;
    AnalyticPoly g;
    int generator_power = 0;  // nonzero when f = (sum f_k^2)^m was generated
    PsiSpec psi;
    GridSpec grid;
    double fd_step = 1e-4;
    std::vector<int> truncations{8, 16, 32, 64};
    int coanalytic_K = 8;
    std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};
    Tolerances tol;
    std::uint64_t seed = 987654321ULL;
    int validation_resolution = 256;
    nlohmann::json resolved;
};

/// Parse a scenario from its JSON description. Complex numbers are
/// two-element [re, im] arrays; `f` is either a coefficient array or a
/// generator object {"power": m} meaning f = (sum_k f_k^2)^m.
/// Throws Errc::config_error on malformed input.
Scenario scenario_from_json(const nlohmann::json& config);

nlohmann::json poly_to_json(const AnalyticPoly& p);
AnalyticPoly poly_from_json(const nlohmann::json& j);

/// Built-in scenario corpus: trivial n=1 cases, the normalized [z, c]
/// families, the [(z+2)/4, 1/4] row, an n=3 row, both shipped psi kinds,
/// generator powers m in {2, 3}, and the expected-fail corona datum.
std::vector<nlohmann::json> corpus();

/// Distinct zeros of f inside the closed disc, used as puncture centres.
/// When f was generated as (sum f_k^2)^m the zeros of the base polynomial are
/// used directly (they are simple there, so the companion eigenproblem is
/// well conditioned).
std::vector<Complex> scenario_f_zeros(const Scenario& s);

}  // namespace corona
