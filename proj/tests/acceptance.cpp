// Acceptance suite: one pass/fail line per criterion, every tolerance pinned.
// Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "corona/carleson.hpp"
#include "corona/fields.hpp"
#include "corona/functional.hpp"
#include "corona/hardy.hpp"
#include "corona/harness.hpp"

using namespace corona;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Corpus {
    std::vector<Scenario> valid;      // scenarios passing validation
    std::vector<Scenario> fail_data;  // expected-fail corona data
};

Corpus load_corpus() {
    Corpus c;
    for (const auto& cfg : corpus()) {
        Scenario sc = scenario_from_json(cfg);
        (sc.expect_fail ? c.fail_data : c.valid).push_back(std::move(sc));
    }
    return c;
}

// ---- criterion 1: Green's formula on the standard test fields ----
void criterion_1() {
    auto t0 = Clock::now();
    struct Field {
        const char* name;
        std::function<double(Complex)> u;
        std::function<double(Complex)> lap;
    };
    std::vector<Field> fields{
        {"1", [](Complex) { return 1.0; }, [](Complex) { return 0.0; }},
        {"|z|^2", [](Complex z) { return std::norm(z); }, [](Complex) { return 1.0; }},
        {"|z|^4", [](Complex z) { return std::norm(z) * std::norm(z); },
         [](Complex z) { return 4.0 * std::norm(z); }},
        {"|1+z|^2", [](Complex z) { return std::norm(1.0 + z); }, [](Complex) { return 1.0; }},
    };
    DiscQuadrature q_full = build_disc_quadrature(128, 256);
    BoundaryQuadrature b_full = build_boundary_quadrature(256);
    DiscQuadrature q_half = build_disc_quadrature(64, 128);
    BoundaryQuadrature b_half = build_boundary_quadrature(128);

    bool pass = true;
    double worst = 0.0;
    for (const auto& f : fields) {
        double full = green_residual(f.u, f.lap, q_full, b_full);
        double half = green_residual(f.u, f.lap, q_half, b_half);
        worst = std::max(worst, full);
        pass = pass && full <= 1e-8;
        // order check, with the 1e-12 quadrature floor
        pass = pass && (half >= 4.0 * full || half <= 1e-12);
    }
    double dt = seconds_since(t0);
    pass = pass && dt < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Green residuals <= 1e-8 at 128x256 with 4x order check (worst %.3e, %.2fs)",
                  worst, dt);
    report(1, pass, buf);
}

// ---- criterion 2: identity suite on every corpus scenario ----
void criterion_2(const Corpus& c) {
    bool pass = true;
    double worst = 0.0;
    double slowest = 0.0;
    for (const Scenario& sc : c.valid) {
        auto t0 = Clock::now();
        DiscQuadrature q = build_disc_quadrature(sc.grid.radial, sc.grid.angular);
        IdentityReport rep = verify_pi_identities(sc.F, q, 200, 1e-4, sc.seed, sc.tol.delta_min);
        double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        worst = std::max(worst, rep.max_residual());
        pass = pass && rep.max_residual() <= 1e-5 && dt < 30.0;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "identity residuals <= 1e-5 over 200 nodes, %zu scenarios (worst %.3e, max %.2fs)",
                  c.valid.size(), worst, slowest);
    report(2, pass, buf);
}

// ---- criterion 3: measure-Laplacian identity away from zeros of f ----
void criterion_3(const Corpus& c) {
    bool pass = true;
    double worst = 0.0;
    int checked = 0;
    for (const Scenario& sc : c.valid) {
        if (sc.f.is_zero()) continue;
        DiscQuadrature q = build_disc_quadrature(sc.grid.radial, sc.grid.angular);
        double res = verify_measure_laplace(sc.F, sc.f, q, 200, 1e-4, sc.seed, sc.tol.delta_min);
        worst = std::max(worst, res);
        pass = pass && res <= 1e-4;
        ++checked;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "measure-Laplace residual <= 1e-4 on %d scenarios (worst %.3e)",
                  checked, worst);
    report(3, pass, buf);
}

// ---- criterion 4: the four Carleson bounds with the paper constants ----
void criterion_4(const Corpus& c) {
    const double slack = 0.05;
    bool pass = true;
    std::string failing;
    for (const Scenario& sc : c.valid) {
        DiscQuadrature q = build_disc_quadrature(sc.grid.radial, sc.grid.angular);
        BoundaryQuadrature b = build_boundary_quadrature(sc.grid.boundary);
        std::vector<Complex> zeros = scenario_f_zeros(sc);

        BoundReport l41 = lemma_carleson_bound(sc.F, sc.psi, sc.g, q, b, slack, sc.tol.delta_min);
        bool ok = l41.pass;
        for (int j = 0; j < sc.F.n() && ok; ++j) {
            for (int k = 1; k <= sc.coanalytic_K && ok; ++k) {
                CoanalyticVector h = CoanalyticVector::basis(sc.F.n(), j, k);
                auto [ra, rb] = lemma_dbar_embedding(sc.F, sc.f, sc.psi, h, q, b, zeros,
                                                     sc.epsilons, sc.fd_step, slack,
                                                     sc.tol.delta_min);
                ok = ok && ra.pass && rb.pass;
                for (std::size_t i = 1; i < rb.epsilon_trace.size(); ++i) {
                    ok = ok && rb.epsilon_trace[i].second >= rb.epsilon_trace[i - 1].second - 1e-12;
                }
            }
        }
        auto alpha_fn = [&](Complex z) -> double {
            return std::abs(eval(sc.f, z)) / eval_row(sc.F, z).squaredNorm();
        };
        BoundReport uch = uchiyama_bound(alpha_fn, zeros, sc.g, q, b, sc.epsilons, sc.fd_step,
                                         slack);
        ok = ok && uch.pass;
        if (!sc.f.is_zero()) {
            BoundReport mn = main_carleson_bound(sc.F, sc.f, sc.g, q, b, zeros, sc.epsilons,
                                                 slack, sc.tol.delta_min);
            ok = ok && mn.pass;
            for (std::size_t i = 1; i < mn.epsilon_trace.size(); ++i) {
                ok = ok && mn.epsilon_trace[i].second >= mn.epsilon_trace[i - 1].second - 1e-12;
            }
        }
        if (!ok && failing.empty()) failing = sc.name;
        pass = pass && ok;
    }
    report(4, pass,
           pass ? "Carleson bounds 2e / 2e / 4e / e / (2e^2+e) hold at slack 0.05 with monotone "
                  "epsilon traces"
                : "Carleson bound violated on scenario " + failing);
}

// ---- criterion 5: functional decomposition and the three term bounds ----
void criterion_5(const Corpus& c) {
    const double slack = 0.05;
    bool pass = true;
    double worst = 0.0;
    std::string failing;
    for (const Scenario& sc : c.valid) {
        DiscQuadrature q = build_disc_quadrature(sc.grid.radial, sc.grid.angular);
        BoundaryQuadrature b = build_boundary_quadrature(sc.grid.boundary);
        std::vector<Complex> zeros = scenario_f_zeros(sc);
        bool ok = true;
        for (int j = 0; j < sc.F.n(); ++j) {
            for (int k = 1; k <= 8; ++k) {
                CoanalyticVector h = CoanalyticVector::basis(sc.F.n(), j, k);
                TermBreakdown tb = evaluate_terms(sc.F, sc.f, sc.g, h, q, b, zeros, sc.epsilons,
                                                  sc.fd_step, sc.tol.delta_min);
                double defect = std::abs(tb.total - tb.oracle);
                worst = std::max(worst, defect / (1.0 + tb.xi_norm));
                ok = ok && defect <= 1e-4 * (1.0 + tb.xi_norm);
                ok = ok && std::abs(tb.term_I) <= tb.bound_I * (1.0 + slack) + 1e-14;
                ok = ok && std::abs(tb.term_II) <= tb.bound_II * (1.0 + slack) + 1e-14;
                ok = ok && std::abs(tb.term_III) <= tb.bound_III * (1.0 + slack) + 1e-14;
            }
        }
        if (!ok && failing.empty()) failing = sc.name;
        pass = pass && ok;
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "|I+II+III - oracle| <= 1e-4 (1+||xi||) on all K=8 basis vectors, term bounds at "
                  "slack 0.05 (worst defect ratio %.3e)%s%s",
                  worst, failing.empty() ? "" : "; first failure ", failing.c_str());
    report(5, pass, buf);
}

// ---- criterion 6: finite-section solver bound ----
void criterion_6(const Corpus& c, std::vector<std::vector<NormBoundRow>>& tables) {
    const double c_total = total_bound_constant();
    bool pass = true;
    double slowest = 0.0;
    std::string failing;
    tables.clear();
    for (const Scenario& sc : c.valid) {
        auto t0 = Clock::now();
        auto rows = norm_bound_experiment(sc.F, sc.f, sc.g, {8, 16, 32, 64});
        double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        bool ok = dt < 10.0;
        double prev = -1.0;
        for (const auto& r : rows) {
            ok = ok && r.residual <= 1e-8 && r.ratio <= c_total && r.ratio >= prev - 1e-10;
            prev = r.ratio;
        }
        if (!ok && failing.empty()) failing = sc.name;
        pass = pass && ok;
        tables.push_back(rows);
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "minimal-norm ratios <= C_total = %.4f, residual <= 1e-8, non-decreasing in N "
                  "(max %.2fs)%s%s",
                  c_total, slowest, failing.empty() ? "" : "; first failure ", failing.c_str());
    report(6, pass, buf);
}

// ---- criterion 7: Leech / Toeplitz-corona coherence at the measured ratio ----
//
// Stated check: at every N where criterion 6 passed with ratio rho, the
// section PSD test must pass at C = rho (1+1e-6), and the 32-node Pick test at
// C = 1.1 rho. By the finite-dimensional Douglas lemma the section test at C
// is equivalent to the minimal-norm ratio staying below C for EVERY
// right-hand side of degree <= N, so the single-g ratio certifies it only
// when g is a maximizing vector; the fixed corpus g's are not. The check is
// implemented exactly as stated; the diagnostic line shows the operator-level
// statement at C_total, which the theorem does guarantee.
void criterion_7(const Corpus& c, const std::vector<std::vector<NormBoundRow>>& tables) {
    bool pass = true;
    bool sound_pass = true;
    double worst_eig = 0.0;
    std::string failing;
    const double c_total = total_bound_constant();
    const auto pool = pick_node_pool();
    for (std::size_t s = 0; s < c.valid.size(); ++s) {
        const Scenario& sc = c.valid[s];
        bool ok = true;
        double rho_last = 0.0;
        for (const auto& row : tables[s]) {
            const double c_rho = std::max(row.ratio, 1e-6) * (1.0 + 1e-6);
            PsdCheck pc = leech_psd_check(sc.F, sc.f, c_rho, row.N, 1e-10);
            ok = ok && pc.pass;
            worst_eig = std::min(worst_eig, pc.min_eigenvalue);
            rho_last = row.ratio;

            PsdCheck sound = leech_psd_check(sc.F, sc.f, c_total * (1.0 + 1e-6), row.N, 1e-10);
            sound_pass = sound_pass && sound.pass;
        }
        PsdCheck pk = pick_matrix_check(sc.F, sc.f, std::max(rho_last, 1e-6) * 1.1, pool, 1e-10);
        ok = ok && pk.pass;
        PsdCheck pk_sound = pick_matrix_check(sc.F, sc.f, c_total * 1.1, pool, 1e-10);
        sound_pass = sound_pass && pk_sound.pass;
        if (!ok && failing.empty()) failing = sc.name;
        pass = pass && ok;
    }
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "leech_psd_check at C = rho(1+1e-6) and Pick at 1.1 rho on every scenario "
                  "(worst min eig %.3e%s%s)",
                  worst_eig, failing.empty() ? "" : "; first failure ", failing.c_str());
    report(7, pass, buf);
    if (!pass) {
        std::printf("       note: operator-level variant at C_total = %.4f %s on all scenarios "
                    "(the theorem-backed direction)\n",
                    c_total, sound_pass ? "PASSES" : "FAILS");
    }
}

// ---- criterion 8: negative control enforces the phi-hypothesis ----
void criterion_8() {
    bool pass = true;
    for (const char* kind : {"exponential", "normalized-power"}) {
        nlohmann::json cfg{
            {"name", std::string("raw-corona-") + kind},
            {"F", nlohmann::json::array({nlohmann::json::array({0.0, 1.0}),
                                         nlohmann::json::array({1.0, -1.0})})},
            {"f", nlohmann::json::array({1.0})},
            {"g", nlohmann::json::array({1.0})},
            {"psi", {{"kind", kind}}}};
        Scenario sc = scenario_from_json(cfg);
        RunOutcome out = run_scenario(sc, Command::validate);
        pass = pass && out.exit_code == kExitValidationFailure;
        pass = pass && !out.report["hypothesis"]["hypothesis_ok"].get<bool>();
        pass = pass && out.report["hypothesis"]["margin"].get<double>() < 0.0;
    }
    report(8, pass,
           "corona datum F=[z, 1-z], f=1 exits 3 with a negative hypothesis margin under both "
           "shipped psi kinds");
}

}  // namespace

int main() {
    std::printf("corona-lab acceptance suite (version %s)\n", version_string());
    Corpus c = load_corpus();
    std::printf("corpus: %zu validated scenarios, %zu expected-fail\n", c.valid.size(),
                c.fail_data.size());

    criterion_1();
    criterion_2(c);
    criterion_3(c);
    criterion_4(c);
    criterion_5(c);
    std::vector<std::vector<NormBoundRow>> tables;
    criterion_6(c, tables);
    criterion_7(c, tables);
    criterion_8();

    std::printf("%d of 8 criteria passed\n", 8 - g_failures);
    return g_failures;
}
