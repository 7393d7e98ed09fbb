#include "corona/scenario.hpp"

#include <cmath>

namespace corona {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex{j[0].get<double>(), j[1].get<double>()};
    }
    throw Error(Errc::config_error, "complex values are numbers or [re, im] pairs");
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (j.contains(key)) return j.at(key).get<T>();
    return fallback;
}

PsiSpec psi_from_json(const json& j) {
    const std::string kind = get_or<std::string>(j, "kind", "exponential");
    if (kind == "exponential") return PsiSpec::exponential();
    if (kind == "normalized-power") return PsiSpec::normalized_power(get_or(j, "epsilon", 1.0));
    if (kind == "table") {
        if (!j.contains("s") || !j.contains("values")) {
            throw Error(Errc::config_error, "table psi needs 's' and 'values' arrays");
        }
        return PsiSpec::table(j.at("s").get<std::vector<double>>(),
                              j.at("values").get<std::vector<double>>());
    }
    throw Error(Errc::config_error, "unknown psi kind: " + kind);
}

json psi_to_json(const PsiSpec& p) {
    json j;
    j["kind"] = p.kind_name();
    if (p.kind() == PsiSpec::Kind::normalized_power) j["epsilon"] = p.epsilon();
    if (p.kind() == PsiSpec::Kind::table) {
        j["s"] = p.knots();
        j["values"] = p.values();
    }
    return j;
}

}  // namespace

AnalyticPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(Errc::config_error, "polynomial must be a coefficient array");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(complex_from_json(c));
    return AnalyticPoly(std::move(coeffs));
}

nlohmann::json poly_to_json(const AnalyticPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(complex_to_json(c));
    return out;
}

Scenario scenario_from_json(const nlohmann::json& config) {
    try {
        Scenario s;
        s.name = get_or<std::string>(config, "name", "scenario");
        s.expect_fail = get_or<std::string>(config, "expect", "pass") == "fail";

        if (!config.contains("F") || !config.at("F").is_array() || config.at("F").empty()) {
            throw Error(Errc::config_error, "'F' must be a non-empty list of coefficient arrays");
        }
        std::vector<AnalyticPoly> entries;
        for (const auto& e : config.at("F")) entries.push_back(poly_from_json(e));
        s.F = PolyRow(std::move(entries));

        if (!config.contains("f")) throw Error(Errc::config_error, "missing 'f'");
        if (config.at("f").is_object()) {
            s.generator_power = config.at("f").at("power").get<int>();
            if (s.generator_power < 1) throw Error(Errc::config_error, "generator power must be >= 1");
            s.f = pow(entry_square_sum(s.F), s.generator_power);
        } else {
            s.f = poly_from_json(config.at("f"));
        }

        if (!config.contains("g")) throw Error(Errc::config_error, "missing 'g'");
        s.g = poly_from_json(config.at("g"));

        s.psi = config.contains("psi") ? psi_from_json(config.at("psi")) : PsiSpec::exponential();

        if (config.contains("grid")) {
            const auto& gj = config.at("grid");
            s.grid.radial = get_or(gj, "radial", s.grid.radial);
            s.grid.angular = get_or(gj, "angular", s.grid.angular);
            s.grid.boundary = get_or(gj, "boundary", s.grid.boundary);
        }
        if (config.contains("fd")) s.fd_step = get_or(config.at("fd"), "step", s.fd_step);
        if (config.contains("truncation")) {
            s.truncations = get_or(config.at("truncation"), "N", s.truncations);
        }
        if (config.contains("coanalytic")) {
            s.coanalytic_K = get_or(config.at("coanalytic"), "K", s.coanalytic_K);
        }
        s.epsilons = get_or(config, "epsilons", s.epsilons);
        if (config.contains("tolerances")) {
            const auto& tj = config.at("tolerances");
            s.tol.slack = get_or(tj, "slack", s.tol.slack);
            s.tol.solve = get_or(tj, "solve", s.tol.solve);
            s.tol.psd = get_or(tj, "psd", s.tol.psd);
            s.tol.oracle = get_or(tj, "oracle", s.tol.oracle);
            s.tol.identities = get_or(tj, "identities", s.tol.identities);
            s.tol.measure_laplace = get_or(tj, "measure_laplace", s.tol.measure_laplace);
            s.tol.delta_min = get_or(tj, "delta_min", s.tol.delta_min);
            s.tol.hypothesis = get_or(tj, "hypothesis", s.tol.hypothesis);
        }
        s.seed = get_or<std::uint64_t>(config, "seed", s.seed);
        if (config.contains("validation")) {
            s.validation_resolution = get_or(config.at("validation"), "resolution", 256);
        }

        // Self-contained echo: every knob resolved to its effective value.
        json r;
        r["name"] = s.name;
        r["expect"] = s.expect_fail ? "fail" : "pass";
        r["F"] = json::array();
        for (const auto& e : s.F.entries()) r["F"].push_back(poly_to_json(e));
        if (s.generator_power > 0) {
            r["f"] = json{{"power", s.generator_power}};
            r["f_resolved"] = poly_to_json(s.f);
        } else {
            r["f"] = poly_to_json(s.f);
        }
        r["g"] = poly_to_json(s.g);
        r["psi"] = psi_to_json(s.psi);
        r["grid"] = {{"radial", s.grid.radial}, {"angular", s.grid.angular}, {"boundary", s.grid.boundary}};
        r["fd"] = {{"step", s.fd_step}};
        r["truncation"] = {{"N", s.truncations}};
        r["coanalytic"] = {{"K", s.coanalytic_K}, {"basis", "canonical"}};
        r["epsilons"] = s.epsilons;
        r["tolerances"] = {{"slack", s.tol.slack},
                           {"solve", s.tol.solve},
                           {"psd", s.tol.psd},
                           {"oracle", s.tol.oracle},
                           {"identities", s.tol.identities},
                           {"measure_laplace", s.tol.measure_laplace},
                           {"delta_min", s.tol.delta_min},
                           {"hypothesis", s.tol.hypothesis}};
        r["seed"] = s.seed;
        r["validation"] = {{"resolution", s.validation_resolution}};
        s.resolved = std::move(r);
        return s;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::config_error, e.what());
    }
}

std::vector<Complex> scenario_f_zeros(const Scenario& s) {
    if (s.f.is_zero() || s.f.degree() == 0) return {};
    if (s.generator_power > 0) {
        // Zeros of (sum f_k^2)^m are the zeros of the base polynomial; those
        // are simple for the shipped families, so the companion eigenproblem
        // stays well conditioned.
        AnalyticPoly q = entry_square_sum(s.F);
        if (q.degree() < 1) return {};
        return find_zeros(q, 1.0);
    }
    return find_zeros(s.f, 1.0);
}

std::vector<nlohmann::json> corpus() {
    using nlohmann::json;
    std::vector<json> out;
    const double s17 = 4.0 / std::sqrt(17.0);  // normalizes [z, 1/4] to sup-norm 1
    const double s5 = 2.0 / std::sqrt(5.0);    // normalizes [z, 1/2] to sup-norm 1

    auto scenario = [](const char* name, json F, json f, json g, json psi) {
        return json{{"name", name}, {"F", std::move(F)}, {"f", std::move(f)},
                    {"g", std::move(g)}, {"psi", std::move(psi)}};
    };
    const json exp_psi{{"kind", "exponential"}};
    const json pow_psi{{"kind", "normalized-power"}, {"epsilon", 1.0}};
    const json g_one = json::array({1.0});
    const json g_half_z = json::array({1.0, 0.5});      // 1 + z/2
    const json g_avg = json::array({0.5, 0.5});         // (1 + z)/2

    out.push_back(scenario("trivial-f-zero", json::array({json::array({1.0})}),
                           json::array(), g_one, exp_psi));
    out.push_back(scenario("trivial-n1-const", json::array({json::array({1.0})}),
                           json{{"power", 2}}, g_one, exp_psi));
    out.push_back(scenario("n1-shifted-exp",
                           json::array({json::array({2.0 / 3.0, 1.0 / 3.0})}),
                           json{{"power", 2}}, g_avg, exp_psi));
    out.push_back(scenario("zc-quarter-m2-exp",
                           json::array({json::array({0.0, s17}), json::array({0.25 * s17})}),
                           json{{"power", 2}}, g_one, exp_psi));
    out.push_back(scenario("zc-half-m2-exp",
                           json::array({json::array({0.0, s5}), json::array({0.5 * s5})}),
                           json{{"power", 2}}, g_half_z, exp_psi));
    out.push_back(scenario("zc-quarter-m3-pow",
                           json::array({json::array({0.0, s17}), json::array({0.25 * s17})}),
                           json{{"power", 3}}, g_avg, pow_psi));
    out.push_back(scenario("zc-half-m3-pow",
                           json::array({json::array({0.0, s5}), json::array({0.5 * s5})}),
                           json{{"power", 3}}, g_one, pow_psi));
    out.push_back(scenario("row-quarter-m2-exp",
                           json::array({json::array({0.5, 0.25}), json::array({0.25})}),
                           json{{"power", 2}}, g_half_z, exp_psi));
    out.push_back(scenario("row-quarter-m3-pow",
                           json::array({json::array({0.5, 0.25}), json::array({0.25})}),
                           json{{"power", 3}}, g_avg, pow_psi));
    out.push_back(scenario("n3-m2-exp",
                           json::array({json::array({1.0 / 3.0, 1.0 / 6.0}),
                                        json::array({0.25, -0.125}), json::array({1.0 / 6.0})}),
                           json{{"power", 2}}, g_avg, exp_psi));
    out.push_back(scenario("n3-m3-pow",
                           json::array({json::array({1.0 / 3.0, 1.0 / 6.0}),
                                        json::array({0.25, -0.125}), json::array({1.0 / 6.0})}),
                           json{{"power", 3}}, g_one, pow_psi));

    json fail_exp = scenario("corona-datum-exp",
                             json::array({json::array({0.0, 1.0}), json::array({1.0, -1.0})}),
                             json::array({1.0}), g_one, exp_psi);
    fail_exp["expect"] = "fail";
    out.push_back(std::move(fail_exp));
    json fail_pow = scenario("corona-datum-pow",
                             json::array({json::array({0.0, 1.0}), json::array({1.0, -1.0})}),
                             json::array({1.0}), g_one, pow_psi);
    fail_pow["expect"] = "fail";
    out.push_back(std::move(fail_pow));
    return out;
}

}  // namespace corona
