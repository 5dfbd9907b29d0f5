// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Usage: acceptance <path-to-cli-binary>.

#include "polyharm/criticality.hpp"
#include "polyharm/kernels.hpp"
#include "polyharm/operators.hpp"
#include "polyharm/polynomial_json.hpp"
#include "polyharm/quadrature.hpp"
#include "polyharm/special.hpp"
#include "polyharm/structure.hpp"
#include "polyharm/verify.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace polyharm;
using Json = nlohmann::json;

namespace {

std::string g_cli;
int g_failures = 0;

void report(int index, const std::string& label, bool pass, const std::string& detail = "") {
    std::printf("[%s] %2d. %s%s%s\n", pass ? "PASS" : "FAIL", index, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {127, ""};
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    return {WEXITSTATUS(pclose(pipe)), out};
}

// Minimal structural JSON-schema check: type / required / properties / items.
bool matches_type(const Json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

bool validate_schema(const Json& value, const Json& schema, std::string& why) {
    if (schema.contains("type")) {
        const Json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = matches_type(value, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || matches_type(value, alt.get<std::string>());
        }
        if (!ok) {
            why = "type mismatch at value " + value.dump().substr(0, 40);
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    why = "missing required field " + key.get<std::string>();
                    return false;
                }
            }
        }
        if (schema.contains("properties")) {
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
                if (value.contains(it.key()) && !validate_schema(value[it.key()], it.value(), why))
                    return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (const auto& el : value)
            if (!validate_schema(el, schema["items"], why)) return false;
    }
    return true;
}

bool validate_against_file(const Json& value, const std::string& schema_path, std::string& why) {
    std::ifstream is(schema_path);
    if (!is) {
        why = "cannot open schema " + schema_path;
        return false;
    }
    Json schema = Json::parse(is);
    return validate_schema(value, schema, why);
}

std::vector<double> seeded_interior_point(std::mt19937_64& rng, unsigned n) {
    auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
    std::vector<double> x(n);
    while (true) {
        double ns = 0;
        for (unsigned i = 0; i < n; ++i) {
            x[i] = 2.0 * uniform() - 1.0;
            ns += x[i] * x[i];
        }
        if (ns > 0.64) continue;
        double d = (x[0] - 1.0) * (x[0] - 1.0);
        for (unsigned i = 1; i < n; ++i) d += x[i] * x[i];
        if (d < 0.01) continue;
        return x;
    }
}

// --------------------------------------------------------------------------

void criterion_1_identities() {
    auto t0 = std::chrono::steady_clock::now();
    VerifyOptions opts;
    opts.cases_per_suite = 60;  // 240 identity cases across the four suites
    VerifyReport rep = run_verification(opts);
    unsigned identity_cases = 0, identity_failures = 0;
    for (const auto& s : rep.suites) {
        if (s.name == "correspondence" || s.name == "commutation" ||
            s.name == "factorization" || s.name == "iterated_identity") {
            identity_cases += s.cases;
            identity_failures += s.failures;
        }
    }
    double secs = seconds_since(t0);
    bool pass = identity_cases >= 200 && identity_failures == 0 && secs <= 60.0;
    std::ostringstream d;
    d << identity_cases << " cases, " << identity_failures << " failures, "
      << std::fixed << secs << "s";
    report(1, "exact identity suite (correspondence, commutation, factorization, iterated)",
           pass, d.str());
}

void criterion_2_cellular() {
    VerifyOptions opts;
    opts.cases_per_suite = 100;
    VerifyReport rep = run_verification(opts);
    unsigned failures = 1, cases = 0;
    for (const auto& s : rep.suites) {
        if (s.name == "cellular_round_trip") {
            failures = s.failures;
            cases = s.cases;
        }
    }
    // worked case: n=3, N=2, u=1
    ExactPolynomial one = ExactPolynomial::constant(3, 1);
    CellularComponents cc = cellular_decompose(one, 2);
    ExactPolynomial w0 = one - ExactPolynomial::one_minus_norm_sq(3) * Rational(1, 4);
    bool worked = cc.components[0] == w0 &&
                  cc.components[1] == ExactPolynomial::constant(3, Rational(1, 4));
    bool pass = cases >= 100 && failures == 0 && worked;
    std::ostringstream d;
    d << cases << " round trips, " << failures << " failures, worked case "
      << (worked ? "ok" : "WRONG");
    report(2, "cellular decomposition round trip, idempotence, worked case", pass, d.str());
}

void criterion_3_iab() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = true;
    for (unsigned n : {2u, 3u}) {
        for (double a : {0.0, 1.0, 1.5, 3.0}) {
            for (double b : {-1.0, -2.0, -2.5}) {
                IabValue cf = i_closed_form(a, b, n);
                if (!cf.finite) {
                    ok = false;
                    continue;
                }
                double num = i_numeric(a, b, n, 1e-6);
                worst = std::max(worst, std::abs(num - cf.value) / std::abs(cf.value));
            }
        }
    }
    bool divergence_ok = !i_closed_form(-1.0, -2.0, 2).finite &&
                         !i_closed_form(0.5, 0.0, 3).finite &&
                         !i_closed_form(-1.5, -1.0, 2).finite;
    double secs = seconds_since(t0);
    bool pass = ok && worst <= 1e-6 && divergence_ok && secs <= 30.0;
    std::ostringstream d;
    d << "max rel err " << std::scientific << worst << ", " << std::fixed << secs << "s";
    report(3, "ball integral I(a,b): quadrature vs closed form + divergence verdicts",
           pass, d.str());
}

void criterion_4_critical_curve() {
    bool pass = true;
    std::string why;
    try {
        for (unsigned n : {3u, 4u, 5u}) {
            Rational threshold = critical_p_threshold(n);
            for (unsigned N = 1; N <= 5; ++N) {
                for (Rational p = threshold; p <= 5; p += Rational(1, 100)) {
                    Rational mn = beta_critical(N, p, n);  // internal piecewise assert
                    if (mn != beta_critical_piecewise(N, p, n)) {
                        pass = false;
                        why = "piecewise mismatch";
                    }
                    Rational min_a = a_jN(1, N, p, n);
                    for (unsigned j = 2; j <= N; ++j) min_a = std::min(min_a, a_jN(j, N, p, n));
                    if (min_a != mn) {
                        pass = false;
                        why = "min_j a != min_j b";
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        pass = false;
        why = e.what();
    }
    report(4, "critical curve: min formula == piecewise form, min a == min b (exact grid)",
           pass, why);
}

void criterion_5_kernel_annihilation() {
    std::mt19937_64 rng(424242);
    double worst = 0.0;
    for (double theta : {0.0, 0.5, 1.0, 2.0}) {
        for (unsigned n : {2u, 3u}) {
            KernelSpec spec(theta, unit_vector(n));
            for (int it = 0; it < 100; ++it) {
                std::vector<double> x = seeded_interior_point(rng, n);
                Jet2 jet = poisson_kernel_jet(spec, x);
                worst = std::max(worst, std::abs(L_residual_from_jet(theta, jet, x)) /
                                            (1.0 + std::abs(jet.value)));
            }
        }
    }
    bool exact_ok = true;
    for (unsigned th = 0; th <= 5 && exact_ok; ++th)
        for (unsigned n : {2u, 3u, 4u})
            exact_ok = exact_ok && apply_L(int(th), phi_theta_polynomial(Rational(th), n)).is_zero();

    double worst_phi = 0.0;
    for (const char* th : {"1/2", "3/2"}) {
        Rational theta = parse_rational(th);
        PhiTheta phi = phi_theta(theta, 3);
        JetField field = radial_profile_field(phi.profile);
        for (int it = 0; it < 100; ++it) {
            std::vector<double> x = seeded_interior_point(rng, 3);
            Jet2 jet = field(x);
            worst_phi = std::max(worst_phi, std::abs(L_residual_from_jet(to_double(theta), jet, x)) /
                                                (1.0 + std::abs(jet.value)));
        }
    }
    bool pass = worst <= 1e-8 && exact_ok && worst_phi <= 1e-8;
    std::ostringstream d;
    d << "kernel max " << std::scientific << worst << ", phi exact "
      << (exact_ok ? "zero" : "NONZERO") << ", phi numeric max " << worst_phi;
    report(5, "kernel and radial-profile annihilation by L_theta", pass, d.str());
}

void criterion_6_boundedness() {
    // successive suprema of Phi_{-1/4} on nested grids r^2 in [0, 1-10^-j]
    PhiTheta bounded = phi_theta(Rational(-1, 4), 3);
    std::vector<double> sups;
    for (int j = 2; j <= 6; ++j) {
        double tmax = 1.0 - std::pow(10.0, -double(j));
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double t = tmax * double(i) / 200.0;
            sup = std::max(sup, std::abs(bounded.profile.value(t)));
        }
        sups.push_back(sup);
    }
    size_t m = sups.size();
    bool stabilized = std::abs(sups[m - 1] - sups[m - 2]) <= 0.01 * sups[m - 2];

    PhiTheta unbounded = phi_theta(Rational(-3, 4), 3);
    bool exceeds = false;
    for (int i = 0; i <= 400 && !exceeds; ++i) {
        double t = (1.0 - 1e-6) * double(i) / 400.0;
        exceeds = std::abs(unbounded.profile.value(t)) > 1e3;
    }

    bool slopes_ok = true;
    for (double theta : {-0.25, 0.25, 0.75}) {
        double a = -theta, b = 0.5 * 3 - 1.0 - theta, c = 0.5 * 3;
        double ck = 1.0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m2 = 0;
        for (unsigned k = 0; k <= 10000; ++k) {
            if (k >= 100 && ck != 0.0) {
                double xl = std::log(double(k)), yl = std::log(std::abs(ck));
                sx += xl; sy += yl; sxx += xl * xl; sxy += xl * yl;
                ++m2;
            }
            ck *= (a + k) * (b + k) / ((c + k) * (1.0 + k));
        }
        double slope = (m2 * sxy - sx * sy) / (m2 * sxx - sx * sx);
        if (std::abs(slope - (-2.0 * theta - 2.0)) > 0.15) slopes_ok = false;
    }

    bool pass = stabilized && exceeds && slopes_ok;
    std::ostringstream d;
    d << "sup stabilized " << (stabilized ? "yes" : "NO") << " (" << sups[m - 2] << " -> "
      << sups[m - 1] << "), unbounded exceeds 1e3 " << (exceeds ? "yes" : "NO")
      << ", slopes " << (slopes_ok ? "ok" : "BAD");
    report(6, "radial profile boundedness dichotomy and coefficient decay", pass, d.str());
}

void criterion_7_sphere_formula() {
    const unsigned n = 3;
    QuadratureRule sph = sphere_rule(n, 48);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        for (double r : {0.0, 0.3, 0.7}) {
            std::vector<double> y = {r, 0.0, 0.0};
            double quad = integrate(sph, [&](std::span<const double> zeta) {
                double d2 = 0;
                for (unsigned i = 0; i < n; ++i) d2 += (y[i] - zeta[i]) * (y[i] - zeta[i]);
                return std::pow(d2, -t);
            });
            double ref = hyp2f1(t, t - 0.5 * n + 1.0, 0.5 * n, r * r);
            worst = std::max(worst, std::abs(quad - ref) / std::abs(ref));
        }
    }
    std::ostringstream d;
    d << "max rel err " << std::scientific << worst;
    report(7, "sphere integral formula vs hypergeometric value", worst <= 1e-8, d.str());
}

void criterion_8_membership_boundary() {
    const unsigned n = 3;
    auto u12 = [](std::span<const double> x) {
        std::vector<double> pt(x.begin(), x.end());
        return u_jn(1, 2, pt);
    };
    WeightedNormRequest req;
    req.f = u12;
    req.p = 1.0;
    req.levels = 14;
    req.alpha = -1.7;
    Verdict above = weighted_norm(req, n).verdict;
    req.alpha = -2.3;
    Verdict below = weighted_norm(req, n).verdict;

    bool beta_ok = true;
    double worst_beta = 0.0;
    for (unsigned N : {1u, 2u, 3u}) {
        auto f = [N](std::span<const double> x) {
            double ns = 0;
            for (double v : x) ns += v * v;
            return std::pow(1.0 - ns, double(N) - 1.0);
        };
        BetaEstimate est = estimate_beta_p(f, 1.0, n);
        double err = std::abs(est.beta - (-1.0 - double(N - 1)));
        worst_beta = std::max(worst_beta, err);
        if (err > 0.05) beta_ok = false;
    }
    bool pass = above == Verdict::convergent && below == Verdict::divergent && beta_ok;
    std::ostringstream d;
    d << "alpha=b+0.3: " << to_string(above) << ", alpha=b-0.3: " << to_string(below)
      << ", beta_p max err " << worst_beta;
    report(8, "membership boundary verdicts and beta_p estimator", pass, d.str());
}

void criterion_9_gauss_summation() {
    struct T { double a, b, c; };
    double worst = 0.0;
    for (const auto& t : {T{0.3, 0.4, 2.0}, T{0.5, 0.5, 2.5}, T{-0.3, 0.7, 1.5}}) {
        double series = hyp2f1(t.a, t.b, t.c, 1.0 - 1e-6, 1e-10);
        double gauss = gauss_value(t.a, t.b, t.c);
        worst = std::max(worst, std::abs(series - gauss) / std::abs(gauss));
    }
    std::ostringstream d;
    d << "max rel diff " << std::scientific << worst;
    report(9, "Gauss summation vs series near z = 1 (three triples, c-a-b >= 0.5)",
           worst <= 1e-4, d.str());
}

void criterion_10_cli() {
    const std::string schemas = std::string(POLYHARM_SOURCE_DIR) + "/schemas/";
    bool pass = true;
    std::string why;

    RunResult v1 = run_cli("verify --cases 5");
    RunResult v2 = run_cli("verify --cases 5");
    if (v1.exit_code != 0) { pass = false; why = "verify exit " + std::to_string(v1.exit_code); }
    if (v1.output != v2.output) { pass = false; why = "verify rerun not byte-identical"; }

    auto check_schema = [&](const std::string& args, const std::string& schema) {
        if (!pass) return;
        RunResult r = run_cli(args);
        if (r.exit_code != 0) {
            pass = false;
            why = schema + " exit " + std::to_string(r.exit_code);
            return;
        }
        std::string detail;
        Json parsed;
        try {
            parsed = Json::parse(r.output);
        } catch (const std::exception& e) {
            pass = false;
            why = schema + " output not JSON";
            return;
        }
        if (!validate_against_file(parsed, schemas + schema + ".schema.json", detail)) {
            pass = false;
            why = schema + ": " + detail;
        }
    };

    if (pass) {
        Json vj = Json::parse(v1.output);
        std::string detail;
        if (!validate_against_file(vj, schemas + "verify.schema.json", detail)) {
            pass = false;
            why = "verify: " + detail;
        }
    }

    std::ofstream poly("/tmp/polyharm_acceptance_poly.json");
    poly << R"({"n":3,"terms":[{"exps":[0,0,0],"num":1,"den":1}]})";
    poly.close();

    check_schema("decompose --in /tmp/polyharm_acceptance_poly.json --N 2", "decompose");
    check_schema("regions --n 3 --N 2 --p 1 --alpha -1.5", "regions");
    check_schema("integrate --a 0 --b -2 --n 2 --tol 1e-6", "integrate");
    check_schema("kernelcheck --theta 1 --n 3 --points 25 --seed 11", "kernelcheck");
    check_schema("hyp2f1 --a 1 --b 1 --c 2 --z 0.5", "hyp2f1");
    check_schema("norm --in /tmp/polyharm_acceptance_poly.json --p 1 --alpha 0 --levels 8",
                 "norm");

    if (pass) {
        RunResult csv = run_cli("critcurve --n 3 --N 2 --p-min 2/3 --p-max 2 --step 1/10");
        if (csv.exit_code != 0 || csv.output.rfind("p,b_0,b_1,b_2,a_1,a_2,beta,status", 0) != 0) {
            pass = false;
            why = "critcurve CSV header";
        }
    }
    report(10, "CLI: schema round trips, verify exit 0, byte-identical reruns", pass, why);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 64;
    }
    g_cli = argv[1];

    criterion_1_identities();
    criterion_2_cellular();
    criterion_3_iab();
    criterion_4_critical_curve();
    criterion_5_kernel_annihilation();
    criterion_6_boundedness();
    criterion_7_sphere_formula();
    criterion_8_membership_boundary();
    criterion_9_gauss_summation();
    criterion_10_cli();

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures;
}
