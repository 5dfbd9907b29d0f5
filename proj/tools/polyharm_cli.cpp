// polyharm: command-line front end for the polyharmonic-function toolkit.
//
// Subcommands: verify, decompose, critcurve, regions, integrate, kernelcheck,
// hyp2f1, norm. JSON goes to stdout (critcurve emits CSV); if --out is given
// the payload is also written there, else to $POLYHARM_OUT/<command> when the
// environment variable is set.
//
// Exit codes: 0 success, 2 domain error, 3 input error, 4 tolerance failure.

#include "polyharm/criticality.hpp"
#include "polyharm/kernels.hpp"
#include "polyharm/polynomial_json.hpp"
#include "polyharm/quadrature.hpp"
#include "polyharm/special.hpp"
#include "polyharm/structure.hpp"
#include "polyharm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using polyharm::Rational;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitInput = 3;
constexpr int kExitTolerance = 4;

struct OutputSink {
    std::optional<std::string> out_path;
    std::string default_name;

    void deliver(const std::string& payload) const {
        std::cout << payload << "\n";
        std::optional<std::string> path = out_path;
        if (!path) {
            if (const char* dir = std::getenv("POLYHARM_OUT")) {
                if (*dir) path = std::string(dir) + "/" + default_name;
            }
        }
        if (path) {
            std::ofstream os(*path);
            if (!os) throw std::runtime_error("cannot open output file: " + *path);
            os << payload << "\n";
        }
    }
};

std::string read_input_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream is(path);
    if (!is) throw polyharm::PolynomialFormatError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<unsigned> parse_dim_list(const std::string& text) {
    std::vector<unsigned> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = std::stoi(item);
        if (v < 2) throw CLI::ValidationError("--n-list entries must be >= 2");
        dims.push_back(unsigned(v));
    }
    if (dims.empty()) throw CLI::ValidationError("--n-list must not be empty");
    return dims;
}

Json rational_json(const Rational& q) {
    return Json{{"exact", polyharm::rational_to_string(q)}, {"value", polyharm::to_double(q)}};
}

int cmd_verify(std::uint64_t seed, const std::string& nlist, unsigned max_N, unsigned max_degree,
               unsigned cases, const OutputSink& sink) {
    polyharm::VerifyOptions opts;
    opts.seed = seed;
    opts.dims = parse_dim_list(nlist);
    opts.max_N = max_N;
    opts.max_degree = max_degree;
    opts.cases_per_suite = cases;
    polyharm::VerifyReport report = polyharm::run_verification(opts);

    Json j;
    j["command"] = "verify";
    j["options"] = {{"seed", opts.seed},
                    {"dims", opts.dims},
                    {"max_N", opts.max_N},
                    {"max_degree", opts.max_degree},
                    {"cases_per_suite", opts.cases_per_suite}};
    Json suites = Json::array();
    for (const auto& s : report.suites) {
        suites.push_back(Json{{"name", s.name},
                              {"cases", s.cases},
                              {"failures", s.failures},
                              {"notes", s.failure_notes}});
    }
    j["suites"] = std::move(suites);
    j["total_cases"] = report.total_cases();
    j["all_passed"] = report.all_passed();
    sink.deliver(j.dump(2));
    return report.all_passed() ? kExitOk : kExitTolerance;
}

int cmd_decompose(const std::string& in_path, unsigned N, const OutputSink& sink) {
    polyharm::ExactPolynomial u = polyharm::parse_polynomial_json(read_input_file(in_path));
    if (!polyharm::is_polyharmonic(u, N)) {
        Json j;
        j["command"] = "decompose";
        j["error"] = "input is not N-harmonic";
        j["N"] = N;
        j["laplacian_power"] =
            Json::parse(polyharm::emit_polynomial_json(polyharm::laplacian_power(u, N)));
        std::cout << j.dump(2) << "\n";
        return kExitDomain;
    }
    polyharm::CellularComponents cc = polyharm::cellular_decompose(u, N);

    bool round_trip = cc.reconstruct(u.dimension()) == u;
    Json annihilation = Json::array();
    bool all_annihilated = true;
    for (unsigned j = 0; j < N; ++j) {
        bool zero = polyharm::apply_L(int(N) - int(j) - 1, cc.components[j]).is_zero();
        all_annihilated = all_annihilated && zero;
        annihilation.push_back(zero ? "exact-zero" : "NONZERO");
    }

    Json j;
    j["command"] = "decompose";
    j["N"] = N;
    Json comps = Json::array();
    for (const auto& w : cc.components)
        comps.push_back(Json::parse(polyharm::emit_polynomial_json(w)));
    j["components"] = std::move(comps);
    j["verification"] = {{"round_trip", round_trip ? "exact-zero" : "NONZERO"},
                         {"annihilation", annihilation}};
    sink.deliver(j.dump(2));
    return (round_trip && all_annihilated) ? kExitOk : kExitTolerance;
}

int cmd_critcurve(unsigned n, unsigned N, const std::string& pmin, const std::string& pmax,
                  const std::string& step, const OutputSink& sink) {
    std::ostringstream os;
    polyharm::critcurve_csv(os, n, N, polyharm::parse_rational(pmin),
                            polyharm::parse_rational(pmax), polyharm::parse_rational(step));
    sink.deliver(os.str());
    return kExitOk;
}

int cmd_regions(unsigned n, unsigned N, const std::string& p_text, const std::string& alpha_text,
                const OutputSink& sink) {
    Rational p = polyharm::parse_rational(p_text);
    Rational alpha = polyharm::parse_rational(alpha_text);
    polyharm::Membership adm = polyharm::admissible(p, alpha, N, n);

    Json j;
    j["command"] = "regions";
    j["inputs"] = {{"n", n}, {"N", N}, {"p", p_text}, {"alpha", alpha_text}};
    j["admissible"] = polyharm::to_string(adm);
    Json b = Json::array(), a = Json::array();
    for (unsigned k = 0; k <= N; ++k) b.push_back(rational_json(polyharm::b_jN(k, N, p, n)));
    for (unsigned k = 1; k <= N; ++k) a.push_back(rational_json(polyharm::a_jN(k, N, p, n)));
    j["b"] = std::move(b);
    j["a"] = std::move(a);
    if (polyharm::p_in_validity_range(p, n)) {
        j["beta"] = rational_json(polyharm::beta_critical(N, p, n));
        j["principal_cell"] = polyharm::principal_cell(p, alpha, N, n);
    } else {
        j["beta"] = nullptr;
        j["principal_cell"] = nullptr;
    }
    if (adm == polyharm::Membership::member) {
        Json js = Json::array();
        for (unsigned k : polyharm::j_set(p, alpha, N, n)) js.push_back(k);
        j["J"] = std::move(js);
        j["entangled"] = n == 2 ? Json(polyharm::entangled_n2(p, alpha, N)) : Json(nullptr);
    } else {
        j["J"] = nullptr;
        j["entangled"] = nullptr;
    }
    sink.deliver(j.dump(2));
    return kExitOk;
}

int cmd_integrate(double a, double b, unsigned n, double tol, const OutputSink& sink) {
    polyharm::IabValue closed = polyharm::i_closed_form(a, b, n);
    Json j;
    j["command"] = "integrate";
    j["inputs"] = {{"a", a}, {"b", b}, {"n", n}, {"tol", tol}};
    if (!closed.finite) {
        j["closed_form"] = "divergent";
        j["numeric"] = nullptr;
        j["verdict"] = "divergent";
        sink.deliver(j.dump(2));
        return kExitOk;
    }
    double numeric = polyharm::i_numeric(a, b, n, tol);
    double rel = std::abs(numeric - closed.value) / std::abs(closed.value);
    bool ok = rel <= tol;
    j["closed_form"] = closed.value;
    j["numeric"] = numeric;
    j["rel_error"] = rel;
    j["verdict"] = ok ? "ok" : "tolerance_failure";
    sink.deliver(j.dump(2));
    return ok ? kExitOk : kExitTolerance;
}

int cmd_kernelcheck(const std::string& theta_text, unsigned n, unsigned points,
                    std::uint64_t seed, const OutputSink& sink) {
    double theta = polyharm::to_double(polyharm::parse_rational(theta_text));
    std::vector<double> e1 = polyharm::unit_vector(n);
    polyharm::KernelSpec spec(theta, e1);

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
    double worst = 0.0;
    unsigned accepted = 0;
    std::vector<double> x(n);
    while (accepted < points) {
        double norm_sq = 0.0;
        for (unsigned i = 0; i < n; ++i) {
            x[i] = 2.0 * uniform() - 1.0;
            norm_sq += x[i] * x[i];
        }
        if (norm_sq > 0.8 * 0.8) continue;
        double dist_sq = 0.0;
        for (unsigned i = 0; i < n; ++i) dist_sq += (x[i] - e1[i]) * (x[i] - e1[i]);
        if (dist_sq < 0.01) continue;
        ++accepted;
        polyharm::Jet2 jet = polyharm::poisson_kernel_jet(spec, x);
        double res = std::abs(polyharm::L_residual_from_jet(theta, jet, x)) /
                     (1.0 + std::abs(jet.value));
        worst = std::max(worst, res);
    }

    const double tol = 1e-8;
    Json j;
    j["command"] = "kernelcheck";
    j["inputs"] = {{"theta", theta_text}, {"n", n}, {"points", points}, {"seed", seed}};
    j["max_relative_residual"] = worst;
    j["tolerance"] = tol;
    j["verdict"] = worst <= tol ? "ok" : "tolerance_failure";
    sink.deliver(j.dump(2));
    return worst <= tol ? kExitOk : kExitTolerance;
}

int cmd_hyp2f1(double a, double b, double c, double z, double tol, const OutputSink& sink) {
    double v = polyharm::hyp2f1(a, b, c, z, tol);
    Json j;
    j["command"] = "hyp2f1";
    j["inputs"] = {{"a", a}, {"b", b}, {"c", c}, {"z", z}, {"tol", tol}};
    j["value"] = v;
    sink.deliver(j.dump(2));
    return kExitOk;
}

int cmd_norm(const std::string& in_path, const std::string& p_text, const std::string& alpha_text,
             unsigned levels, const OutputSink& sink) {
    polyharm::ExactPolynomial u = polyharm::parse_polynomial_json(read_input_file(in_path));
    const unsigned n = u.dimension();
    polyharm::WeightedNormRequest req;
    req.f = [&u](std::span<const double> x) { return u.eval_double(x); };
    req.p = polyharm::to_double(polyharm::parse_rational(p_text));
    req.alpha = polyharm::to_double(polyharm::parse_rational(alpha_text));
    req.levels = levels;
    polyharm::WeightedNormResult res = polyharm::weighted_norm(req, n);

    Json j;
    j["command"] = "norm";
    j["inputs"] = {{"p", p_text}, {"alpha", alpha_text}, {"levels", levels}, {"n", n}};
    j["radii"] = res.radii;
    j["truncated"] = res.truncated;
    j["annulus"] = res.annulus;
    j["verdict"] = polyharm::to_string(res.verdict);
    sink.deliver(j.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyharmonic-function toolkit"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the exact identity suites");
    std::uint64_t seed = 20240901;
    std::string nlist = "2,3,4";
    unsigned max_N = 4, max_degree = 6, cases = 60;
    std::string verify_out;
    verify->add_option("--seed", seed);
    verify->add_option("--n-list", nlist);
    verify->add_option("--max-N", max_N);
    verify->add_option("--max-degree", max_degree);
    verify->add_option("--cases", cases);
    verify->add_option("--out", verify_out);

    // decompose
    auto* decompose = app.add_subcommand("decompose", "cellular decomposition of a polynomial");
    std::string dec_in;
    unsigned dec_N = 1;
    std::string dec_out;
    decompose->add_option("--in", dec_in)->required();
    decompose->add_option("--N", dec_N)->required();
    decompose->add_option("--out", dec_out);

    // critcurve
    auto* critcurve = app.add_subcommand("critcurve", "critical curve CSV over a p range");
    unsigned cc_n = 3, cc_N = 2;
    std::string cc_pmin = "1/2", cc_pmax = "2", cc_step = "1/100", cc_out;
    critcurve->add_option("--n", cc_n);
    critcurve->add_option("--N", cc_N);
    critcurve->add_option("--p-min", cc_pmin);
    critcurve->add_option("--p-max", cc_pmax);
    critcurve->add_option("--step", cc_step);
    critcurve->add_option("--out", cc_out);

    // regions
    auto* regions = app.add_subcommand("regions", "region classification for (p, alpha)");
    unsigned rg_n = 3, rg_N = 2;
    std::string rg_p, rg_alpha, rg_out;
    regions->add_option("--n", rg_n);
    regions->add_option("--N", rg_N);
    regions->add_option("--p", rg_p)->required();
    regions->add_option("--alpha", rg_alpha)->required();
    regions->add_option("--out", rg_out);

    // integrate
    auto* integrate = app.add_subcommand("integrate", "ball integral I(a,b): closed form vs quadrature");
    double in_a = 0.0, in_b = -2.0, in_tol = 1e-6;
    unsigned in_n = 2;
    std::string in_out;
    integrate->add_option("--a", in_a);
    integrate->add_option("--b", in_b);
    integrate->add_option("--n", in_n);
    integrate->add_option("--tol", in_tol);
    integrate->add_option("--out", in_out);

    // kernelcheck
    auto* kernelcheck = app.add_subcommand("kernelcheck", "pointwise annihilation of the theta-Poisson kernel");
    std::string kc_theta = "0";
    unsigned kc_n = 3, kc_points = 100;
    std::uint64_t kc_seed = 7;
    std::string kc_out;
    kernelcheck->add_option("--theta", kc_theta);
    kernelcheck->add_option("--n", kc_n);
    kernelcheck->add_option("--points", kc_points);
    kernelcheck->add_option("--seed", kc_seed);
    kernelcheck->add_option("--out", kc_out);

    // hyp2f1
    auto* hyp = app.add_subcommand("hyp2f1", "Gauss hypergeometric series value");
    double h_a = 0, h_b = 0, h_c = 1, h_z = 0, h_tol = 1e-12;
    std::string h_out;
    hyp->add_option("--a", h_a)->required();
    hyp->add_option("--b", h_b)->required();
    hyp->add_option("--c", h_c)->required();
    hyp->add_option("--z", h_z)->required();
    hyp->add_option("--tol", h_tol);
    hyp->add_option("--out", h_out);

    // norm
    auto* norm = app.add_subcommand("norm", "weighted L^p norm truncations of a polynomial");
    std::string nm_in, nm_p = "1", nm_alpha = "0", nm_out;
    unsigned nm_levels = 14;
    norm->add_option("--in", nm_in)->required();
    norm->add_option("--p", nm_p);
    norm->add_option("--alpha", nm_alpha);
    norm->add_option("--levels", nm_levels);
    norm->add_option("--out", nm_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    auto sink = [](const std::string& out, const std::string& name) {
        OutputSink s;
        if (!out.empty()) s.out_path = out;
        s.default_name = name;
        return s;
    };

    try {
        if (*verify)
            return cmd_verify(seed, nlist, max_N, max_degree, cases, sink(verify_out, "verify.json"));
        if (*decompose) return cmd_decompose(dec_in, dec_N, sink(dec_out, "decompose.json"));
        if (*critcurve)
            return cmd_critcurve(cc_n, cc_N, cc_pmin, cc_pmax, cc_step, sink(cc_out, "critcurve.csv"));
        if (*regions) return cmd_regions(rg_n, rg_N, rg_p, rg_alpha, sink(rg_out, "regions.json"));
        if (*integrate) return cmd_integrate(in_a, in_b, in_n, in_tol, sink(in_out, "integrate.json"));
        if (*kernelcheck)
            return cmd_kernelcheck(kc_theta, kc_n, kc_points, kc_seed, sink(kc_out, "kernelcheck.json"));
        if (*hyp) return cmd_hyp2f1(h_a, h_b, h_c, h_z, h_tol, sink(h_out, "hyp2f1.json"));
        if (*norm) return cmd_norm(nm_in, nm_p, nm_alpha, nm_levels, sink(nm_out, "norm.json"));
    } catch (const polyharm::PolynomialFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTolerance;
    }
    return kExitInput;
}
