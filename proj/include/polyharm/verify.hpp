#pragma once

// Seeded exact verification suites over random inputs: the operator identity
// residuals (correspondence, commutation, factorization, iterated), the
// cellular decomposition round trip with idempotence, and the Almansi round
// trip. Every check is exact rational algebra; a suite fails only if some
// residual is a nonzero polynomial.

#include "polyharm/operators.hpp"
#include "polyharm/structure.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polyharm {

struct VerifyOptions {
    std::uint64_t seed = 20240901;
    std::vector<unsigned> dims = {2, 3, 4};
    unsigned max_N = 4;
    unsigned max_degree = 6;
    unsigned cases_per_suite = 60;
};

struct SuiteResult {
    std::string name;
    unsigned cases = 0;
    unsigned failures = 0;
    std::vector<std::string> failure_notes;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<SuiteResult> suites;

    bool all_passed() const {
        for (const auto& s : suites)
            if (s.failures) return false;
        return true;
    }
    unsigned total_cases() const {
        unsigned t = 0;
        for (const auto& s : suites) t += s.cases;
        return t;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline const std::vector<Rational>& theta_samples() {
    static const std::vector<Rational> thetas = {
        Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
        Rational(1),  Rational(3, 2),  Rational(2)};
    return thetas;
}

/// A polynomial solution of L_theta[u] = 0 for integer theta >= 0: for a
/// harmonic homogeneous h of degree m, h multiplied by the terminating series
/// sum_k (-theta)_k (n/2+m-1-theta)_k / ((n/2+m)_k k!) |x|^(2k) is annihilated
/// by L_theta. This supplies iterated-identity inputs independent of the
/// cellular decomposition.
inline ExactPolynomial l_annihilated_sample(unsigned n, unsigned theta, unsigned max_degree,
                                            std::mt19937_64& rng) {
    ExactPolynomial h = detail::random_harmonic(n, max_degree, rng);
    ExactPolynomial out(n);
    for (int m = 0; m <= h.degree(); ++m) {
        ExactPolynomial hm = h.homogeneous_part(unsigned(m));
        if (hm.is_zero()) continue;
        Rational a = -int(theta);
        Rational b = Rational(int(n), 2) + m - 1 - int(theta);
        Rational c = Rational(int(n), 2) + m;
        std::vector<Rational> coeffs(theta + 1);
        Rational term = 1;
        coeffs[0] = 1;
        for (unsigned k = 0; k < theta; ++k) {
            term *= (a + int(k)) * (b + int(k)) / ((c + int(k)) * (1 + int(k)));
            coeffs[k + 1] = term;
        }
        out += substitute_norm_sq(coeffs, n) * hm;
    }
    return out;
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& opts) {
    VerifyReport report;
    report.options = opts;

    auto pick = [](std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; };
    auto pick_dim = [&](std::mt19937_64& rng) {
        return opts.dims[size_t(pick(rng, opts.dims.size()))];
    };
    auto note = [](SuiteResult& s, const std::string& text) {
        if (s.failure_notes.size() < 8) s.failure_notes.push_back(text);
        ++s.failures;
    };

    {
        SuiteResult s;
        s.name = "correspondence";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::mt19937_64 rng(detail::splitmix64(opts.seed ^ (0x10000 + k)));
            unsigned n = pick_dim(rng);
            Rational theta = detail::theta_samples()[size_t(pick(rng, detail::theta_samples().size()))];
            unsigned lambda = 1 + unsigned(pick(rng, 3));
            ExactPolynomial u = detail::random_polynomial(n, opts.max_degree, rng);
            ++s.cases;
            if (!correspondence_residual(theta, lambda, u).is_zero())
                note(s, "case " + std::to_string(k) + ": nonzero residual");
        }
        report.suites.push_back(std::move(s));
    }

    {
        SuiteResult s;
        s.name = "commutation";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::mt19937_64 rng(detail::splitmix64(opts.seed ^ (0x20000 + k)));
            unsigned n = pick_dim(rng);
            Rational theta = detail::theta_samples()[size_t(pick(rng, detail::theta_samples().size()))];
            unsigned j = 1 + unsigned(pick(rng, 3));
            ExactPolynomial u = detail::random_polynomial(n, opts.max_degree, rng);
            ++s.cases;
            if (!commutation_residual(theta, j, u).is_zero())
                note(s, "case " + std::to_string(k) + ": nonzero residual");
        }
        report.suites.push_back(std::move(s));
    }

    {
        SuiteResult s;
        s.name = "factorization";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::mt19937_64 rng(detail::splitmix64(opts.seed ^ (0x30000 + k)));
            unsigned n = pick_dim(rng);
            unsigned N = 1 + unsigned(pick(rng, opts.max_N));
            ExactPolynomial u = detail::random_polynomial(n, opts.max_degree, rng);
            ++s.cases;
            if (!factorization_residual(N, u).is_zero())
                note(s, "case " + std::to_string(k) + ": nonzero residual");
        }
        report.suites.push_back(std::move(s));
    }

    {
        SuiteResult s;
        s.name = "iterated_identity";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::mt19937_64 rng(detail::splitmix64(opts.seed ^ (0x40000 + k)));
            unsigned n = pick_dim(rng);
            unsigned N = 1 + unsigned(pick(rng, opts.max_N));
            unsigned j = unsigned(pick(rng, N));
            unsigned kk = 1 + unsigned(pick(rng, N));
            unsigned theta = N - j - 1;
            ExactPolynomial u = detail::l_annihilated_sample(n, theta, opts.max_degree, rng);
            ++s.cases;
            if (!apply_L(int(theta), u).is_zero()) {
                note(s, "case " + std::to_string(k) + ": sample not annihilated");
                continue;
            }
            if (!iterated_identity_residual(N, j, kk, u).is_zero())
                note(s, "case " + std::to_string(k) + ": nonzero residual");
        }
        report.suites.push_back(std::move(s));
    }

    {
        SuiteResult s;
        s.name = "cellular_round_trip";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::uint64_t sub = detail::splitmix64(opts.seed ^ (0x50000 + k));
            std::mt19937_64 rng(sub);
            unsigned n = pick_dim(rng);
            unsigned N = 1 + unsigned(pick(rng, opts.max_N));
            unsigned deg = opts.max_degree >= 2 * (N - 1) ? opts.max_degree - 2 * (N - 1) : 0;
            ExactPolynomial u = random_polyharmonic(n, N, deg, sub);
            ++s.cases;
            CellularComponents cc = cellular_decompose(u, N);
            bool ok = cc.reconstruct(n) == u;
            for (unsigned j = 0; ok && j < N; ++j)
                ok = apply_L(int(N) - int(j) - 1, cc.components[j]).is_zero();
            // idempotence: each reconstructed term decomposes back to itself
            for (unsigned j = 0; ok && j < N; ++j) {
                CellularComponents again = cellular_decompose(m_power(cc.components[j], j), N);
                for (unsigned i = 0; ok && i < N; ++i) {
                    if (i == j)
                        ok = again.components[i] == cc.components[j];
                    else
                        ok = again.components[i].is_zero();
                }
            }
            if (!ok) note(s, "case " + std::to_string(k) + ": round trip failed");
        }
        report.suites.push_back(std::move(s));
    }

    {
        SuiteResult s;
        s.name = "almansi_round_trip";
        for (unsigned k = 0; k < opts.cases_per_suite; ++k) {
            std::uint64_t sub = detail::splitmix64(opts.seed ^ (0x60000 + k));
            std::mt19937_64 rng(sub);
            unsigned n = pick_dim(rng);
            unsigned N = 1 + unsigned(pick(rng, opts.max_N));
            unsigned deg = opts.max_degree >= 2 * (N - 1) ? opts.max_degree - 2 * (N - 1) : 0;
            ExactPolynomial u = random_polyharmonic(n, N, deg, sub);
            ++s.cases;
            AlmansiForm form = almansi(u, N);
            bool ok = form.reconstruct(n) == u;
            for (const auto& comp : form.components)
                if (ok) ok = laplacian(comp).is_zero();
            std::vector<ExactPolynomial> v = almansi_rearranged(u, N);
            ExactPolynomial rec(n);
            for (unsigned j = 0; j < N; ++j) rec += m_power(v[j], j);
            if (ok) ok = rec == u;
            for (const auto& comp : v)
                if (ok) ok = laplacian(comp).is_zero();
            if (!ok) note(s, "case " + std::to_string(k) + ": round trip failed");
        }
        report.suites.push_back(std::move(s));
    }

    return report;
}

}  // namespace polyharm
