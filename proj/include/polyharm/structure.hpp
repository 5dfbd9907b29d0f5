#pragma once

// Structure theory for polyharmonic polynomials: harmonic decomposition of
// homogeneous polynomials, the Almansi representation and its boundary-adapted
// rearrangement, the cellular decomposition, and a seeded generator of random
// N-harmonic polynomials for property tests.

#include "polyharm/operators.hpp"
#include "polyharm/polynomial.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace polyharm {

inline bool is_polyharmonic(const ExactPolynomial& u, unsigned N) {
    if (N < 1) throw std::invalid_argument("is_polyharmonic: N must be >= 1");
    return laplacian_power(u, N).is_zero();
}

namespace detail {

// Delta(|x|^{2j} h) = 2j (2 deg h + n + 2j - 2) |x|^{2(j-1)} h for harmonic
// homogeneous h. Iterating gives the constant in Delta^i(|x|^{2j} h).
inline Rational radial_shift_constant(unsigned i, unsigned j, unsigned deg_h, unsigned n) {
    Rational c = 1;
    for (unsigned l = 0; l < i; ++l) {
        unsigned jj = j - l;
        c *= 2 * int(jj) * (2 * int(deg_h) + int(n) + 2 * int(jj) - 2);
    }
    return c;
}

}  // namespace detail

/// Unique splitting q = sum_j |x|^{2j} h_j of a homogeneous q, each h_j
/// harmonic homogeneous of degree deg(q) - 2j. Solved exactly by a triangular
/// elimination in the h_j: applying Delta^i to the splitting leaves only
/// j >= i terms with explicit rational constants, so h_K, ..., h_0 peel off
/// from the top. The result is re-verified exactly before returning.
inline std::vector<ExactPolynomial> harmonic_decomposition(const ExactPolynomial& q) {
    const unsigned n = q.dimension();
    if (!q.is_homogeneous())
        throw std::invalid_argument("harmonic_decomposition: input must be homogeneous");
    if (q.is_zero()) return {};

    const unsigned m = unsigned(q.degree());
    const unsigned K = m / 2;

    std::vector<ExactPolynomial> lap(K + 1, ExactPolynomial(n));
    lap[0] = q;
    for (unsigned i = 1; i <= K; ++i) lap[i] = laplacian(lap[i - 1]);

    std::vector<ExactPolynomial> h(K + 1, ExactPolynomial(n));
    const ExactPolynomial ns = ExactPolynomial::norm_sq(n);
    for (int i = int(K); i >= 0; --i) {
        // Delta^i q = sum_{j >= i} c(i,j) |x|^{2(j-i)} h_j with c(i,i) > 0.
        ExactPolynomial rhs = lap[i];
        ExactPolynomial ns_pow = ExactPolynomial::constant(n, 1);
        for (unsigned j = unsigned(i) + 1; j <= K; ++j) {
            ns_pow = ns_pow * ns;
            rhs -= ns_pow * h[j] * detail::radial_shift_constant(i, j, m - 2 * j, n);
        }
        Rational c = detail::radial_shift_constant(i, i, m - 2 * i, n);
        h[i] = rhs * (1 / c);
    }

    ExactPolynomial check(n);
    ExactPolynomial ns_pow = ExactPolynomial::constant(n, 1);
    for (unsigned j = 0; j <= K; ++j) {
        if (j > 0) ns_pow = ns_pow * ns;
        if (!laplacian(h[j]).is_zero())
            throw std::logic_error("harmonic_decomposition: component not harmonic");
        check += ns_pow * h[j];
    }
    if (!(check == q)) throw std::logic_error("harmonic_decomposition: reconstruction failed");
    return h;
}

/// Almansi representation u = sum_k |x|^{2k} u_k with u_k harmonic,
/// k = 0, ..., N-1. Exact and unique.
struct AlmansiForm {
    unsigned order;
    std::vector<ExactPolynomial> components;

    ExactPolynomial reconstruct(unsigned n) const {
        ExactPolynomial r(n);
        const ExactPolynomial ns = ExactPolynomial::norm_sq(n);
        ExactPolynomial ns_pow = ExactPolynomial::constant(n, 1);
        for (unsigned k = 0; k < components.size(); ++k) {
            if (k > 0) ns_pow = ns_pow * ns;
            r += ns_pow * components[k];
        }
        return r;
    }
};

inline AlmansiForm almansi(const ExactPolynomial& u, unsigned N) {
    const unsigned n = u.dimension();
    if (!is_polyharmonic(u, N)) throw std::invalid_argument("almansi: input is not N-harmonic");

    AlmansiForm form{N, std::vector<ExactPolynomial>(N, ExactPolynomial(n))};
    // Each homogeneous part of an N-harmonic polynomial is itself N-harmonic,
    // so its harmonic decomposition stops before index N.
    for (int d = 0; d <= u.degree(); ++d) {
        ExactPolynomial part = u.homogeneous_part(unsigned(d));
        if (part.is_zero()) continue;
        auto h = harmonic_decomposition(part);
        for (unsigned j = 0; j < h.size(); ++j) {
            if (h[j].is_zero()) continue;
            if (j >= N) throw std::logic_error("almansi: decomposition exceeds order");
            form.components[j] += h[j];
        }
    }
    return form;
}

/// The rearranged representation u = sum_j (1-|x|^2)^j v_j with
/// v_j = (-1)^j sum_{k=j}^{N-1} C(k,j) u_k, each v_j harmonic.
inline std::vector<ExactPolynomial> almansi_rearranged(const ExactPolynomial& u, unsigned N) {
    AlmansiForm form = almansi(u, N);
    std::vector<ExactPolynomial> v(N, ExactPolynomial(u.dimension()));
    for (unsigned j = 0; j < N; ++j) {
        for (unsigned k = j; k < N; ++k)
            v[j] += form.components[k] * binomial_rational(k, j);
        if (j % 2 == 1) v[j] = -v[j];
    }
    return v;
}

/// Cellular components (w_0, ..., w_{N-1}): u = sum_j M^j[w_j] with
/// L_{N-j-1}[w_j] = 0 for each j. Unique.
struct CellularComponents {
    unsigned order;
    std::vector<ExactPolynomial> components;

    ExactPolynomial reconstruct(unsigned n) const {
        ExactPolynomial r(n);
        for (unsigned j = 0; j < components.size(); ++j) r += m_power(components[j], j);
        return r;
    }
};

/// Decomposes an N-harmonic polynomial by the inductive scheme: for N > 1 put
/// g = L_{N-1}[u], decompose g at order N-1 into (v_0, ..., v_{N-2}), then
///   V   = (1/4) sum_j M^{j+1}[v_j] / ((j+1)(2(N-1)-j)),
///   w_0 = u + V,
///   w_j = -v_{j-1} / (4j(2(N-1)-j+1)),  j = 1, ..., N-1.
inline CellularComponents cellular_decompose(const ExactPolynomial& u, unsigned N) {
    const unsigned n = u.dimension();
    if (!is_polyharmonic(u, N))
        throw std::invalid_argument("cellular_decompose: input is not N-harmonic");

    if (N == 1) return CellularComponents{1, {u}};

    const int N0 = int(N) - 1;
    ExactPolynomial g = apply_L(N0, u);
    CellularComponents inner = cellular_decompose(g, N - 1);

    ExactPolynomial V(n);
    for (unsigned j = 0; j + 1 < N; ++j) {
        Rational c = Rational(1) / (4 * int(j + 1) * (2 * N0 - int(j)));
        V += m_power(inner.components[j], j + 1) * c;
    }

    CellularComponents out{N, std::vector<ExactPolynomial>(N, ExactPolynomial(n))};
    out.components[0] = u + V;
    for (unsigned j = 1; j < N; ++j) {
        Rational c = Rational(-1) / (4 * int(j) * (2 * N0 - int(j) + 1));
        out.components[j] = inner.components[j - 1] * c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded random polyharmonic polynomials. All randomness is reduced from raw
// mt19937_64 draws so the output stream is identical across platforms.

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;  // bias irrelevant for test-data generation
}

inline ExactPolynomial random_polynomial(unsigned n, unsigned max_degree, std::mt19937_64& rng) {
    ExactPolynomial p(n);
    unsigned terms = 2 + unsigned(draw(rng, 4 + 2ull * max_degree));
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m(n, 0u);
        unsigned budget = unsigned(draw(rng, max_degree + 1));
        for (unsigned i = 0; i < n && budget > 0; ++i) {
            unsigned e = unsigned(draw(rng, budget + 1));
            m[i] = e;
            budget -= e;
        }
        long long num = (long long)(draw(rng, 19)) - 9;
        p.add_term(m, Rational(num));
    }
    return p;
}

/// A random harmonic polynomial of degree <= max_degree: the leading harmonic
/// component of each homogeneous part of a random polynomial.
inline ExactPolynomial random_harmonic(unsigned n, unsigned max_degree, std::mt19937_64& rng) {
    ExactPolynomial p = random_polynomial(n, max_degree, rng);
    ExactPolynomial h(n);
    for (int d = 0; d <= p.degree(); ++d) {
        ExactPolynomial part = p.homogeneous_part(unsigned(d));
        if (part.is_zero()) continue;
        auto comps = harmonic_decomposition(part);
        if (!comps.empty()) h += comps[0];
    }
    return h;
}

}  // namespace detail

/// Deterministic in (n, N, max_degree, seed); the result is N-harmonic by
/// construction and verified before returning.
inline ExactPolynomial random_polyharmonic(unsigned n, unsigned N, unsigned max_degree,
                                           std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_polyharmonic: need n >= 2");
    if (N < 1) throw std::invalid_argument("random_polyharmonic: need N >= 1");
    std::mt19937_64 rng(seed);
    ExactPolynomial u(n);
    const ExactPolynomial ns = ExactPolynomial::norm_sq(n);
    ExactPolynomial ns_pow = ExactPolynomial::constant(n, 1);
    for (unsigned k = 0; k < N; ++k) {
        if (k > 0) ns_pow = ns_pow * ns;
        u += ns_pow * detail::random_harmonic(n, max_degree, rng);
    }
    if (!is_polyharmonic(u, N)) throw std::logic_error("random_polyharmonic: construction failed");
    return u;
}

}  // namespace polyharm
