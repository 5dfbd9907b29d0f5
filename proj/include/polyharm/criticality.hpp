#pragma once

// The exponent calculus for weighted integrability of N-harmonic functions:
// the thresholds b_{j,N}(p) and a_{j,N}(p), the critical curve beta(N,p) (min
// formula, cross-checked against the piecewise form for n >= 3), membership
// tests, the term-selection set J(p,alpha), and region predicates. Everything
// here is exact over rationals; doubles appear only in the CSV emitter.

#include "polyharm/rational.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyharm {

/// Validity threshold for the critical curve: p >= (n-2)/(n-1), read as p > 0
/// when n = 2.
inline Rational critical_p_threshold(unsigned n) {
    if (n < 2) throw std::invalid_argument("critical curve: need n >= 2");
    return Rational(int(n) - 2, int(n) - 1);
}

inline bool p_in_validity_range(const Rational& p, unsigned n) {
    if (!(p > 0)) return false;
    return n == 2 || p >= critical_p_threshold(n);
}

/// b_{0,N}(p) = -1-(N-1)p;
/// b_{j,N}(p) = max{-1-(N+j-1)p, -n-(N-j-n+1)p} for 1 <= j <= N.
inline Rational b_jN(unsigned j, unsigned N, const Rational& p, unsigned n) {
    if (N < 1 || j > N) throw std::invalid_argument("b_jN: need 0 <= j <= N");
    if (!(p > 0)) throw std::invalid_argument("b_jN: need p > 0");
    if (j == 0) return -1 - (int(N) - 1) * p;
    Rational first = -1 - (int(N) + int(j) - 1) * p;
    Rational second = -int(n) - (int(N) - int(j) - int(n) + 1) * p;
    return std::max(first, second);
}

/// a_{j,N}(p) = min{b_{j,N}(p), -1-(N-j)p} for 1 <= j <= N.
inline Rational a_jN(unsigned j, unsigned N, const Rational& p, unsigned n) {
    if (j < 1 || j > N) throw std::invalid_argument("a_jN: need 1 <= j <= N");
    return std::min(b_jN(j, N, p, n), Rational(-1 - (int(N) - int(j)) * p));
}

struct BelowValidityRange : std::domain_error {
    using std::domain_error::domain_error;
};

/// Piecewise form of the critical curve, n >= 3 only.
inline Rational beta_critical_piecewise(unsigned N, const Rational& p, unsigned n) {
    if (n < 3) throw std::invalid_argument("beta_critical_piecewise: defined for n >= 3");
    if (p < critical_p_threshold(n))
        throw BelowValidityRange("beta_critical: p below (n-2)/(n-1)");
    if (p < Rational(int(n) - 1, int(n))) return -1 - int(N) * p;
    if (p < 1) return -int(n) - (int(N) - int(n)) * p;
    return -1 - (int(N) - 1) * p;
}

/// beta(N,p) = min_{0 <= j <= N} b_{j,N}(p) for p >= (n-2)/(n-1) (all p > 0
/// when n = 2). For n >= 3 the result is asserted against the piecewise form.
inline Rational beta_critical(unsigned N, const Rational& p, unsigned n) {
    if (N < 1) throw std::invalid_argument("beta_critical: need N >= 1");
    if (!p_in_validity_range(p, n))
        throw BelowValidityRange("beta_critical: p outside the validity range");
    Rational best = b_jN(0, N, p, n);
    for (unsigned j = 1; j <= N; ++j) best = std::min(best, b_jN(j, N, p, n));
    if (n >= 3 && !(best == beta_critical_piecewise(N, p, n)))
        throw std::logic_error("beta_critical: min formula disagrees with piecewise form");
    return best;
}

enum class Membership { member, not_member, unknown };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::member: return "member";
        case Membership::not_member: return "not-member";
        default: return "unknown";
    }
}

/// Admissibility of (p, alpha): decidable exactly when p is in the validity
/// range; below the threshold (n >= 3) the curve is uncharacterized and the
/// answer is `unknown`.
inline Membership admissible(const Rational& p, const Rational& alpha, unsigned N, unsigned n) {
    if (!(p > 0)) throw std::invalid_argument("admissible: need p > 0");
    if (!p_in_validity_range(p, n)) return Membership::unknown;
    return alpha > beta_critical(N, p, n) ? Membership::member : Membership::not_member;
}

/// U_{j,N} lies in the weighted space iff alpha > b_{j,N}(p); strict.
inline bool u_membership(unsigned j, unsigned N, const Rational& p, const Rational& alpha,
                         unsigned n) {
    return alpha > b_jN(j, N, p, n);
}

/// J(p, alpha) = { j in {0,...,N-1} : alpha > a_{N-j,N}(p) }; requires (p,
/// alpha) admissible within the validity range.
inline std::set<unsigned> j_set(const Rational& p, const Rational& alpha, unsigned N, unsigned n) {
    if (admissible(p, alpha, N, n) != Membership::member)
        throw std::domain_error("j_set: (p, alpha) is not in the admissible region");
    std::set<unsigned> out;
    for (unsigned j = 0; j < N; ++j)
        if (alpha > a_jN(N - j, N, p, n)) out.insert(j);
    return out;
}

/// Principal unentangled cell: alpha <= min{-n-(N-n-1)p, -1-(N-2)p}, for p in
/// the validity range.
inline bool principal_cell(const Rational& p, const Rational& alpha, unsigned N, unsigned n) {
    if (!p_in_validity_range(p, n))
        throw BelowValidityRange("principal_cell: p below the validity threshold");
    Rational bound = std::min(Rational(-int(n) - (int(N) - int(n) - 1) * p),
                              Rational(-1 - (int(N) - 2) * p));
    return alpha <= bound;
}

/// The entangled region for n = 2: 0 < p < 1/3 and alpha <= -1 - N p, within
/// the admissible region. The analogue for n >= 3 is open.
inline bool entangled_n2(const Rational& p, const Rational& alpha, unsigned N) {
    if (admissible(p, alpha, N, 2) != Membership::member)
        throw std::domain_error("entangled_n2: (p, alpha) is not admissible");
    return p < Rational(1, 3) && alpha <= -1 - int(N) * p;
}

/// Bundle of (n, N, p[, alpha]) with the derived quantities.
struct CriticalProfile {
    unsigned n;
    unsigned N;
    Rational p;
    std::optional<Rational> alpha;

    CriticalProfile(unsigned n_, unsigned N_, Rational p_,
                    std::optional<Rational> alpha_ = std::nullopt)
        : n(n_), N(N_), p(std::move(p_)), alpha(std::move(alpha_)) {
        if (n < 2 || N < 1 || !(p > 0))
            throw std::invalid_argument("CriticalProfile: need n >= 2, N >= 1, p > 0");
    }

    Rational b(unsigned j) const { return b_jN(j, N, p, n); }
    Rational a(unsigned j) const { return a_jN(j, N, p, n); }
    bool in_validity_range() const { return p_in_validity_range(p, n); }
    Rational beta() const { return beta_critical(N, p, n); }
    Membership membership() const {
        if (!alpha) throw std::logic_error("CriticalProfile: alpha not set");
        return admissible(p, *alpha, N, n);
    }
    std::set<unsigned> selection() const {
        if (!alpha) throw std::logic_error("CriticalProfile: alpha not set");
        return j_set(p, *alpha, N, n);
    }
};

// ---------------------------------------------------------------------------
// CSV emitter: one row per p with all thresholds, the curve value where
// defined, and a status flag. Columns: p, b_0..b_N, a_1..a_N, beta, status.

inline void critcurve_csv(std::ostream& os, unsigned n, unsigned N, const Rational& p_min,
                          const Rational& p_max, const Rational& step) {
    if (!(step > 0)) throw std::invalid_argument("critcurve_csv: step must be positive");
    if (!(p_min > 0)) throw std::invalid_argument("critcurve_csv: p_min must be positive");
    os << "p";
    for (unsigned j = 0; j <= N; ++j) os << ",b_" << j;
    for (unsigned j = 1; j <= N; ++j) os << ",a_" << j;
    os << ",beta,status\n";
    char buf[32];
    auto emit = [&](const Rational& v) {
        std::snprintf(buf, sizeof buf, "%.17g", to_double(v));
        os << buf;
    };
    for (Rational p = p_min; p <= p_max; p += step) {
        emit(p);
        for (unsigned j = 0; j <= N; ++j) {
            os << ",";
            emit(b_jN(j, N, p, n));
        }
        for (unsigned j = 1; j <= N; ++j) {
            os << ",";
            emit(a_jN(j, N, p, n));
        }
        if (p_in_validity_range(p, n)) {
            os << ",";
            emit(beta_critical(N, p, n));
            os << ",ok\n";
        } else {
            os << ",,unknown\n";
        }
    }
}

}  // namespace polyharm
