#pragma once

// Real-argument special functions used by the kernel and integrability
// machinery: Gamma (Lanczos), Pochhammer symbols, the Gauss hypergeometric
// series, its value at z = 1 (Gauss summation), the radial profiles Phi_theta,
// the kernel constant C_theta, and the closed form of the ball integral
// I(a, b).

#include "polyharm/polynomial.hpp"
#include "polyharm/rational.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyharm {

namespace detail {

// Lanczos approximation, 15-term coefficient set with g = 607/128. Relative
// error is a few 1e-15 for x >= 0.5; reflection below.
inline constexpr double kLanczosG = 4.7421875;
inline constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,   -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

inline bool is_nonpositive_integer(double x, double eps = 1e-12) {
    return x <= 0.5 && std::abs(x - std::round(x)) < eps;
}

}  // namespace detail

/// Gamma(x) for real x; throws on poles (nonpositive integers).
inline double gamma(double x) {
    if (detail::is_nonpositive_integer(x))
        throw std::domain_error("gamma: pole at nonpositive integer");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return M_PI / (std::sin(M_PI * x) * gamma(1.0 - x));
    }
    double z = x - 1.0;
    double acc = detail::kLanczosCoeffs[0];
    for (size_t i = 1; i < detail::kLanczosCoeffs.size(); ++i)
        acc += detail::kLanczosCoeffs[i] / (z + double(i));
    double t = z + detail::kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

/// Ascending factorial (a)_k in double precision.
inline double pochhammer(double a, unsigned k) {
    double acc = 1.0;
    for (unsigned i = 0; i < k; ++i) acc *= a + double(i);
    return acc;
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric series 2F1(a, b; c; z).

struct Hyp2F1Params {
    double a, b, c, z;
};

namespace detail {

/// Index at which the series terminates, if a or b is a nonpositive integer.
inline std::optional<unsigned> termination_index(double a, double b) {
    std::optional<unsigned> k;
    if (is_nonpositive_integer(a)) k = unsigned(std::lround(-a));
    if (is_nonpositive_integer(b)) {
        unsigned kb = unsigned(std::lround(-b));
        if (!k || kb < *k) k = kb;
    }
    return k;
}

inline double hyp2f1_series(double a, double b, double c, double z, double tol,
                            unsigned iteration_cap) {
    auto kterm = termination_index(a, b);
    if (is_nonpositive_integer(c)) {
        unsigned cpole = unsigned(std::lround(-c));
        if (!kterm || *kterm > cpole)
            throw std::domain_error("hyp2f1: c is a nonpositive integer and the series does not terminate first");
    }
    if (kterm) {
        double term = 1.0, sum = 1.0;
        for (unsigned k = 0; k < *kterm; ++k) {
            term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z;
            sum += term;
        }
        return sum;
    }
    if (std::abs(z) > 1.0 - 1e-8)
        throw std::domain_error("hyp2f1: nonterminating series restricted to |z| <= 1 - 1e-8");
    double term = 1.0, sum = 1.0;
    for (unsigned k = 0; k < iteration_cap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z;
        sum += term;
        if (std::abs(term) < tol * std::abs(sum)) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge within the iteration cap");
}

}  // namespace detail

inline constexpr unsigned kHyp2F1IterationCap = 100000;

inline double hyp2f1(const Hyp2F1Params& p, double tol = 1e-12) {
    return detail::hyp2f1_series(p.a, p.b, p.c, p.z, tol, kHyp2F1IterationCap);
}

inline double hyp2f1(double a, double b, double c, double z, double tol = 1e-12) {
    return detail::hyp2f1_series(a, b, c, z, tol, kHyp2F1IterationCap);
}

/// Exact value of a terminating series with rational parameters.
inline Rational hyp2f1_exact(const Rational& a, const Rational& b, const Rational& c,
                             const Rational& z) {
    long kterm = -1;
    if (is_integer(a) && a <= 0) kterm = (-numerator(a)).template convert_to<long>();
    if (is_integer(b) && b <= 0) {
        long kb = (-numerator(b)).template convert_to<long>();
        if (kterm < 0 || kb < kterm) kterm = kb;
    }
    if (kterm < 0) throw std::domain_error("hyp2f1_exact: series does not terminate");
    Rational term = 1, sum = 1;
    for (long k = 0; k < kterm; ++k) {
        Rational den = (c + int(k)) * (1 + int(k));
        if (den == 0) throw std::domain_error("hyp2f1_exact: c produces a zero denominator");
        term *= (a + int(k)) * (b + int(k)) / den * z;
        sum += term;
    }
    return sum;
}

/// 2F1(a, b; c; 1) by Gauss's summation formula; requires c - a - b > 0.
/// A pole in a denominator Gamma gives the 0 limit when the numerator part is
/// finite.
inline double gauss_value(double a, double b, double c) {
    double s = c - a - b;
    if (s <= 0) throw std::domain_error("gauss_value: divergent, needs c - a - b > 0");
    if (detail::is_nonpositive_integer(c) || detail::is_nonpositive_integer(s))
        throw std::domain_error("gauss_value: Gamma pole in numerator");
    bool den_pole_a = detail::is_nonpositive_integer(c - a);
    bool den_pole_b = detail::is_nonpositive_integer(c - b);
    if (den_pole_a || den_pole_b) return 0.0;
    return gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b));
}

// ---------------------------------------------------------------------------
// Radial profiles t -> 2F1(a, b; c; t) on [0, 1), carrying the exact
// polynomial form when the series terminates.

class RadialProfile {
public:
    RadialProfile(double a, double b, double c) : a_(a), b_(b), c_(c) {}

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    bool terminates() const { return detail::termination_index(a_, b_).has_value(); }

    double value(double t) const { return eval_f(a_, b_, c_, t); }

    /// (f, f', f'') at t, via the contiguous derivative relation
    /// d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z).
    std::array<double, 3> eval012(double t) const {
        double f0 = eval_f(a_, b_, c_, t);
        double p1 = a_ * b_ / c_;
        double f1 = p1 == 0.0 ? 0.0 : p1 * eval_f(a_ + 1, b_ + 1, c_ + 1, t);
        double p2 = p1 * (a_ + 1) * (b_ + 1) / (c_ + 1);
        double f2 = p2 == 0.0 ? 0.0 : p2 * eval_f(a_ + 2, b_ + 2, c_ + 2, t);
        return {f0, f1, f2};
    }

private:
    // The raw series is accurate away from t = 1. Near t = 1 a nonterminating
    // series needs O(1/(1-t)) terms, so switch to the standard z -> 1-z
    // connection formula (valid for non-integer c-a-b, which covers every
    // nonterminating profile this library probes near the boundary).
    static double eval_f(double a, double b, double c, double t) {
        auto kterm = detail::termination_index(a, b);
        if (kterm || std::abs(t) <= 0.75)
            return detail::hyp2f1_series(a, b, c, t, 1e-15, 2000000);
        double s = c - a - b;
        if (std::abs(s - std::round(s)) < 1e-9)
            return detail::hyp2f1_series(a, b, c, t, 1e-15, 2000000);
        double one_minus = 1.0 - t;
        double first = 0.0, second = 0.0;
        if (!detail::is_nonpositive_integer(c - a) && !detail::is_nonpositive_integer(c - b)) {
            first = gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b)) *
                    detail::hyp2f1_series(a, b, 1.0 - s, one_minus, 1e-15, 2000000);
        }
        if (!detail::is_nonpositive_integer(a) && !detail::is_nonpositive_integer(b)) {
            second = gamma(c) * gamma(-s) / (gamma(a) * gamma(b)) * std::pow(one_minus, s) *
                     detail::hyp2f1_series(c - a, c - b, 1.0 + s, one_minus, 1e-15, 2000000);
        }
        return first + second;
    }

    double a_, b_, c_;
};

/// Radial solution profile of L_theta[u] = 0:
/// Phi_theta(x) = 2F1(-theta, n/2-1-theta; n/2; |x|^2).
struct PhiTheta {
    RadialProfile profile;
    bool bounded;                                 // iff theta > -1/2
    std::optional<std::vector<Rational>> tpoly;   // exact t-coefficients when theta in Z>=0
};

inline PhiTheta phi_theta(const Rational& theta, unsigned n) {
    double th = to_double(theta);
    RadialProfile prof(-th, 0.5 * double(n) - 1.0 - th, 0.5 * double(n));
    std::optional<std::vector<Rational>> tpoly;
    if (is_integer(theta) && theta >= 0) {
        long k = numerator(theta).template convert_to<long>();
        Rational a = -theta, b = Rational(int(n) - 2, 2) - theta, c = Rational(int(n), 2);
        std::vector<Rational> coeffs(size_t(k) + 1);
        Rational term = 1;
        coeffs[0] = 1;
        for (long i = 0; i < k; ++i) {
            term *= (a + int(i)) * (b + int(i)) / ((c + int(i)) * (1 + int(i)));
            coeffs[size_t(i) + 1] = term;
        }
        tpoly = std::move(coeffs);
    }
    return PhiTheta{std::move(prof), theta > Rational(-1, 2), std::move(tpoly)};
}

/// Exact polynomial Phi_theta in n variables (requires integer theta >= 0).
inline ExactPolynomial phi_theta_polynomial(const Rational& theta, unsigned n) {
    PhiTheta phi = phi_theta(theta, n);
    if (!phi.tpoly) throw std::domain_error("phi_theta_polynomial: series does not terminate");
    return substitute_norm_sq(*phi.tpoly, n);
}

/// Kernel normalization C_theta = Gamma(n/2+theta) Gamma(1+theta)
///                               / (Gamma(n/2) Gamma(1+2 theta)).
inline double c_theta(double theta, unsigned n) {
    double h = 0.5 * double(n);
    return gamma(h + theta) * gamma(1.0 + theta) / (gamma(h) * gamma(1.0 + 2.0 * theta));
}

// ---------------------------------------------------------------------------
// I(a, b) = int_B (1-|x|^2)^a / |x-e1|^(n+a+b) dV, finite iff a > -1 and b < 0.

struct IabValue {
    bool finite;
    double value;  // meaningful only when finite

    static IabValue divergent() { return {false, std::numeric_limits<double>::infinity()}; }
    static IabValue of(double v) { return {true, v}; }
};

inline IabValue i_closed_form(double a, double b, unsigned n) {
    if (!(a > -1.0) || !(b < 0.0)) return IabValue::divergent();
    double v = std::pow(M_PI, 0.5 * double(n)) * gamma(1.0 + a) * gamma(-b) /
               (gamma(0.5 * (double(n) + a - b)) * gamma(0.5 * (2.0 + a - b)));
    return IabValue::of(v);
}

}  // namespace polyharm
