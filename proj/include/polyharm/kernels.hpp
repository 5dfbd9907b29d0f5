#pragma once

// Pointwise evaluation of the non-polynomial kernels: the theta-Poisson kernel
// P_theta, the test functions U_{j,N}, and theta-Poisson integrals of boundary
// data, together with the pointwise residual of L_theta computed from
// second-order jets.

#include "polyharm/jet.hpp"
#include "polyharm/polynomial.hpp"
#include "polyharm/quadrature.hpp"
#include "polyharm/special.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace polyharm {

inline constexpr double kBoundaryGuard = 1e-12;  // reject |x| > 1 - this
inline constexpr double kPoleGuard = 1e-10;      // reject |x - zeta| < this

struct KernelSpec {
    double theta;
    std::vector<double> zeta;  // unit vector (pole)
    unsigned n;

    KernelSpec(double theta_, std::vector<double> zeta_)
        : theta(theta_), zeta(std::move(zeta_)), n(unsigned(zeta.size())) {
        double s = 0.0;
        for (double z : zeta) s += z * z;
        if (std::abs(std::sqrt(s) - 1.0) > 1e-14)
            throw std::invalid_argument("KernelSpec: pole must be a unit vector");
    }
};

inline std::vector<double> unit_vector(unsigned n, unsigned axis = 0) {
    std::vector<double> e(n, 0.0);
    e[axis] = 1.0;
    return e;
}

namespace detail {

inline void check_interior(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    if (std::sqrt(s) > 1.0 - kBoundaryGuard)
        throw std::domain_error("kernel evaluation requires |x| < 1 - 1e-12");
}

inline void check_off_pole(const std::vector<double>& x, const std::vector<double>& zeta) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += (x[i] - zeta[i]) * (x[i] - zeta[i]);
    if (std::sqrt(s) < kPoleGuard)
        throw std::domain_error("kernel evaluation too close to the pole");
}

}  // namespace detail

/// P_theta(x, zeta) = C_theta (1-|x|^2)^(1+2 theta) / |x-zeta|^(n+2 theta)
/// as a second-order jet in x.
inline Jet2 poisson_kernel_jet(const KernelSpec& spec, const std::vector<double>& x) {
    if (x.size() != spec.n) throw std::invalid_argument("poisson_kernel: dimension mismatch");
    detail::check_interior(x);
    detail::check_off_pole(x, spec.zeta);
    Jet2 a = 1.0 - jet_norm_sq(x);                   // 1 - |x|^2
    Jet2 d = jet_dist_sq(x, spec.zeta);              // |x - zeta|^2
    double ct = c_theta(spec.theta, spec.n);
    return ct * a.pow(1.0 + 2.0 * spec.theta) * d.pow(-0.5 * (double(spec.n) + 2.0 * spec.theta));
}

inline double poisson_kernel(const KernelSpec& spec, const std::vector<double>& x) {
    return poisson_kernel_jet(spec, x).value;
}

/// Pointwise L_theta residual from a jet:
/// (1-|x|^2) tr(H) + 4 theta (x . g) + 2 theta (n - 2 - 2 theta) v.
inline double L_residual_from_jet(double theta, const Jet2& jet, const std::vector<double>& x) {
    const unsigned n = jet.dim();
    double norm_sq = 0.0, xdotg = 0.0;
    for (unsigned i = 0; i < n; ++i) {
        norm_sq += x[i] * x[i];
        xdotg += x[i] * jet.grad[i];
    }
    return (1.0 - norm_sq) * jet.trace() + 4.0 * theta * xdotg +
           2.0 * theta * (double(n) - 2.0 - 2.0 * theta) * jet.value;
}

inline double L_residual_at(double theta, const JetField& field, const std::vector<double>& x) {
    return L_residual_from_jet(theta, field(x), x);
}

/// Jet field of an exact polynomial, built by jet arithmetic (independent of
/// the exact derivative route, which tests use as the oracle).
inline JetField polynomial_field(const ExactPolynomial& u) {
    return [u](const std::vector<double>& x) {
        const unsigned n = u.dimension();
        if (x.size() != n) throw std::invalid_argument("polynomial_field: dimension mismatch");
        Jet2 acc(n);
        for (const auto& [m, c] : u.terms()) {
            Jet2 term = Jet2::constant(n, to_double(c));
            for (unsigned i = 0; i < n; ++i)
                for (unsigned e = 0; e < m[i]; ++e)
                    term = term * Jet2::coordinate(n, i, x[i]);
            acc = acc + term;
        }
        return acc;
    };
}

/// Jet field of a radial profile composed with |x|^2.
inline JetField radial_profile_field(const RadialProfile& profile) {
    return [profile](const std::vector<double>& x) {
        Jet2 t = jet_norm_sq(x);
        auto f = profile.eval012(t.value);
        return t.compose(f[0], f[1], f[2]);
    };
}

// ---------------------------------------------------------------------------
// Test functions U_{j,N}(x) = (1-|x|^2)^(N+j-1) / |x-e1|^(n+2(j-1)) for
// 1 <= j <= N, and U_{0,N} = (1-|x|^2)^(N-1).

inline Jet2 u_jn_jet(unsigned j, unsigned N, const std::vector<double>& x) {
    const unsigned n = unsigned(x.size());
    if (N < 1 || j > N) throw std::invalid_argument("u_jn: need N >= 1 and 0 <= j <= N");
    detail::check_interior(x);
    Jet2 a = 1.0 - jet_norm_sq(x);
    if (j == 0) return a.pow(double(N) - 1.0);
    std::vector<double> e1 = unit_vector(n);
    detail::check_off_pole(x, e1);
    Jet2 d = jet_dist_sq(x, e1);
    return a.pow(double(N + j) - 1.0) * d.pow(-0.5 * (double(n) + 2.0 * (double(j) - 1.0)));
}

inline double u_jn(unsigned j, unsigned N, const std::vector<double>& x) {
    return u_jn_jet(j, N, x).value;
}

// ---------------------------------------------------------------------------
// theta-Poisson integral P_theta[f](x) = int_S P_theta(x, zeta) f(zeta) dsigma.

inline Jet2 theta_poisson_integral_jet(double theta,
                                       const std::function<double(std::span<const double>)>& f,
                                       const std::vector<double>& x, unsigned sphere_level = 32) {
    if (!(theta > -0.5))
        throw std::domain_error("theta_poisson_integral: requires theta > -1/2");
    const unsigned n = unsigned(x.size());
    detail::check_interior(x);
    QuadratureRule sph = sphere_rule(n, sphere_level);
    Jet2 acc(n);
    std::vector<double> zeta(n);
    for (size_t i = 0; i < sph.size(); ++i) {
        auto node = sph.node(i);
        zeta.assign(node.begin(), node.end());
        KernelSpec spec(theta, zeta);
        acc = acc + sph.weights[i] * f(node) * poisson_kernel_jet(spec, x);
    }
    return acc;
}

inline double theta_poisson_integral(double theta,
                                     const std::function<double(std::span<const double>)>& f,
                                     const std::vector<double>& x, unsigned sphere_level = 32) {
    return theta_poisson_integral_jet(theta, f, x, sphere_level).value;
}

}  // namespace polyharm
