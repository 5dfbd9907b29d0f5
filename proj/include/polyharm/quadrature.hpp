#pragma once

// Deterministic product quadrature on the unit sphere and ball of R^n,
// 2 <= n <= 6: Gauss-Legendre/Gauss-Jacobi 1D rules (Golub-Welsch), product
// sphere rules over hyperspherical angles, ball rules in polar form, weighted
// L^p norms with a finiteness verdict, the numeric side of the ball integral
// I(a, b), radial means, and a heuristic estimator of the critical weight
// exponent.
//
// The sphere measure is normalized to sigma(S) = 1 throughout; ball rules
// carry plain Lebesgue measure.

#include "polyharm/special.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyharm {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// Golub-Welsch from symmetric tridiagonal recurrence data: alpha holds the
/// diagonal, beta[0] the total weight mass and beta[i>0] the squared
/// off-diagonal entries.
inline Rule1D golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const int k = int(alpha.size());
    Eigen::VectorXd diag(k), sub(k > 1 ? k - 1 : 0);
    for (int i = 0; i < k; ++i) diag[i] = alpha[size_t(i)];
    for (int i = 0; i + 1 < k; ++i) sub[i] = std::sqrt(beta[size_t(i) + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    Rule1D rule;
    rule.nodes.resize(size_t(k));
    rule.weights.resize(size_t(k));
    for (int i = 0; i < k; ++i) {
        rule.nodes[size_t(i)] = es.eigenvalues()[i];
        double v0 = es.eigenvectors().col(i)(0);
        rule.weights[size_t(i)] = beta[0] * v0 * v0;
    }
    return rule;
}

}  // namespace detail

/// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b; exact for
/// polynomials of degree <= 2k-1 against that weight.
inline Rule1D gauss_jacobi(unsigned k, double a, double b) {
    if (k < 1) throw std::invalid_argument("gauss_jacobi: need k >= 1");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
    const double ab = a + b;
    std::vector<double> alpha(k), beta(k);
    alpha[0] = (b - a) / (ab + 2.0);
    beta[0] = std::pow(2.0, ab + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(ab + 2.0);
    for (unsigned i = 1; i < k; ++i) {
        double d = 2.0 * i + ab;
        alpha[i] = (b * b - a * a) / (d * (d + 2.0));
        if (i == 1)
            beta[i] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        else
            beta[i] = 4.0 * i * (i + a) * (i + b) * (i + ab) / (d * d * (d + 1.0) * (d - 1.0));
    }
    return detail::golub_welsch(alpha, beta);
}

inline Rule1D gauss_legendre(unsigned k) { return gauss_jacobi(k, 0.0, 0.0); }

/// Rule on [0,1] for the weight (1-r)^a_end r^b_zero.
inline Rule1D gauss_jacobi_01(unsigned k, double a_end, double b_zero) {
    Rule1D base = gauss_jacobi(k, a_end, b_zero);
    Rule1D out;
    out.nodes.resize(k);
    out.weights.resize(k);
    const double scale = std::pow(0.5, a_end + b_zero + 1.0);
    for (unsigned i = 0; i < k; ++i) {
        out.nodes[i] = 0.5 * (base.nodes[i] + 1.0);
        out.weights[i] = scale * base.weights[i];
    }
    return out;
}

// ---------------------------------------------------------------------------

enum class DomainKind { sphere, ball };

struct QuadratureRule {
    unsigned dim = 0;
    DomainKind kind = DomainKind::sphere;
    std::string radial_kind;  // metadata: radial rule description for ball rules
    unsigned level = 0;
    std::vector<double> nodes;  // flat, node i at [i*dim, (i+1)*dim)
    std::vector<double> weights;

    size_t size() const { return weights.size(); }
    std::span<const double> node(size_t i) const { return {nodes.data() + i * dim, dim}; }

    void to_csv(std::ostream& os) const {
        for (unsigned i = 0; i < dim; ++i) os << "x" << (i + 1) << ",";
        os << "weight\n";
        char buf[32];
        for (size_t i = 0; i < size(); ++i) {
            auto pt = node(i);
            for (unsigned k = 0; k < dim; ++k) {
                std::snprintf(buf, sizeof buf, "%.17g", pt[k]);
                os << buf << ",";
            }
            std::snprintf(buf, sizeof buf, "%.17g", weights[i]);
            os << buf << "\n";
        }
    }
};

/// Deterministic integration: fixed-size chunks reduced in index order with
/// Neumaier compensation, so the result does not depend on how work might be
/// distributed.
inline double integrate(const QuadratureRule& rule,
                        const std::function<double(std::span<const double>)>& f) {
    constexpr size_t chunk = 1024;
    double total = 0.0, tcomp = 0.0;
    for (size_t start = 0; start < rule.size(); start += chunk) {
        size_t stop = std::min(start + chunk, rule.size());
        double sum = 0.0, comp = 0.0;
        for (size_t i = start; i < stop; ++i) {
            double t = rule.weights[i] * f(rule.node(i));
            double s = sum + t;
            if (std::abs(sum) >= std::abs(t))
                comp += (sum - s) + t;
            else
                comp += (t - s) + sum;
            sum = s;
        }
        double t = sum + comp;
        double s = total + t;
        if (std::abs(total) >= std::abs(t))
            tcomp += (total - s) + t;
        else
            tcomp += (t - s) + total;
        total = s;
    }
    return total + tcomp;
}

namespace detail {

inline void check_sphere_dim(unsigned n) {
    if (n < 2 || n > 6)
        throw std::invalid_argument("sphere/ball rules support 2 <= n <= 6 only");
}

struct AngleRule {
    std::vector<double> cosv, sinv, weights;
};

/// Polar angle on [0, pi] with weight sin^e(phi), via u = cos phi and
/// Gauss-Jacobi with exponents (e-1)/2.
inline AngleRule polar_angle_rule(unsigned k, unsigned e) {
    Rule1D gj = gauss_jacobi(k, 0.5 * (double(e) - 1.0), 0.5 * (double(e) - 1.0));
    AngleRule r;
    for (unsigned i = 0; i < k; ++i) {
        double u = gj.nodes[i];
        r.cosv.push_back(u);
        r.sinv.push_back(std::sqrt(std::max(0.0, 1.0 - u * u)));
        r.weights.push_back(gj.weights[i]);
    }
    return r;
}

/// Polar angle on [0, pi] with weight sin^e(phi), dyadically graded toward
/// phi = 0 (the pole e1) with Gauss-Legendre panels; resolves integrands
/// concentrated at e1 down to scale pi 2^-depth.
inline AngleRule polar_angle_rule_graded(unsigned k, unsigned e, unsigned depth) {
    AngleRule r;
    std::vector<double> edges{0.0};
    for (int j = int(depth); j >= 0; --j) edges.push_back(M_PI * std::pow(2.0, -double(j)));
    Rule1D gl = gauss_legendre(k);
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (unsigned i = 0; i < k; ++i) {
            double phi = mid + half * gl.nodes[i];
            r.cosv.push_back(std::cos(phi));
            r.sinv.push_back(std::sin(phi));
            r.weights.push_back(half * gl.weights[i] * std::pow(std::sin(phi), double(e)));
        }
    }
    return r;
}

/// Uniform azimuth on [0, 2pi), half-step offset so no node hits e1 exactly.
inline AngleRule azimuth_rule(unsigned m) {
    AngleRule r;
    for (unsigned i = 0; i < m; ++i) {
        double phi = 2.0 * M_PI * (double(i) + 0.5) / double(m);
        r.cosv.push_back(std::cos(phi));
        r.sinv.push_back(std::sin(phi));
        r.weights.push_back(1.0 / double(m));
    }
    return r;
}

inline QuadratureRule sphere_product(unsigned n, unsigned level,
                                     const std::vector<AngleRule>& angles) {
    QuadratureRule rule;
    rule.dim = n;
    rule.kind = DomainKind::sphere;
    rule.level = level;

    std::vector<size_t> idx(angles.size(), 0);
    std::vector<double> pt(n);
    double wsum = 0.0;
    while (true) {
        double w = 1.0;
        double sin_prod = 1.0;
        for (unsigned a = 0; a < angles.size(); ++a) {
            const auto& ar = angles[a];
            size_t i = idx[a];
            w *= ar.weights[i];
            pt[a] = sin_prod * ar.cosv[i];
            sin_prod *= ar.sinv[i];
        }
        pt[n - 1] = sin_prod;
        for (unsigned d = 0; d < n; ++d) rule.nodes.push_back(pt[d]);
        rule.weights.push_back(w);
        wsum += w;

        unsigned a = 0;
        for (; a < angles.size(); ++a) {
            if (++idx[a] < angles[a].weights.size()) break;
            idx[a] = 0;
        }
        if (a == angles.size()) break;
    }
    // normalize to sigma(S) = 1
    for (auto& w : rule.weights) w /= wsum;
    return rule;
}

}  // namespace detail

/// Product rule over hyperspherical angles; integrates 1 to exactly 1
/// (normalized sigma) and polynomials exactly up to a degree that grows with
/// `level`.
inline QuadratureRule sphere_rule(unsigned n, unsigned level) {
    detail::check_sphere_dim(n);
    if (level < 1) throw std::invalid_argument("sphere_rule: need level >= 1");
    // Angles in order phi_1, ..., phi_{n-2}, azimuth; phi_i carries the
    // sin^(n-1-i) weight. For n = 2 the azimuth alone covers the circle.
    std::vector<detail::AngleRule> angles;
    for (unsigned i = 1; i + 1 < n; ++i)
        angles.push_back(detail::polar_angle_rule(level, n - 1 - i));
    angles.push_back(detail::azimuth_rule(std::max(4u, 2 * level)));
    return detail::sphere_product(n, level, angles);
}

/// Like sphere_rule but with the polar angle at e1 dyadically refined, for
/// integrands singular or sharply peaked at e1. Still a valid positive rule
/// for smooth integrands.
inline QuadratureRule sphere_rule_graded(unsigned n, unsigned level, unsigned depth) {
    detail::check_sphere_dim(n);
    if (level < 1) throw std::invalid_argument("sphere_rule_graded: need level >= 1");
    std::vector<detail::AngleRule> angles;
    if (n == 2) {
        // graded polar angle in [0, pi], mirrored to the lower half circle
        detail::AngleRule half = detail::polar_angle_rule_graded(level, 0, depth);
        detail::AngleRule full;
        for (size_t i = 0; i < half.weights.size(); ++i) {
            full.cosv.push_back(half.cosv[i]);
            full.sinv.push_back(half.sinv[i]);
            full.weights.push_back(half.weights[i]);
            full.cosv.push_back(half.cosv[i]);
            full.sinv.push_back(-half.sinv[i]);
            full.weights.push_back(half.weights[i]);
        }
        angles.push_back(std::move(full));
    } else {
        angles.push_back(detail::polar_angle_rule_graded(level, n - 2, depth));
        for (unsigned i = 2; i + 1 < n; ++i)
            angles.push_back(detail::polar_angle_rule(level, n - 1 - i));
        angles.push_back(detail::azimuth_rule(std::max(4u, 2 * level)));
    }
    return detail::sphere_product(n, level, angles);
}

/// Surface area of the unit sphere in R^n (unnormalized measure).
inline double sphere_area(unsigned n) {
    return 2.0 * std::pow(M_PI, 0.5 * double(n)) / gamma(0.5 * double(n));
}

/// Lebesgue volume of the unit ball in R^n.
inline double ball_volume(unsigned n) {
    return std::pow(M_PI, 0.5 * double(n)) / gamma(0.5 * double(n) + 1.0);
}

/// Product of a radial rule on [0,1] with weight r^(n-1) (1-r)^jacobi_a and a
/// sphere rule. With jacobi_a = 0 the weights sum to the ball volume; a
/// nonzero jacobi_a absorbs a boundary factor (1-r)^a into the weights.
inline QuadratureRule ball_rule(unsigned n, unsigned level, double jacobi_a = 0.0) {
    detail::check_sphere_dim(n);
    QuadratureRule sph = sphere_rule(n, level);
    Rule1D rad = gauss_jacobi_01(std::max(2 * level, 4u), jacobi_a, double(n) - 1.0);
    QuadratureRule rule;
    rule.dim = n;
    rule.kind = DomainKind::ball;
    rule.level = level;
    rule.radial_kind = jacobi_a == 0.0 ? "gauss-jacobi(0," + std::to_string(n - 1) + ")"
                                       : "gauss-jacobi(" + std::to_string(jacobi_a) + "," +
                                             std::to_string(n - 1) + ")";
    const double area = sphere_area(n);
    for (size_t ir = 0; ir < rad.nodes.size(); ++ir) {
        for (size_t is = 0; is < sph.size(); ++is) {
            auto zeta = sph.node(is);
            for (unsigned d = 0; d < n; ++d) rule.nodes.push_back(rad.nodes[ir] * zeta[d]);
            rule.weights.push_back(area * rad.weights[ir] * sph.weights[is]);
        }
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Weighted norms ||f||_{p,alpha}^p = int |f|^p (1-|x|^2)^alpha dV with
// truncation radii r_m = 1 - 2^-m and a three-way finiteness verdict.

enum class Verdict { convergent, divergent, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::convergent: return "convergent";
        case Verdict::divergent: return "divergent";
        default: return "inconclusive";
    }
}

struct WeightedNormRequest {
    std::function<double(std::span<const double>)> f;
    double p = 1.0;
    double alpha = 0.0;
    unsigned levels = 14;        // number of dyadic annuli
    unsigned radial_nodes = 20;  // per annulus
    unsigned sphere_level = 16;
    unsigned sphere_depth_floor = 12;  // grading depth floor near e1
};

struct WeightedNormResult {
    std::vector<double> radii;      // r_m
    std::vector<double> truncated;  // ||f||^p restricted to |x| <= r_m
    std::vector<double> annulus;    // mass of annulus [r_m, r_{m+1}]
    Verdict verdict = Verdict::inconclusive;
};

namespace detail {

/// Annulus masses of |f|^p (1-|x|^2)^alpha over [r_m, r_{m+1}], m < levels.
/// The sphere factor is pole-graded with depth growing with m so boundary
/// concentrations at e1 stay resolved.
inline std::vector<double> annulus_masses(const WeightedNormRequest& req, unsigned n) {
    if (req.p <= 0) throw std::invalid_argument("weighted_norm: need p > 0");
    std::vector<double> masses;
    Rule1D gl = gauss_legendre(req.radial_nodes);
    const double area = sphere_area(n);
    std::vector<double> pt(n);
    for (unsigned m = 0; m < req.levels; ++m) {
        double lo = 1.0 - std::pow(2.0, -double(m));
        double hi = 1.0 - std::pow(2.0, -double(m) - 1.0);
        unsigned depth = std::max(req.sphere_depth_floor, m + 8);
        QuadratureRule sph = sphere_rule_graded(n, req.sphere_level, depth);
        double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (unsigned ir = 0; ir < req.radial_nodes; ++ir) {
            double r = mid + half * gl.nodes[ir];
            double shell = 0.0, comp = 0.0;
            for (size_t is = 0; is < sph.size(); ++is) {
                auto zeta = sph.node(is);
                for (unsigned d = 0; d < n; ++d) pt[d] = r * zeta[d];
                double t = sph.weights[is] * std::pow(std::abs(req.f(pt)), req.p);
                double s = shell + t;
                if (std::abs(shell) >= std::abs(t))
                    comp += (shell - s) + t;
                else
                    comp += (t - s) + shell;
                shell = s;
            }
            acc += half * gl.weights[ir] * std::pow(r, double(n) - 1.0) *
                   std::pow(1.0 - r * r, req.alpha) * (shell + comp);
        }
        masses.push_back(area * acc);
    }
    return masses;
}

}  // namespace detail

/// Verdict rule: divergent when the truncated norms grow by >= 1.2x across
/// each of the last three refinements; convergent when the last three annulus
/// masses each shrink by a factor <= 0.9 (a geometric tail); else
/// inconclusive. The 0.9 bound flags any boundary exponent strictly above -1,
/// since annulus masses then decay like 2^-(e+1)m.
inline Verdict norm_verdict(const std::vector<double>& truncated,
                            const std::vector<double>& annulus) {
    const size_t M = truncated.size();
    if (M < 5) return Verdict::inconclusive;
    if (truncated.back() == 0.0) return Verdict::convergent;
    bool divergent = true;
    for (size_t m = M - 3; m < M; ++m) {
        if (!(truncated[m] >= 1.2 * truncated[m - 1])) divergent = false;
    }
    if (divergent) return Verdict::divergent;
    bool convergent = true;
    for (size_t m = M - 3; m < M; ++m) {
        if (!(annulus[m] <= 0.9 * annulus[m - 1])) convergent = false;
    }
    return convergent ? Verdict::convergent : Verdict::inconclusive;
}

inline WeightedNormResult weighted_norm(const WeightedNormRequest& req, unsigned n) {
    detail::check_sphere_dim(n);
    WeightedNormResult res;
    res.annulus = detail::annulus_masses(req, n);
    double acc = 0.0;
    for (unsigned m = 0; m < req.levels; ++m) {
        acc += res.annulus[m];
        res.radii.push_back(1.0 - std::pow(2.0, -double(m) - 1.0));
        res.truncated.push_back(acc);
    }
    res.verdict = norm_verdict(res.truncated, res.annulus);
    return res;
}

// ---------------------------------------------------------------------------
// Numeric evaluation of I(a, b): polar reduction with a dyadically graded
// zonal angle (the integrand is zonal about e1) and dyadic radial panels
// toward r = 1, the boundary factor (1-r)^a absorbed by Gauss-Jacobi on the
// innermost panel.

namespace detail {

/// Zonal average int_S |r zeta - e1|^(-expo) dsigma(zeta) via graded panels in
/// the polar angle. |r zeta - e1|^2 = (1-r)^2 + 4 r sin^2(phi/2), computed in
/// that form to avoid cancellation for r near 1.
inline double zonal_kernel_avg(double r, double expo, unsigned n, unsigned depth, unsigned k) {
    Rule1D gl = gauss_legendre(k);
    std::vector<double> edges{0.0};
    for (int j = int(depth); j >= 0; --j) edges.push_back(M_PI * std::pow(2.0, -double(j)));
    double num = 0.0, den = 0.0;
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (unsigned i = 0; i < k; ++i) {
            double phi = mid + half * gl.nodes[i];
            double sp = std::sin(0.5 * phi);
            double d2 = (1.0 - r) * (1.0 - r) + 4.0 * r * sp * sp;
            double s = std::pow(std::sin(phi), double(n) - 2.0);
            num += half * gl.weights[i] * s * std::pow(d2, -0.5 * expo);
            den += half * gl.weights[i] * s;
        }
    }
    return num / den;
}

inline unsigned zonal_depth_for(double r, unsigned floor_depth) {
    double d = 1.0 - r;
    unsigned need = d > 0 ? unsigned(std::ceil(-std::log2(d))) + 6 : 48;
    return std::min(48u, std::max(floor_depth, need));
}

}  // namespace detail

/// Numeric I(a, b); requires the convergent region a > -1, b < 0. `tol`
/// controls how deep the dyadic radial grading goes (the skipped tail near
/// r = 1 scales like 2^(rdepth*b)).
inline double i_numeric(double a, double b, unsigned n, double tol = 1e-8,
                        unsigned angular_depth = 12, unsigned nodes = 24) {
    detail::check_sphere_dim(n);
    if (!(a > -1.0) || !(b < 0.0))
        throw std::domain_error("i_numeric: parameters in the divergent region");
    const double expo = double(n) + a + b;
    unsigned rdepth = std::max(30u, unsigned(std::ceil(std::log2(1.0 / (0.01 * tol)) / (-b))) + 2);
    rdepth = std::min(rdepth, 60u);

    Rule1D gl = gauss_legendre(nodes);
    double total = 0.0;
    std::vector<double> edges{0.0};
    for (unsigned j = 1; j <= rdepth; ++j) edges.push_back(1.0 - std::pow(2.0, -double(j)));
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (unsigned i = 0; i < nodes; ++i) {
            double r = mid + half * gl.nodes[i];
            double z = detail::zonal_kernel_avg(r, expo, n,
                                                detail::zonal_depth_for(r, angular_depth), nodes);
            total += half * gl.weights[i] * std::pow(r, double(n) - 1.0) *
                     std::pow(1.0 - r * r, a) * z;
        }
    }
    // innermost panel [1 - 2^-rdepth, 1]: Gauss-Jacobi absorbs (1-r)^a
    const double h = std::pow(2.0, -double(rdepth));
    Rule1D gj = gauss_jacobi(nodes, a, 0.0);
    double inner = 0.0;
    for (unsigned i = 0; i < nodes; ++i) {
        double r = 1.0 - 0.5 * h * (1.0 - gj.nodes[i]);
        double z = detail::zonal_kernel_avg(r, expo, n,
                                            detail::zonal_depth_for(r, angular_depth), nodes);
        inner += gj.weights[i] * std::pow(r, double(n) - 1.0) * std::pow(1.0 + r, a) * z;
    }
    total += std::pow(0.5 * h, a + 1.0) * inner;
    return sphere_area(n) * total;
}

// ---------------------------------------------------------------------------

/// M_p(f, r) = ( int_S |f(r zeta)|^p dsigma )^(1/p).
inline double radial_mean(const std::function<double(std::span<const double>)>& f, double p,
                          double r, unsigned n, unsigned sphere_level = 32) {
    if (!(p > 0)) throw std::invalid_argument("radial_mean: need p > 0");
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("radial_mean: need 0 <= r < 1");
    QuadratureRule sph = sphere_rule(n, sphere_level);
    std::vector<double> pt(n);
    double acc = integrate(sph, [&](std::span<const double> zeta) {
        for (unsigned d = 0; d < n; ++d) pt[d] = r * zeta[d];
        return std::pow(std::abs(f(pt)), p);
    });
    return std::pow(acc, 1.0 / p);
}

struct BetaEstimate {
    double beta;          // estimated critical alpha: -1 - slope
    double slope;         // log-log slope of annulus mass density vs (1 - r_m)
    double fit_residual;  // rms residual of the linear fit
};

/// Heuristic estimator of beta_p(f) = inf{alpha : f in L^p_alpha}: fits the
/// decay of the annulus mass densities A_m / width against (1 - r_m) on the
/// dyadic radii and reports -1 - slope.
inline BetaEstimate estimate_beta_p(const std::function<double(std::span<const double>)>& f,
                                    double p, unsigned n, unsigned refinement = 14) {
    if (refinement < 6) throw std::invalid_argument("estimate_beta_p: need refinement >= 6");
    WeightedNormRequest req;
    req.f = f;
    req.p = p;
    req.alpha = 0.0;
    req.levels = refinement;
    std::vector<double> masses = detail::annulus_masses(req, n);

    std::vector<double> xs, ys;
    for (unsigned m = refinement / 2; m < refinement; ++m) {
        if (masses[m] <= 0.0) continue;
        double width = std::pow(2.0, -double(m) - 1.0);
        xs.push_back(-double(m) * std::log(2.0));          // log(1 - r_m)
        ys.push_back(std::log(masses[m] / width));
    }
    if (xs.size() < 3) throw std::runtime_error("estimate_beta_p: degenerate fit (masses vanish)");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double M = double(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (M * sxy - sx * sy) / (M * sxx - sx * sx);
    double icept = (sy - slope * sx) / M;
    double rss = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (slope * xs[i] + icept);
        rss += e * e;
    }
    return BetaEstimate{-1.0 - slope, slope, std::sqrt(rss / M)};
}

}  // namespace polyharm
