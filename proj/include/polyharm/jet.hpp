#pragma once

// Second-order forward-mode jets: (value, gradient, Hessian) propagated
// through arithmetic, so pointwise Delta, R and L_theta of non-polynomial
// kernels come out exact to rounding, never from finite differences.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace polyharm {

class Jet2 {
public:
    explicit Jet2(unsigned n) : n_(n), value(0.0), grad(n, 0.0), hess(size_t(n) * n, 0.0) {}

    static Jet2 constant(unsigned n, double v) {
        Jet2 j(n);
        j.value = v;
        return j;
    }

    /// Seed jet of the i-th coordinate at a point.
    static Jet2 coordinate(unsigned n, unsigned i, double xi) {
        Jet2 j(n);
        j.value = xi;
        j.grad[i] = 1.0;
        return j;
    }

    unsigned dim() const { return n_; }
    double h(unsigned i, unsigned k) const { return hess[size_t(i) * n_ + k]; }
    double& h(unsigned i, unsigned k) { return hess[size_t(i) * n_ + k]; }

    double trace() const {
        double t = 0.0;
        for (unsigned i = 0; i < n_; ++i) t += h(i, i);
        return t;
    }

    Jet2 operator-() const {
        Jet2 r(n_);
        r.value = -value;
        for (unsigned i = 0; i < n_; ++i) r.grad[i] = -grad[i];
        for (size_t i = 0; i < hess.size(); ++i) r.hess[i] = -hess[i];
        return r;
    }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        Jet2 r(a.n_);
        r.value = a.value + b.value;
        for (unsigned i = 0; i < a.n_; ++i) r.grad[i] = a.grad[i] + b.grad[i];
        for (size_t i = 0; i < a.hess.size(); ++i) r.hess[i] = a.hess[i] + b.hess[i];
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r(a.n_);
        r.value = a.value * b.value;
        for (unsigned i = 0; i < a.n_; ++i)
            r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
        for (unsigned i = 0; i < a.n_; ++i)
            for (unsigned k = 0; k < a.n_; ++k)
                r.h(i, k) = a.h(i, k) * b.value + a.grad[i] * b.grad[k] +
                            a.grad[k] * b.grad[i] + a.value * b.h(i, k);
        return r;
    }

    friend Jet2 operator*(const Jet2& a, double s) {
        Jet2 r = a;
        r.value *= s;
        for (auto& g : r.grad) g *= s;
        for (auto& h : r.hess) h *= s;
        return r;
    }
    friend Jet2 operator*(double s, const Jet2& a) { return a * s; }
    friend Jet2 operator+(const Jet2& a, double s) {
        Jet2 r = a;
        r.value += s;
        return r;
    }
    friend Jet2 operator+(double s, const Jet2& a) { return a + s; }
    friend Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
    friend Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

    /// Composition with a scalar map given by (f(u), f'(u), f''(u)) at u = value.
    Jet2 compose(double f0, double f1, double f2) const {
        Jet2 r(n_);
        r.value = f0;
        for (unsigned i = 0; i < n_; ++i) r.grad[i] = f1 * grad[i];
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned k = 0; k < n_; ++k)
                r.h(i, k) = f2 * grad[i] * grad[k] + f1 * h(i, k);
        return r;
    }

    /// value^e for real exponent; value must be positive.
    Jet2 pow(double e) const {
        if (value <= 0.0) throw std::domain_error("jet pow: base must be positive");
        double f0 = std::pow(value, e);
        double f1 = e * f0 / value;
        double f2 = e * (e - 1.0) * f0 / (value * value);
        return compose(f0, f1, f2);
    }

    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        if (b.value == 0.0) throw std::domain_error("jet division by zero");
        return a * b.compose(1.0 / b.value, -1.0 / (b.value * b.value),
                             2.0 / (b.value * b.value * b.value));
    }

    unsigned n_;
    double value;
    std::vector<double> grad;
    std::vector<double> hess;  // row-major n x n, symmetric
};

using JetField = std::function<Jet2(const std::vector<double>&)>;

inline Jet2 jet_eval(const JetField& field, const std::vector<double>& x) { return field(x); }

/// Jet of |x|^2 at x.
inline Jet2 jet_norm_sq(const std::vector<double>& x) {
    const unsigned n = unsigned(x.size());
    Jet2 j(n);
    for (unsigned i = 0; i < n; ++i) {
        j.value += x[i] * x[i];
        j.grad[i] = 2.0 * x[i];
        j.h(i, i) = 2.0;
    }
    return j;
}

/// Jet of |x - p|^2 at x.
inline Jet2 jet_dist_sq(const std::vector<double>& x, const std::vector<double>& p) {
    const unsigned n = unsigned(x.size());
    if (p.size() != x.size()) throw std::invalid_argument("jet_dist_sq: dimension mismatch");
    Jet2 j(n);
    for (unsigned i = 0; i < n; ++i) {
        double d = x[i] - p[i];
        j.value += d * d;
        j.grad[i] = 2.0 * d;
        j.h(i, i) = 2.0;
    }
    return j;
}

}  // namespace polyharm
