#pragma once

// Sparse multivariate polynomials over exact rationals. Terms live in a map
// ordered by graded-lexicographic monomial order, which doubles as the
// canonical serialization order.

#include "polyharm/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyharm {

/// Exponent vector; length equals the ambient dimension.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0u);
}

/// Graded-lex: lower total degree first, ties broken lexicographically.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class ExactPolynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit ExactPolynomial(unsigned dimension) : dim_(dimension) {
        if (dimension < 1) throw std::invalid_argument("polynomial: dimension must be >= 1");
    }

    static ExactPolynomial constant(unsigned n, const Rational& c) {
        ExactPolynomial p(n);
        if (c != 0) p.terms_.emplace(Monomial(n, 0u), c);
        return p;
    }

    static ExactPolynomial variable(unsigned n, unsigned i) {
        if (i >= n) throw std::invalid_argument("polynomial: variable index out of range");
        ExactPolynomial p(n);
        Monomial m(n, 0u);
        m[i] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static ExactPolynomial monomial(unsigned n, Monomial exps, const Rational& c) {
        if (exps.size() != n) throw std::invalid_argument("polynomial: exponent length mismatch");
        ExactPolynomial p(n);
        if (c != 0) p.terms_.emplace(std::move(exps), c);
        return p;
    }

    /// |x|^2 = sum of x_i^2.
    static ExactPolynomial norm_sq(unsigned n) {
        ExactPolynomial p(n);
        for (unsigned i = 0; i < n; ++i) {
            Monomial m(n, 0u);
            m[i] = 2;
            p.terms_.emplace(std::move(m), Rational(1));
        }
        return p;
    }

    static ExactPolynomial one_minus_norm_sq(unsigned n) {
        return constant(n, 1) - norm_sq(n);
    }

    unsigned dimension() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        return terms_.empty() ? -1 : int(total_degree(terms_.rbegin()->first));
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        unsigned d = total_degree(terms_.begin()->first);
        return d == total_degree(terms_.rbegin()->first);
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.size() != dim_) throw std::invalid_argument("polynomial: exponent length mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExactPolynomial& operator+=(const ExactPolynomial& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ExactPolynomial& operator-=(const ExactPolynomial& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    ExactPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }

    friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) { return a += b; }
    friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) { return a -= b; }
    friend ExactPolynomial operator-(const ExactPolynomial& a) {
        ExactPolynomial r(a.dim_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend ExactPolynomial operator*(ExactPolynomial a, const Rational& s) { return a *= s; }
    friend ExactPolynomial operator*(const Rational& s, ExactPolynomial a) { return a *= s; }

    friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
        a.check_dim(b);
        ExactPolynomial r(a.dim_);
        Monomial prod(a.dim_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (unsigned i = 0; i < a.dim_; ++i) prod[i] = ma[i] + mb[i];
                r.add_term(prod, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    ExactPolynomial pow(unsigned k) const {
        ExactPolynomial acc = constant(dim_, 1);
        ExactPolynomial base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            if (k >>= 1) base = base * base;
        }
        return acc;
    }

    /// d/dx_i, exact.
    ExactPolynomial derivative(unsigned i) const {
        if (i >= dim_) throw std::invalid_argument("polynomial: derivative index out of range");
        ExactPolynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            r.terms_.emplace(std::move(d), c * int(m[i]));
        }
        return r;
    }

    /// The homogeneous part of the given total degree.
    ExactPolynomial homogeneous_part(unsigned degree) const {
        ExactPolynomial r(dim_);
        for (const auto& [m, c] : terms_)
            if (total_degree(m) == degree) r.terms_.emplace(m, c);
        return r;
    }

    Rational eval_rational(std::span<const Rational> x) const {
        if (x.size() != dim_) throw std::invalid_argument("polynomial: evaluation point dimension mismatch");
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (unsigned i = 0; i < dim_; ++i)
                if (m[i]) t *= rational_pow(x[i], m[i]);
            acc += t;
        }
        return acc;
    }

    /// Direct sparse evaluation with Neumaier-compensated summation, so the
    /// result is a deterministic function of the term order alone.
    double eval_double(std::span<const double> x) const {
        if (x.size() != dim_) throw std::invalid_argument("polynomial: evaluation point dimension mismatch");
        double sum = 0.0, comp = 0.0;
        for (const auto& [m, c] : terms_) {
            double t = to_double(c);
            for (unsigned i = 0; i < dim_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
            double s = sum + t;
            if (std::abs(sum) >= std::abs(t))
                comp += (sum - s) + t;
            else
                comp += (t - s) + sum;
            sum = s;
        }
        return sum + comp;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += rational_to_string(c);
            for (unsigned i = 0; i < dim_; ++i) {
                if (m[i] == 0) continue;
                out += "*x" + std::to_string(i + 1);
                if (m[i] > 1) out += "^" + std::to_string(m[i]);
            }
        }
        return out;
    }

private:
    void check_dim(const ExactPolynomial& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("polynomial: dimension mismatch");
    }

    unsigned dim_;
    TermMap terms_;
};

/// Builds sum_k coeffs[k] * |x|^(2k) in n variables from a polynomial in t = |x|^2.
inline ExactPolynomial substitute_norm_sq(const std::vector<Rational>& tcoeffs, unsigned n) {
    ExactPolynomial r(n);
    ExactPolynomial ns = ExactPolynomial::norm_sq(n);
    ExactPolynomial power = ExactPolynomial::constant(n, 1);
    for (size_t k = 0; k < tcoeffs.size(); ++k) {
        if (k > 0) power = power * ns;
        r += power * tcoeffs[k];
    }
    return r;
}

}  // namespace polyharm
