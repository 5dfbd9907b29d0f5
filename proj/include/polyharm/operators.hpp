#pragma once

// Exact application of the ball operators to polynomials:
//
//   Delta   Laplacian
//   R       radial derivative x . grad
//   M^j     multiplication by (1-|x|^2)^j, integer j >= 0
//   L_theta (1-|x|^2) Delta + 4 theta R + 2 theta (n-2-2 theta) I
//
// plus residual forms of the operator identities relating them. Every residual
// is a polynomial that must be identically zero; callers test against the zero
// polynomial with no tolerance.

#include "polyharm/polynomial.hpp"

#include <variant>
#include <vector>

namespace polyharm {

/// The parameter of L_theta; exact so identity residuals stay exact for
/// half-integer values.
using ThetaParam = Rational;

inline ExactPolynomial laplacian(const ExactPolynomial& u) {
    ExactPolynomial r(u.dimension());
    for (unsigned i = 0; i < u.dimension(); ++i) r += u.derivative(i).derivative(i);
    return r;
}

inline ExactPolynomial laplacian_power(ExactPolynomial u, unsigned k) {
    for (unsigned i = 0; i < k; ++i) u = laplacian(u);
    return u;
}

/// x . grad u; equals (deg u) * u on homogeneous u.
inline ExactPolynomial radial(const ExactPolynomial& u) {
    ExactPolynomial r(u.dimension());
    for (const auto& [m, c] : u.terms()) r.add_term(m, c * int(total_degree(m)));
    return r;
}

/// (1-|x|^2)^j * u. The exact path is defined for integer j >= 0 only;
/// non-integer powers of (1-|x|^2) are not polynomials and live in the
/// numeric kernel path.
inline ExactPolynomial m_power(const ExactPolynomial& u, unsigned j) {
    if (j == 0) return u;
    return ExactPolynomial::one_minus_norm_sq(u.dimension()).pow(j) * u;
}

inline ExactPolynomial apply_L(const Rational& theta, const ExactPolynomial& u) {
    const int n = int(u.dimension());
    ExactPolynomial r = m_power(laplacian(u), 1);
    r += radial(u) * (4 * theta);
    r += u * (2 * theta * (n - 2 - 2 * theta));
    return r;
}

// ---------------------------------------------------------------------------
// Operator words: explicit compositions evaluated right to left, with no
// operator-level simplification. Identities are checked by full expansion.

struct AtomLaplacian {};
struct AtomRadial {};
struct AtomMPower { unsigned j; };
struct AtomL { Rational theta; };
struct AtomScale { Rational factor; };

using OperatorAtom = std::variant<AtomLaplacian, AtomRadial, AtomMPower, AtomL, AtomScale>;
using OperatorWord = std::vector<OperatorAtom>;

inline ExactPolynomial apply_word(const OperatorWord& word, ExactPolynomial u) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        u = std::visit(
            [&](const auto& atom) -> ExactPolynomial {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, AtomLaplacian>) return laplacian(u);
                else if constexpr (std::is_same_v<T, AtomRadial>) return radial(u);
                else if constexpr (std::is_same_v<T, AtomMPower>) return m_power(u, atom.j);
                else if constexpr (std::is_same_v<T, AtomL>) return apply_L(atom.theta, u);
                else return u * atom.factor;
            },
            *it);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Identity residuals. Each returns lhs - rhs of the corresponding operator
// identity applied to u, and the contract is that the result is the zero
// polynomial for every input.

/// L_theta M^lambda u - M^lambda L_{theta-lambda} u - 4 lambda (lambda-1-2 theta) M^{lambda-1} u.
inline ExactPolynomial correspondence_residual(const Rational& theta, unsigned lambda,
                                               const ExactPolynomial& u) {
    if (lambda < 1) throw std::invalid_argument("correspondence_residual: lambda must be >= 1");
    ExactPolynomial lhs = apply_L(theta, m_power(u, lambda));
    ExactPolynomial rhs = m_power(apply_L(theta - int(lambda), u), lambda);
    rhs += m_power(u, lambda - 1) * (4 * int(lambda) * (int(lambda) - 1 - 2 * theta));
    return lhs - rhs;
}

/// Delta^j L_theta u - L_{theta-j} Delta^j u.
inline ExactPolynomial commutation_residual(const Rational& theta, unsigned j,
                                            const ExactPolynomial& u) {
    if (j < 1) throw std::invalid_argument("commutation_residual: j must be >= 1");
    return laplacian_power(apply_L(theta, u), j) -
           apply_L(theta - int(j), laplacian_power(u, j));
}

/// L_0 L_1 ... L_{N-1} u - (1-|x|^2)^N Delta^N u.
inline ExactPolynomial factorization_residual(unsigned N, const ExactPolynomial& u) {
    if (N < 1) throw std::invalid_argument("factorization_residual: N must be >= 1");
    ExactPolynomial lhs = u;
    for (int theta = int(N) - 1; theta >= 0; --theta) lhs = apply_L(theta, lhs);
    return lhs - m_power(laplacian_power(u, N), N);
}

/// For u annihilated by L_{N-j-1}:
///   L_{N-k} ... L_{N-1} M^j u - 4^k (j-k+1)_k (j-2N+1)_k M^{j-k} u.
/// When k > j the Pochhammer factor (j-k+1)_k contains 0, so the right-hand
/// side is the zero polynomial and M^{j-k} is never formed.
inline ExactPolynomial iterated_identity_residual(unsigned N, unsigned j, unsigned k,
                                                  const ExactPolynomial& u) {
    if (k < 1 || k > N) throw std::invalid_argument("iterated_identity_residual: need 1 <= k <= N");
    if (j > N - 1) throw std::invalid_argument("iterated_identity_residual: need 0 <= j <= N-1");
    if (!apply_L(int(N) - int(j) - 1, u).is_zero())
        throw std::invalid_argument("iterated_identity_residual: input not annihilated by L_{N-j-1}");

    ExactPolynomial lhs = m_power(u, j);
    for (unsigned i = 1; i <= k; ++i) lhs = apply_L(int(N) - int(i), lhs);

    Rational factor = rational_pow(Rational(4), int(k)) *
                      pochhammer_rational(Rational(int(j) - int(k) + 1), k) *
                      pochhammer_rational(Rational(int(j) - 2 * int(N) + 1), k);
    if (factor == 0) return lhs;
    return lhs - m_power(u, j - k) * factor;
}

}  // namespace polyharm
