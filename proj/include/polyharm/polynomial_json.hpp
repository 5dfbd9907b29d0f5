#pragma once

// JSON wire format for polynomials:
//   {"n": 2, "terms": [{"exps": [1, 0], "num": 1, "den": 1}, ...]}
// Input accepts terms in any order and "num"/"den" as integers or decimal
// strings; output is canonical: graded-lex term order, reduced coefficients,
// integers emitted numerically when they fit in 64 bits.

#include "polyharm/polynomial.hpp"

#include <json.hpp>

#include <limits>
#include <string>

namespace polyharm {

struct PolynomialFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt bigint_from_json(const nlohmann::json& j, const char* what) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
            throw PolynomialFormatError(std::string("invalid integer string for ") + what);
        }
    }
    throw PolynomialFormatError(std::string("expected integer or string for ") + what);
}

inline ExactPolynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw PolynomialFormatError("polynomial document needs \"n\" and \"terms\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw PolynomialFormatError("\"n\" must be a positive integer");
    unsigned n = j["n"].get<unsigned>();
    if (!j["terms"].is_array()) throw PolynomialFormatError("\"terms\" must be an array");

    ExactPolynomial p(n);
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exps") || !t.contains("num") || !t.contains("den"))
            throw PolynomialFormatError("term needs \"exps\", \"num\", \"den\"");
        const auto& ex = t["exps"];
        if (!ex.is_array() || ex.size() != n)
            throw PolynomialFormatError("\"exps\" must have length n");
        Monomial m(n);
        for (unsigned i = 0; i < n; ++i) {
            if (!ex[i].is_number_integer() || ex[i].get<long long>() < 0)
                throw PolynomialFormatError("exponents must be non-negative integers");
            m[i] = ex[i].get<unsigned>();
        }
        BigInt num = bigint_from_json(t["num"], "num");
        BigInt den = bigint_from_json(t["den"], "den");
        if (den <= 0) throw PolynomialFormatError("\"den\" must be a positive integer");
        p.add_term(m, Rational(num, den));
    }
    return p;
}

inline ExactPolynomial parse_polynomial_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PolynomialFormatError(std::string("malformed JSON: ") + e.what());
    }
    return polynomial_from_json(j);
}

inline nlohmann::json bigint_to_json(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.template convert_to<long long>();
    return v.str();
}

inline nlohmann::json polynomial_to_json(const ExactPolynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json t;
        t["exps"] = m;
        t["num"] = bigint_to_json(numerator(c));
        t["den"] = bigint_to_json(denominator(c));
        terms.push_back(std::move(t));
    }
    return nlohmann::json{{"n", p.dimension()}, {"terms", std::move(terms)}};
}

inline std::string emit_polynomial_json(const ExactPolynomial& p) {
    return polynomial_to_json(p).dump();
}

}  // namespace polyharm
