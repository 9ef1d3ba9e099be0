#pragma once

#include <wdvv/algebra/matrix.hpp>
#include <wdvv/algebra/rational.hpp>

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wdvv::algebra {

/// Unsimplified expression tree, as read from text or assembled by hand
/// before canonicalization.
struct Expr {
    enum class Kind { number, variable, add, sub, mul, div, neg, pow };

    Kind kind = Kind::number;
    Scalar value;
    Var var;
    int exponent = 0;
    std::vector<Expr> args;

    static Expr number(Scalar s);
    static Expr variable(Var v);
    static Expr op(Kind k, std::vector<Expr> args);
    static Expr power(Expr base, int e);
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads the prefix notation: numbers `3`, `-2/5`; variables `a[1,0]`;
/// `(+ e...)`, `(- e)`, `(- e e...)`, `(* e...)`, `(/ e e)`, `(^ e n)`.
Expr parse_expr(std::string_view text);

/// Throws std::domain_error on division by the zero polynomial.
RationalFunction canonicalize(const Expr& e);

inline bool equals_zero(const RationalFunction& e) { return e.is_zero(); }

/// Canonical prefix text. Parsing it back and canonicalizing gives the
/// same value.
std::string to_prefix(const Polynomial& p);
std::string to_prefix(const RationalFunction& r);

inline RationalFunction parse_rational(std::string_view text) { return canonicalize(parse_expr(text)); }

/// Structured export: numerator and denominator as term lists.
nlohmann::json to_json(const Polynomial& p);
nlohmann::json to_json(const RationalFunction& r);
RationalFunction rational_from_json(const nlohmann::json& j);

/// Rows of prefix entries, `[[e, e], [e, e]]` with one row per line.
std::string to_text(const RationalMatrix& m);
std::string to_text(const ScalarMatrix& m);
/// Array of rows of prefix strings.
nlohmann::json to_json(const RationalMatrix& m);

} // namespace wdvv::algebra
