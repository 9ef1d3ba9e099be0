#pragma once

#include <wdvv/algebra/monomial.hpp>
#include <wdvv/algebra/scalar.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wdvv::algebra {

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are stored in strictly decreasing graded-lex order with nonzero
/// coefficients, so the representation of a polynomial is unique and
/// `operator==` is equality of polynomials.
class Polynomial {
public:
    struct Term {
        Monomial mono;
        Scalar coeff;
    };

    Polynomial() = default;
    Polynomial(const Scalar& c);
    Polynomial(long c) : Polynomial(Scalar(c)) {}
    Polynomial(int c) : Polynomial(Scalar(c)) {}
    explicit Polynomial(Var v);
    Polynomial(const Monomial& m, const Scalar& c);

    /// Sorts and merges arbitrary terms into canonical form.
    static Polynomial from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const;
    /// Value of a constant polynomial.
    Scalar constant_value() const;
    /// Coefficient of the monomial 1.
    Scalar constant_term() const;
    bool is_monomial() const { return terms_.size() == 1; }

    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(Var v) const;
    /// Sorted distinct variables occurring in the polynomial.
    std::vector<Var> variables() const;
    bool has_var(Var v) const;
    bool has_var_if(const std::function<bool(Var)>& pred) const;
    /// Highest derivative order over the variables of one family; -1 if none.
    int max_order(Family f) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Scalar& c);
    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
    friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
    friend Polynomial operator*(Polynomial x, const Scalar& c) { return x *= c; }
    friend Polynomial operator*(const Scalar& c, Polynomial x) { return x *= c; }
    friend Polynomial operator*(long c, Polynomial x) { return x *= Scalar(c); }
    friend Polynomial operator*(Polynomial x, long c) { return x *= Scalar(c); }
    friend Polynomial operator+(Polynomial x, long c) { return x += Polynomial(c); }
    friend Polynomial operator-(Polynomial x, long c) { return x -= Polynomial(c); }

    Polynomial mul_term(const Monomial& m, const Scalar& c) const;
    Polynomial pow(unsigned e) const;

    /// Quotient when `divisor` divides exactly, otherwise nullopt.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

    Polynomial derivative(Var v) const;

    /// Positive rational c such that this / c has coprime integer
    /// coefficients. Zero for the zero polynomial.
    Scalar content() const;
    /// Scaled to leading coefficient 1 (zero stays zero).
    Polynomial monic() const;

    /// Coefficients with respect to the selected variables: the key holds
    /// the selected part of each monomial, the value the remaining factor.
    std::map<Monomial, Polynomial, MonomialGreater> collect(const std::function<bool(Var)>& select) const;

    Polynomial substitute(Var v, const Polynomial& value) const;
    /// Renames variables; the map must be injective on the variables present
    /// or the result is recombined accordingly.
    Polynomial rename(const std::function<Var(Var)>& f) const;
    /// Replaces the assigned variables by their values.
    Polynomial evaluate(const std::map<Var, Scalar>& point) const;

    bool operator==(const Polynomial& o) const;

    std::size_t hash() const;

private:
    std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& x, const Polynomial& y);

} // namespace wdvv::algebra
