#pragma once

#include <wdvv/algebra/polynomial.hpp>

#include <map>
#include <string>

namespace wdvv::algebra {

/// Quotient of polynomials in lowest terms.
///
/// Invariants: gcd(num, den) = 1, den is monic, zero is 0/1. Two rational
/// functions are equal exactly when their stored parts are.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const Scalar& c) : num_(c), den_(1) {}
    RationalFunction(long c) : RationalFunction(Scalar(c)) {}
    RationalFunction(int c) : RationalFunction(Scalar(c)) {}
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}
    explicit RationalFunction(Var v) : num_(v), den_(1) {}
    RationalFunction(const Polynomial& num, const Polynomial& den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    Scalar constant_value() const { return num_.constant_value(); }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction x, const RationalFunction& y) { return x += y; }
    friend RationalFunction operator-(RationalFunction x, const RationalFunction& y) { return x -= y; }
    friend RationalFunction operator*(RationalFunction x, const RationalFunction& y) { return x *= y; }
    friend RationalFunction operator/(RationalFunction x, const RationalFunction& y) { return x /= y; }

    RationalFunction inverse() const;
    RationalFunction pow(int e) const;

    RationalFunction derivative(Var v) const;
    RationalFunction substitute(Var v, const RationalFunction& value) const;
    /// Throws std::domain_error when the denominator vanishes at the point.
    RationalFunction evaluate(const std::map<Var, Scalar>& point) const;

    bool has_var_if(const std::function<bool(Var)>& pred) const {
        return num_.has_var_if(pred) || den_.has_var_if(pred);
    }
    int max_order(Family f) const { return std::max(num_.max_order(f), den_.max_order(f)); }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::size_t hash() const;

private:
    struct Reduced {};
    RationalFunction(Polynomial num, Polynomial den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize_sign();

    Polynomial num_;
    Polynomial den_;
};

} // namespace wdvv::algebra
