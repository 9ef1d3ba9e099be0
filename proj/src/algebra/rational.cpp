#include <wdvv/algebra/rational.hpp>

#include <stdexcept>

namespace wdvv::algebra {

namespace {

Polynomial quotient(const Polynomial& x, const Polynomial& y) {
    if (y.is_one()) return x;
    auto q = x.divide_exact(y);
    if (!q) throw std::logic_error("rational function: inexact division by a gcd");
    return std::move(*q);
}

// Numerator of p(v = top/bottom) * bottom^deg, for deg >= degree of p in v.
Polynomial homogenized(const Polynomial& p, Var v, const Polynomial& top, const Polynomial& bottom, std::uint32_t deg) {
    auto parts = p.collect([v](Var w) { return w == v; });
    Polynomial result;
    for (const auto& [mono, coeff] : parts) {
        std::uint32_t e = mono.degree();
        result += coeff * top.pow(e) * bottom.pow(deg - e);
    }
    return result;
}

} // namespace

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    Polynomial g = gcd(num, den);
    num_ = quotient(num, g);
    den_ = quotient(den, g);
    normalize_sign();
}

void RationalFunction::normalize_sign() {
    const Scalar& lc = den_.leading().coeff;
    if (lc == 1) return;
    Scalar inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Reduced{}); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        return *this = RationalFunction(num_ + o.num_, den_);
    }
    Polynomial g = gcd(den_, o.den_);
    if (g.is_one()) {
        Polynomial num = num_ * o.den_ + o.num_ * den_;
        if (num.is_zero()) return *this = RationalFunction();
        Polynomial den = den_ * o.den_;
        num_ = std::move(num);
        den_ = std::move(den);
        return *this;
    }
    Polynomial b = quotient(den_, g);
    Polynomial d = quotient(o.den_, g);
    Polynomial t = num_ * d + o.num_ * b;
    if (t.is_zero()) return *this = RationalFunction();
    Polynomial h = gcd(t, g);
    num_ = quotient(t, h);
    den_ = b * d * quotient(g, h);
    normalize_sign();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    if (o.is_constant()) {
        num_ *= o.num_.constant_value();
        return *this;
    }
    if (is_constant()) {
        Scalar c = num_.constant_value();
        *this = o;
        num_ *= c;
        return *this;
    }
    Polynomial g1 = gcd(num_, o.den_);
    Polynomial g2 = gcd(o.num_, den_);
    Polynomial num = quotient(num_, g1) * quotient(o.num_, g2);
    Polynomial den = quotient(den_, g2) * quotient(o.den_, g1);
    num_ = std::move(num);
    den_ = std::move(den);
    normalize_sign();
    return *this;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    RationalFunction r(den_, num_, Reduced{});
    r.normalize_sign();
    return r;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    return RationalFunction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
}

RationalFunction RationalFunction::derivative(Var v) const {
    Polynomial dn = num_.derivative(v);
    if (den_.is_one()) return RationalFunction(std::move(dn), Polynomial(1), Reduced{});
    if (!den_.has_var(v)) return RationalFunction(dn, den_);
    Polynomial dd = den_.derivative(v);
    return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

RationalFunction RationalFunction::substitute(Var v, const RationalFunction& value) const {
    if (!num_.has_var(v) && !den_.has_var(v)) return *this;
    if (value.is_polynomial()) {
        Polynomial n = num_.substitute(v, value.num_);
        Polynomial d = den_.substitute(v, value.num_);
        if (den_.has_var(v)) return RationalFunction(n, d);
        return RationalFunction(n, d);
    }
    std::uint32_t dn = num_.degree_in(v);
    std::uint32_t dd = den_.degree_in(v);
    Polynomial n = homogenized(num_, v, value.num_, value.den_, dn);
    Polynomial d = homogenized(den_, v, value.num_, value.den_, dd);
    if (dd >= dn) return RationalFunction(n * value.den_.pow(dd - dn), d);
    return RationalFunction(n, d * value.den_.pow(dn - dd));
}

RationalFunction RationalFunction::evaluate(const std::map<Var, Scalar>& point) const {
    Polynomial n = num_.evaluate(point);
    Polynomial d = den_.evaluate(point);
    if (d.is_zero()) throw std::domain_error("denominator vanishes at evaluation point");
    if (den_.is_one()) return RationalFunction(std::move(n), std::move(d), Reduced{});
    return RationalFunction(n, d);
}

std::size_t RationalFunction::hash() const { return num_.hash() * 31 + den_.hash(); }

} // namespace wdvv::algebra
