#pragma once

#include <wdvv/algebra/variable.hpp>

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace wdvv::algebra {

/// Power product of variables. Factors are kept sorted by variable and
/// never carry a zero exponent, so equal monomials compare equal bytewise.
class Monomial {
public:
    struct Factor {
        Var var;
        std::uint32_t exp;
        bool operator==(const Factor&) const = default;
    };
    using Factors = boost::container::small_vector<Factor, 4>;

    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t e = 1);

    /// Builds from arbitrary (possibly repeated, unsorted) factors.
    static Monomial from_factors(Factors factors);

    bool is_one() const { return factors_.empty(); }
    std::uint32_t degree() const { return degree_; }
    std::uint32_t degree_in(Var v) const;
    const Factors& factors() const { return factors_; }

    Monomial operator*(const Monomial& other) const;
    /// Quotient if `divisor` divides this monomial.
    std::optional<Monomial> divide(const Monomial& divisor) const;
    bool divisible_by(const Monomial& divisor) const;

    /// Drops every factor in `v`, returning the removed power.
    Monomial without(Var v, std::uint32_t* removed = nullptr) const;

    static Monomial gcd(const Monomial& x, const Monomial& y);

    bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

    /// Graded lexicographic comparison; smaller variables rank higher in the
    /// lexicographic tie-break. Returns <0, 0, >0.
    static int compare(const Monomial& x, const Monomial& y);

    std::size_t hash() const;
    std::string str() const;

private:
    Factors factors_;
    std::uint32_t degree_ = 0;
};

/// Strict "greater" under graded lex, the storage order of polynomial terms.
struct MonomialGreater {
    bool operator()(const Monomial& x, const Monomial& y) const { return Monomial::compare(x, y) > 0; }
};

} // namespace wdvv::algebra

template<>
struct std::hash<wdvv::algebra::Monomial> {
    std::size_t operator()(const wdvv::algebra::Monomial& m) const noexcept { return m.hash(); }
};
