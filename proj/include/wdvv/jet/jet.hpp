#pragma once

#include <wdvv/algebra/rational.hpp>

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wdvv::jet {

using algebra::Family;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::Scalar;
using algebra::Var;

/// Reserved parameters. Only `kX` is differentiated by the total derivative;
/// the spectral parameters are constants.
inline constexpr Var kX{Family::t, 0, 0};
inline constexpr Var kLambda{Family::t, 1, 0};
inline constexpr Var kRho{Family::t, 2, 0};

inline Var jet(Family f, int component, int order = 0) { return Var(f, component, order); }
inline RationalFunction field(Family f, int component, int order = 0) {
    return RationalFunction(Var(f, component, order));
}

inline bool is_jet_family(Family f) { return f != Family::t; }

/// A numbered set of fields: index i in 0..dim-1 is component base+i of the
/// family.
struct Chart {
    Family family = Family::a;
    int base = 1;
    int dim = 0;

    Var var(int i, int order = 0) const { return Var(family, base + i, order); }
    RationalFunction field(int i, int order = 0) const { return RationalFunction(var(i, order)); }
    Chart with_family(Family f) const { return Chart{f, base, dim}; }
    bool operator==(const Chart&) const = default;
};

Polynomial total_derivative(const Polynomial& p);
RationalFunction total_derivative(const RationalFunction& e);
RationalFunction total_derivative(const RationalFunction& e, int times);

/// Euler operator Σ_k (-D)^k ∂e/∂(f, component, k).
RationalFunction variational_derivative(const RationalFunction& e, Family f, int component);

/// (field family, component) pairs on which the expression depends.
std::set<std::pair<Family, int>> dependent_fields(const RationalFunction& e);

/// True iff every Euler derivative of `h` vanishes, that is `h` is a total
/// derivative up to an additive constant.
bool is_trivial_density(const RationalFunction& h);

/// a-jets of order k become b-jets of order k+1.
RationalFunction potential_substitution(const RationalFunction& e);
Polynomial potential_substitution(const Polynomial& p);

/// Replaces each variable of family `from` by the same jet of family `to`.
RationalFunction rename_family(const RationalFunction& e, Family from, Family to);

/// Highest jet order of the given field in `e`, or -1.
int jet_order(const RationalFunction& e, Family f, int component);

class XDependenceError : public std::invalid_argument {
public:
    XDependenceError() : std::invalid_argument("density depends explicitly on x") {}
};

/// Conservation-law density on the fields of a chart.
class Density {
public:
    Density(RationalFunction value, Chart chart);

    const RationalFunction& value() const { return value_; }
    const Chart& chart() const { return chart_; }

    /// Euler derivatives along every field of the chart.
    std::vector<RationalFunction> gradient() const;

    /// Equality of the functionals.
    bool equivalent(const Density& other) const;

private:
    RationalFunction value_;
    Chart chart_;
};

} // namespace wdvv::jet
