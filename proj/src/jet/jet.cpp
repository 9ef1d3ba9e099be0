#include <wdvv/jet/jet.hpp>

namespace wdvv::jet {

using algebra::Monomial;

Polynomial total_derivative(const Polynomial& p) {
    std::vector<Polynomial::Term> out;
    for (const auto& t : p.terms()) {
        const auto& fs = t.mono.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            Var v = fs[i].var;
            if (v == kX) {
                Monomial::Factors rest = fs;
                if (--rest[i].exp == 0) rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                out.push_back({Monomial::from_factors(std::move(rest)), t.coeff * fs[i].exp});
                continue;
            }
            if (!is_jet_family(v.family())) continue;
            Monomial::Factors next = fs;
            if (--next[i].exp == 0) next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
            next.push_back({v.derived(1), 1});
            out.push_back({Monomial::from_factors(std::move(next)), t.coeff * fs[i].exp});
        }
    }
    return Polynomial::from_terms(std::move(out));
}

RationalFunction total_derivative(const RationalFunction& e) {
    Polynomial dn = total_derivative(e.num());
    if (e.den().is_one()) return RationalFunction(std::move(dn));
    Polynomial dd = total_derivative(e.den());
    if (dd.is_zero()) return RationalFunction(dn, e.den());
    return RationalFunction(dn * e.den() - e.num() * dd, e.den() * e.den());
}

RationalFunction total_derivative(const RationalFunction& e, int times) {
    RationalFunction r = e;
    for (int k = 0; k < times; ++k) r = total_derivative(r);
    return r;
}

int jet_order(const RationalFunction& e, Family f, int component) {
    int best = -1;
    auto scan = [&](const Polynomial& p) {
        for (Var v : p.variables()) {
            if (v.family() == f && v.component() == component) best = std::max(best, v.order());
        }
    };
    scan(e.num());
    scan(e.den());
    return best;
}

RationalFunction variational_derivative(const RationalFunction& e, Family f, int component) {
    int top = jet_order(e, f, component);
    if (top < 0) return {};
    RationalFunction acc = e.derivative(Var(f, component, top));
    for (int k = top - 1; k >= 0; --k) {
        acc = e.derivative(Var(f, component, k)) - total_derivative(acc);
    }
    return acc;
}

std::set<std::pair<Family, int>> dependent_fields(const RationalFunction& e) {
    std::set<std::pair<Family, int>> out;
    auto scan = [&](const Polynomial& p) {
        for (Var v : p.variables()) {
            if (is_jet_family(v.family())) out.insert({v.family(), v.component()});
        }
    };
    scan(e.num());
    scan(e.den());
    return out;
}

bool is_trivial_density(const RationalFunction& h) {
    if (h.has_var_if([](Var v) { return v == kX; })) throw XDependenceError();
    for (auto [f, c] : dependent_fields(h)) {
        if (!variational_derivative(h, f, c).is_zero()) return false;
    }
    return true;
}

Polynomial potential_substitution(const Polynomial& p) {
    return p.rename([](Var v) { return v.family() == Family::a ? Var(Family::b, v.component(), v.order() + 1) : v; });
}

RationalFunction potential_substitution(const RationalFunction& e) {
    return RationalFunction(potential_substitution(e.num()), potential_substitution(e.den()));
}

RationalFunction rename_family(const RationalFunction& e, Family from, Family to) {
    auto f = [from, to](Var v) { return v.family() == from ? v.with_family(to) : v; };
    return RationalFunction(e.num().rename(f), e.den().rename(f));
}

Density::Density(RationalFunction value, Chart chart) : value_(std::move(value)), chart_(chart) {
    if (value_.has_var_if([](Var v) { return v == kX; })) throw XDependenceError();
}

std::vector<RationalFunction> Density::gradient() const {
    std::vector<RationalFunction> g;
    g.reserve(static_cast<std::size_t>(chart_.dim));
    for (int i = 0; i < chart_.dim; ++i) g.push_back(variational_derivative(value_, chart_.family, chart_.base + i));
    return g;
}

bool Density::equivalent(const Density& other) const { return is_trivial_density(value_ - other.value_); }

} // namespace wdvv::jet
