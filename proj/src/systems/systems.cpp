#include <wdvv/systems/systems.hpp>

#include <wdvv/algebra/expr.hpp>

#include <functional>
#include <map>
#include <stdexcept>

namespace wdvv::systems {

using algebra::Family;
using algebra::Scalar;
using algebra::Var;
using diffop::ScalarOp;

namespace {

void check_n(int N) {
    if (N != 3 && N != 4) throw std::invalid_argument("only N = 3 and N = 4 are supported");
}

RationalFunction a(int i) { return jet::field(Family::a, i); }
RationalFunction b(int i, int order = 0) { return jet::field(Family::b, i, order); }
RationalFunction u(int i) { return jet::field(Family::u, i); }
RationalFunction q(long num, long den = 1) { return RationalFunction(algebra::make_scalar(num, den)); }

// Auxiliary fluxes of the six-component systems.
RationalFunction flux_R() { return (2 * a(5) + a(2) * a(4)) / a(1); }
RationalFunction flux_P() { return (a(3) * a(4) + a(6)) / a(1); }
RationalFunction flux_S() { return (2 * a(3) * a(5) - a(2) * a(6)) / a(1); }
RationalFunction flux_Q() {
    return a(5) * a(5) - a(4) * a(6) +
           (a(3) * a(3) * a(4) + a(3) * a(6) - 2 * a(2) * a(3) * a(5) + a(2) * a(2) * a(6)) / a(1);
}

ScalarOp mul(const RationalFunction& c) { return ScalarOp::multiplication(c); }
ScalarOp d(int k = 1) { return ScalarOp::monomial(RationalFunction(1), k); }
ScalarOp chain(std::initializer_list<ScalarOp> ops) {
    ScalarOp out = ScalarOp::multiplication(RationalFunction(1));
    for (const auto& op : ops) out = diffop::compose(out, op);
    return out;
}

ScalarMatrix scalar_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    ScalarMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = Scalar(v);
        ++i;
    }
    return m;
}

} // namespace

jet::Chart a_chart(int N) {
    check_n(N);
    return jet::Chart{Family::a, 1, N == 3 ? 3 : 6};
}

jet::Chart u_chart(int N) {
    check_n(N);
    return N == 3 ? jet::Chart{Family::u, 1, 3} : jet::Chart{Family::u, 0, 6};
}

std::vector<HydroSystem> build_systems(int N) {
    check_n(N);
    if (N == 3) return {HydroSystem{"t", a_chart(3), {a(2), a(3), a(2) * a(2) - a(1) * a(3)}}};
    return {HydroSystem{"y", a_chart(4), {a(2), a(4), a(5), flux_R(), flux_P(), flux_S()}},
            HydroSystem{"z", a_chart(4), {a(3), a(5), a(6), flux_P(), flux_S(), flux_Q()}}};
}

RationalFunction flow_derivative(const RationalFunction& e, const HydroSystem& flow) {
    const auto& chart = flow.chart;
    std::map<Var, RationalFunction> out;
    auto collect = [&](const Polynomial& p) {
        for (Var v : p.variables()) {
            if (v.family() == chart.family) out.emplace(v, RationalFunction());
        }
    };
    collect(e.num());
    collect(e.den());
    RationalFunction sum;
    for (auto& [v, _] : out) {
        auto j = static_cast<std::size_t>(v.component() - chart.base);
        sum += e.derivative(v) * jet::total_derivative(flow.fluxes[j], v.order() + 1);
    }
    return sum;
}

poisson::Outcome verify_commuting(const HydroSystem& y, const HydroSystem& z) {
    poisson::Outcome out;
    for (std::size_t i = 0; i < y.fluxes.size(); ++i) {
        RationalFunction lhs = flow_derivative(jet::total_derivative(y.fluxes[i]), z);
        RationalFunction rhs = flow_derivative(jet::total_derivative(z.fluxes[i]), y);
        if (!out.absorb(lhs - rhs, "component " + std::to_string(i + 1))) break;
    }
    return out;
}

RationalMatrix lax_matrix(int N) {
    check_n(N);
    if (N == 3) {
        return RationalMatrix{{0, 1, 0}, {a(2), a(1), 1}, {a(3), a(2), 0}};
    }
    return RationalMatrix{{0, 1, 0, 0}, {a(3), a(2), a(1), 0}, {a(5), a(4), a(2), 1}, {a(6), a(5), a(3), 0}};
}

Polynomial characteristic_polynomial(const RationalMatrix& lax) {
    RationalMatrix m = lax;
    RationalFunction rho(jet::kRho);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= rho;
    RationalFunction det = algebra::determinant(m);
    if (!det.is_polynomial()) throw std::invalid_argument("Lax matrix entries must be polynomial");
    return det.num();
}

geometry::CoordinateMap viete_map(int N) {
    check_n(N);
    if (N == 3) {
        RationalFunction e1 = u(1) + u(2) + u(3);
        RationalFunction e2 = u(1) * u(2) + u(1) * u(3) + u(2) * u(3);
        RationalFunction e3 = u(1) * u(2) * u(3);
        return {u_chart(3), a_chart(3), {e1, q(-1, 2) * e2, e3}};
    }
    RationalFunction s1 = u(1) + u(2) + u(3) + u(4);
    RationalFunction p2 = u(1) * u(1) + u(2) * u(2) + u(3) * u(3) + u(4) * u(4);
    RationalFunction e3 = u(1) * u(2) * u(3) + u(1) * u(2) * u(4) + u(1) * u(3) * u(4) + u(2) * u(3) * u(4);
    RationalFunction e4 = u(1) * u(2) * u(3) * u(4);
    RationalFunction a1 = u(0), a4 = u(5);
    RationalFunction a2 = q(1, 2) * s1;
    RationalFunction a3 = q(1, 4) * p2 - q(1, 8) * s1 * s1 - q(1, 2) * a1 * a4;
    RationalFunction a5 = (2 * a2 * a3 + e3) / (2 * a1);
    RationalFunction a6 = (a3 * a3 - e4) / a1;
    return {u_chart(4), a_chart(4), {a1, a2, a3, a4, a5, a6}};
}

ScalarMatrix flat_metric(int N) {
    check_n(N);
    if (N == 3) {
        ScalarMatrix k = scalar_matrix({{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
        return k * Scalar(1, 2);
    }
    return scalar_matrix({{0, 0, 0, 0, 0, -2},
                          {0, 1, -1, -1, -1, 0},
                          {0, -1, 1, -1, -1, 0},
                          {0, -1, -1, 1, -1, 0},
                          {0, -1, -1, -1, 1, 0},
                          {-2, 0, 0, 0, 0, 0}});
}

LocalOperator first_operator(int N) {
    check_n(N);
    jet::Chart chart = a_chart(N);
    LocalOperator op(chart);
    if (N == 3) {
        RationalFunction A = a(1), B = a(2), C = a(3), F = a(2) * a(2) - a(1) * a(3);
        RationalFunction cx = jet::total_derivative(C);
        op(0, 0) = chain({mul(q(-3, 2)), d()});
        op(0, 1) = chain({mul(q(1, 2)), d(), mul(A)});
        op(0, 2) = chain({d(), mul(B)});
        op(1, 0) = chain({mul(q(1, 2) * A), d()});
        op(1, 1) = chain({mul(q(1, 2)), d(), mul(B)}) + chain({mul(q(1, 2) * B), d()});
        op(1, 2) = chain({mul(q(3, 2) * C), d()}) + mul(cx);
        op(2, 0) = chain({mul(B), d()});
        op(2, 1) = chain({mul(q(3, 2)), d(), mul(C)}) - mul(cx);
        op(2, 2) = chain({mul(F), d()}) + chain({d(), mul(F)});
        return op;
    }
    RationalFunction R = flux_R(), P = flux_P(), S = flux_S(), Q = flux_Q();
    RationalMatrix left{{0, 0, 0, -1, 0, 0},
                        {0, -1, 0, 0, 0, 0},
                        {a(1), a(2), a(3), a(4), a(5), a(6)},
                        {-1, 0, 0, 0, 0, 0},
                        {a(2), a(4), a(5), R, P, S},
                        {2 * a(3), 2 * a(5), 2 * a(6), 2 * P, 2 * S, 2 * Q}};
    RationalMatrix right{{0, 0, a(1), -1, a(2), 2 * a(3)},
                         {0, -1, a(2), 0, a(4), 2 * a(5)},
                         {0, 0, a(3), 0, a(5), 2 * a(6)},
                         {-1, 0, a(4), 0, R, 2 * P},
                         {0, 0, a(5), 0, P, 2 * S},
                         {0, 0, a(6), 0, S, 2 * Q}};
    LocalOperator dx(chart);
    for (std::size_t i = 0; i < dx.dim(); ++i) dx(i, i) = d();
    return LocalOperator::from_matrix(left, 1, chart) + diffop::compose(dx, LocalOperator::from_matrix(right, 0, chart));
}

LocalOperator third_operator_n3() {
    LocalOperator op(a_chart(3));
    RationalFunction A = a(1), B = a(2);
    op(0, 2) = d(3);
    op(1, 1) = d(3);
    op(1, 2) = -chain({d(2), mul(A), d()});
    op(2, 0) = d(3);
    op(2, 1) = -chain({d(), mul(A), d(2)});
    op(2, 2) = chain({d(2), mul(B), d()}) + chain({d(), mul(B), d(2)}) + chain({d(), mul(A), d(), mul(A), d()});
    return op;
}

RationalMatrix monge_metric(int N) {
    check_n(N);
    if (N == 3) return RationalMatrix{{-2 * a(2), a(1), 1}, {a(1), 1, 0}, {1, 0, 0}};
    RationalFunction c14 = -(a(1) * a(4) + a(3));
    return RationalMatrix{{a(4) * a(4), -2 * a(5), 2 * a(4), c14, a(2), 1},
                          {-2 * a(5), -2 * a(3), a(2), 0, a(1), 0},
                          {2 * a(4), a(2), 2, -a(1), 0, 0},
                          {c14, 0, -a(1), a(1) * a(1), 0, 0},
                          {a(2), a(1), 0, 0, 0, 0},
                          {1, 0, 0, 0, 0, 0}};
}

diffop::FactorizedThirdOrder factorization_n4() {
    RationalMatrix psi{{1, a(5), a(4), 0, 0, 0},
                       {0, a(3), 0, 1, a(5), 0},
                       {0, -a(2), 0, 0, -a(4), 1},
                       {0, 0, -a(1), 0, a(3), 0},
                       {0, -a(1), 0, 0, -a(2), 0},
                       {0, 0, 0, 0, -1, 0}};
    ScalarMatrix phi = scalar_matrix({{0, 0, 0, 0, -1, 0},
                                      {0, 0, 0, -1, 0, 0},
                                      {0, 0, 1, 0, 0, 1},
                                      {0, -1, 0, 0, 0, 0},
                                      {-1, 0, 0, 0, 0, 0},
                                      {0, 0, 1, 0, 0, 2}});
    return {psi, phi, a_chart(4)};
}

ScalarMatrix eta_matrix(int flow) {
    if (flow == 1) {
        return scalar_matrix({{0, 0, 0, 0, 0, 0},
                              {1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 1, 0, 0},
                              {0, 0, -2, 0, 0, 1},
                              {0, -1, 0, 0, 0, 0}});
    }
    if (flow == 2) {
        return scalar_matrix({{0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0},
                              {1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 1, 0, 0},
                              {0, 0, -1, 0, 0, 1}});
    }
    throw std::invalid_argument("flow must be 1 or 2");
}

RationalFunction hamiltonian_density_n4(int flow) {
    if (flow == 1) return -b(4) * b(5) * b(1, 1) - b(5) * b(2) * b(2, 1) + b(2) * b(4) * b(3, 1) - b(2) * b(6);
    if (flow == 2) return -b(3) * b(5) * b(2, 1) + b(4) * b(3) * b(3, 1) + b(1) * b(5) * b(5, 1) - b(3) * b(6);
    throw std::invalid_argument("flow must be 1 or 2");
}

RationalFunction momentum_density_n4() {
    return -b(3) * b(2) * b(2, 1) - b(1) * b(3) * b(4, 1) + b(1) * b(2) * b(5, 1) - b(1) * b(6) - b(3) * b(3);
}

std::vector<RationalFunction> casimir_densities_n4() {
    return {b(1),
            b(2),
            b(3),
            b(4) * b(1, 1),
            b(5) * b(1, 1) + b(3) * b(2, 1),
            b(5) * b(2, 1) + b(3) * b(4, 1) + b(6)};
}

RationalFunction hamiltonian_density_n3() { return q(-1, 2) * b(1, 1) * b(2) * b(2) - b(2) * b(3); }

const std::vector<std::string>& dataset_names() {
    static const std::vector<std::string> names{"n3", "n4y", "n4z", "K", "A1a", "A2n3", "g6", "psi6", "phi6", "eta1", "eta2"};
    return names;
}

namespace {

std::string flux_text(const HydroSystem& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.fluxes.size(); ++i) out += (i ? ",\n " : "") + algebra::to_prefix(s.fluxes[i]);
    return out + "]";
}

} // namespace

std::string dataset_text(const std::string& name) {
    static const std::map<std::string, std::function<std::string()>> table{
        {"n3", [] { return flux_text(build_systems(3)[0]); }},
        {"n4y", [] { return flux_text(build_systems(4)[0]); }},
        {"n4z", [] { return flux_text(build_systems(4)[1]); }},
        {"K", [] { return algebra::to_text(flat_metric(4)); }},
        {"A1a", [] { return diffop::to_text(first_operator(4)); }},
        {"A2n3", [] { return diffop::to_text(third_operator_n3()); }},
        {"g6", [] { return algebra::to_text(monge_metric(4)); }},
        {"psi6", [] { return algebra::to_text(factorization_n4().psi); }},
        {"phi6", [] { return algebra::to_text(factorization_n4().phi); }},
        {"eta1", [] { return algebra::to_text(eta_matrix(1)); }},
        {"eta2", [] { return algebra::to_text(eta_matrix(2)); }},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::out_of_range("unknown dataset: " + name);
    return it->second();
}

} // namespace wdvv::systems
