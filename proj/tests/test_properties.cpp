#include <doctest.h>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/diffop/operator.hpp>
#include <wdvv/geometry/geometry.hpp>

#include <random>

using namespace wdvv;
using algebra::Family;
using algebra::Monomial;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using algebra::Var;
using diffop::LocalOperator;
using diffop::ScalarOp;

namespace {

Polynomial random_poly(std::mt19937& rng, const std::vector<Var>& vars, int terms, int max_exp) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> ex(0, max_exp);
    std::vector<Polynomial::Term> ts;
    for (int t = 0; t < terms; ++t) {
        Monomial::Factors fs;
        for (auto v : vars) {
            int e = ex(rng);
            if (e) fs.push_back({v, static_cast<std::uint32_t>(e)});
        }
        int c = coeff(rng);
        ts.push_back({Monomial::from_factors(fs), Scalar(c == 0 ? 1 : c, 2)});
    }
    return Polynomial::from_terms(ts);
}

std::vector<Var> jet_vars() {
    return {Var(Family::a, 1, 0), Var(Family::a, 2, 0), Var(Family::a, 1, 1), Var(Family::a, 2, 2)};
}

RationalFunction random_rational(std::mt19937& rng) {
    auto vars = jet_vars();
    Polynomial den = random_poly(rng, vars, 2, 1) + 3;
    return RationalFunction(random_poly(rng, vars, 3, 2), den);
}

ScalarOp random_scalar_op(std::mt19937& rng, int order) {
    std::vector<Var> vars{Var(Family::a, 1, 0), Var(Family::a, 2, 0), Var(Family::a, 1, 1)};
    std::vector<RationalFunction> cs;
    for (int k = 0; k <= order; ++k) cs.emplace_back(random_poly(rng, vars, 2, 2));
    return ScalarOp(cs);
}

LocalOperator random_operator(std::mt19937& rng, int order) {
    LocalOperator op(jet::Chart{Family::a, 1, 2});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) op(i, j) = random_scalar_op(rng, order);
    }
    return op;
}

RationalFunction u(int i) { return jet::field(Family::u, i); }
RationalFunction a(int i) { return jet::field(Family::a, i); }

} // namespace

TEST_CASE("ring axioms for rational functions") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        CAPTURE(trial);
        auto x = random_rational(rng), y = random_rational(rng), z = random_rational(rng);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x - x).is_zero());
        if (!x.is_zero()) CHECK(x / x == RationalFunction(1));
        CHECK(x * RationalFunction(1) == x);
    }
}

TEST_CASE("prefix text and JSON round-trip") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        CAPTURE(trial);
        auto x = random_rational(rng);
        CHECK(algebra::parse_rational(algebra::to_prefix(x)) == x);
        CHECK(algebra::rational_from_json(algebra::to_json(x)) == x);
    }
}

TEST_CASE("total derivative obeys Leibniz and is killed by the Euler operator") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        CAPTURE(trial);
        auto f = random_rational(rng), g = random_rational(rng);
        CHECK(jet::total_derivative(f * g) == jet::total_derivative(f) * g + f * jet::total_derivative(g));
        auto df = jet::total_derivative(f);
        for (int c : {1, 2}) CHECK(jet::variational_derivative(df, Family::a, c).is_zero());
    }
}

TEST_CASE("adjoint is an anti-involution") {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 6; ++trial) {
        CAPTURE(trial);
        auto x = random_operator(rng, 2), y = random_operator(rng, 1);
        CHECK(diffop::adjoint(diffop::adjoint(x)) == x);
        CHECK(diffop::adjoint(diffop::compose(x, y)) == diffop::compose(diffop::adjoint(y), diffop::adjoint(x)));
        std::vector<RationalFunction> v{a(1) * a(2), jet::field(Family::a, 2, 1)};
        CHECK(diffop::apply(diffop::compose(x, y), v) == diffop::apply(x, diffop::apply(y, v)));
    }
}

TEST_CASE("Riemann tensor symmetries") {
    jet::Chart chart{Family::u, 1, 3};
    RationalMatrix g{{1 + u(2) * u(2), u(1), 0}, {u(1), 2, u(3)}, {0, u(3), 1 + u(1)}};
    auto rep = geometry::curvature(g, chart);
    const auto& r = rep.riemann_lowered;
    REQUIRE_FALSE(r.is_zero());
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) {
                for (std::size_t l = 0; l < 3; ++l) {
                    CAPTURE(i * 27 + j * 9 + k * 3 + l);
                    CHECK(r.at({i, j, k, l}) == -r.at({j, i, k, l}));
                    CHECK(r.at({i, j, k, l}) == -r.at({i, j, l, k}));
                    CHECK(r.at({i, j, k, l}) == r.at({k, l, i, j}));
                    CHECK((r.at({i, j, k, l}) + r.at({i, k, l, j}) + r.at({i, l, j, k})).is_zero());
                }
            }
        }
    }
    CHECK(rep.ricci.is_symmetric());
}

TEST_CASE("metric pushforward is functorial") {
    jet::Chart x{Family::u, 1, 2}, y{Family::a, 1, 2}, z{Family::p, 1, 2};
    geometry::CoordinateMap first{x, y, {u(1) + u(2) * u(2), u(2)}};
    geometry::CoordinateMap back{y, x, {a(1) - a(2) * a(2), a(2)}};
    geometry::CoordinateMap second{y, z, {a(1) * a(2) + 1, a(2) + a(1) * a(1)}};
    RationalMatrix g{{1 + u(1) * u(1), u(2)}, {u(2), 3}};

    CHECK(compose(back, first).images == std::vector<RationalFunction>{u(1), u(2)});

    auto both = geometry::compose(second, first);
    auto j2 = first.pull(second.jacobian());
    auto stepwise = j2 * geometry::pushforward_inverse_metric(g, first) * j2.transpose();
    CHECK(geometry::pushforward_inverse_metric(g, both) == stepwise);

    auto j2inv = algebra::inverse(j2);
    auto covariant = j2inv.transpose() * geometry::pushforward_metric(g, first) * j2inv;
    CHECK(geometry::pushforward_metric(g, both) == covariant);

    auto there = back.pull(geometry::pushforward_metric(g, first));
    CHECK(first.pull(geometry::pushforward_metric(there, back)) == g);

    auto contravariant = back.pull(geometry::pushforward_inverse_metric(g, first));
    CHECK(geometry::pullback_inverse_metric(contravariant, first) == g);
}
