#include <doctest.h>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/poisson/poisson.hpp>
#include <wdvv/systems/systems.hpp>

using namespace wdvv;
using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using diffop::LocalOperator;

namespace {

RationalFunction a(int i) { return jet::field(Family::a, i); }

LocalOperator constant_first_order(const algebra::ScalarMatrix& k, jet::Chart chart) {
    return LocalOperator::from_matrix(k.map([](const Scalar& s) { return RationalFunction(s); }), 1, chart);
}

} // namespace

TEST_CASE("skew-adjointness of first-order operators") {
    jet::Chart chart{Family::u, 0, 6};
    CHECK(poisson::is_skew_adjoint(constant_first_order(systems::flat_metric(4), chart)));
    algebra::ScalarMatrix nonsym{{Scalar(1), Scalar(2)}, {Scalar(0), Scalar(1)}};
    CHECK_FALSE(poisson::is_skew_adjoint(constant_first_order(nonsym, jet::Chart{Family::u, 1, 2})));
    CHECK(poisson::is_skew_adjoint(systems::first_operator(4)));
}

TEST_CASE("Schouten bracket of a constant operator with itself") {
    jet::Chart chart{Family::u, 0, 6};
    auto k = constant_first_order(systems::flat_metric(4), chart);
    auto verdict = poisson::schouten_bracket_vanishes(k, k);
    CHECK(verdict.passed);
}

TEST_CASE("three-component operators are Hamiltonian and compatible") {
    auto a1 = systems::first_operator(3);
    auto a2 = systems::third_operator_n3();
    CHECK(poisson::is_skew_adjoint(a1));
    CHECK(poisson::is_skew_adjoint(a2));
    auto v11 = poisson::schouten_bracket_vanishes(a1, a1);
    CHECK_MESSAGE(v11.passed, v11.residual);
    auto v22 = poisson::schouten_bracket_vanishes(a2, a2);
    CHECK_MESSAGE(v22.passed, v22.residual);
    auto v12 = poisson::schouten_bracket_vanishes(a1, a2);
    CHECK_MESSAGE(v12.passed, v12.residual);
}

TEST_CASE("Potemin system and Schouten bracket agree on perturbed metrics") {
    auto chart = systems::a_chart(3);
    std::vector<RationalMatrix> metrics{systems::monge_metric(3)};
    // Sums of Monge metrics stay Monge, so the operators stay skew-adjoint.
    RationalMatrix p1 = systems::monge_metric(3);
    p1(2, 2) += 1;
    metrics.push_back(p1);
    RationalMatrix p2 = systems::monge_metric(3);
    p2(1, 1) += a(1);
    p2(0, 1) -= RationalFunction(Scalar(1, 2)) * a(2);
    p2(1, 0) -= RationalFunction(Scalar(1, 2)) * a(2);
    metrics.push_back(p2);
    std::vector<bool> expected{true, false, false};
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        CAPTURE(i);
        auto op = diffop::build_third_order_canonical({metrics[i], chart});
        REQUIRE(poisson::check_monge(metrics[i], chart).passed);
        REQUIRE(poisson::is_skew_adjoint(op));
        bool potemin = poisson::check_potemin(metrics[i], chart).passed;
        bool schouten = poisson::schouten_bracket_vanishes(op, op).passed;
        CHECK(potemin == expected[i]);
        CHECK(schouten == potemin);
    }
}

TEST_CASE("three-component Monge metric") {
    auto g = systems::monge_metric(3);
    auto chart = systems::a_chart(3);
    CHECK(poisson::check_monge(g, chart).passed);
    auto pot = poisson::check_potemin(g, chart);
    CHECK_MESSAGE(pot.passed, pot.residual);
    RationalMatrix ginv = algebra::inverse(g);
    CHECK(ginv == systems::third_operator_n3().coefficient(3));
    CHECK(diffop::build_third_order_canonical({g, chart}) == systems::third_operator_n3());
}

TEST_CASE("Monge condition rejects a cubic entry") {
    jet::Chart chart{Family::a, 1, 2};
    RationalMatrix g{{a(1) * a(1) * a(1), 0}, {0, 1}};
    auto out = poisson::check_monge(g, chart);
    CHECK_FALSE(out.passed);
    CHECK(out.residual.find("(* 9 (^ a[1,0] 2))") != std::string::npos);
}

TEST_CASE("first-order Dubrovin-Novikov criterion") {
    jet::Chart chart{Family::u, 0, 6};
    auto k = constant_first_order(systems::flat_metric(4), chart);
    CHECK(poisson::check_first_order_dn(poisson::first_order_data(k)).passed);

    auto three = poisson::check_first_order_dn(poisson::first_order_data(systems::first_operator(3)));
    CHECK_MESSAGE(three.passed, three.residual);
    auto six = poisson::check_first_order_dn(poisson::first_order_data(systems::first_operator(4)));
    CHECK_MESSAGE(six.passed, six.residual);

    jet::Chart two{Family::u, 1, 2};
    RationalMatrix g{{jet::field(Family::u, 1), 0}, {0, 1}};
    diffop::FirstOrderDN bad{g, {RationalMatrix(2, 2), RationalMatrix(2, 2)}, two};
    CHECK_FALSE(poisson::check_first_order_dn(bad).passed);

    // Levi-Civita data of the hyperbolic half-plane: compatible and
    // symmetric, but curved.
    RationalFunction y = jet::field(Family::u, 2);
    RationalMatrix gcov{{1 / (y * y), 0}, {0, 1 / (y * y)}};
    auto gamma = geometry::christoffel(gcov, two);
    RationalMatrix gup = algebra::inverse(gcov);
    diffop::FirstOrderDN curved{gup, {RationalMatrix(2, 2), RationalMatrix(2, 2)}, two};
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t s = 0; s < 2; ++s) {
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) curved.b[k](s, i) -= gup(s, j) * gamma.at({i, j, k});
            }
        }
    }
    auto verdict = poisson::check_first_order_dn(curved);
    CHECK_FALSE(verdict.passed);
    CHECK(verdict.residual.rfind("curvature", 0) == 0);
}
