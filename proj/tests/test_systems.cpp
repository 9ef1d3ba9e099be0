#include <doctest.h>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/systems/systems.hpp>

using namespace wdvv;
using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;

namespace {

RationalFunction a(int i) { return jet::field(Family::a, i); }
RationalFunction u(int i) { return jet::field(Family::u, i); }

RationalMatrix lift(const algebra::ScalarMatrix& m) {
    return m.map([](const Scalar& s) { return RationalFunction(s); });
}

} // namespace

TEST_CASE("the N = 4 flows commute") {
    auto sys = systems::build_systems(4);
    REQUIRE(sys.size() == 2);
    CHECK(sys[0].label == "y");
    CHECK(sys[1].label == "z");
    auto verdict = systems::verify_commuting(sys[0], sys[1]);
    CHECK_MESSAGE(verdict.passed, verdict.residual);

    auto broken = sys[1];
    broken.fluxes[5] += a(1);
    auto bad = systems::verify_commuting(sys[0], broken);
    CHECK_FALSE(bad.passed);
    CHECK(bad.residual.rfind("component", 0) == 0);
}

TEST_CASE("characteristic polynomial of the Lax matrix") {
    auto rho = RationalFunction(jet::kRho);
    RationalFunction expected = rho * rho * rho * rho - 2 * a(2) * rho * rho * rho +
                                (a(2) * a(2) - 2 * a(3) - a(1) * a(4)) * rho * rho +
                                2 * (a(2) * a(3) - a(1) * a(5)) * rho + a(3) * a(3) - a(1) * a(6);
    auto lax = systems::lax_matrix(4);
    CHECK(RationalFunction(systems::characteristic_polynomial(lax)) == expected);
    RationalFunction trace;
    for (std::size_t i = 0; i < 4; ++i) trace += lax(i, i);
    CHECK(trace == 2 * a(2));
}

TEST_CASE("the Viete map factors the characteristic polynomial") {
    for (int N : {3, 4}) {
        CAPTURE(N);
        auto map = systems::viete_map(N);
        auto poly = RationalFunction(systems::characteristic_polynomial(systems::lax_matrix(N)));
        RationalFunction pulled = map.pull(poly);
        RationalFunction product(1);
        auto rho = RationalFunction(jet::kRho);
        for (int k = 1; k <= N; ++k) product *= u(k) - rho;
        CHECK(pulled == product);
    }
    auto map = systems::viete_map(4);
    std::map<algebra::Var, Scalar> point;
    for (int k = 0; k < 6; ++k) point[jet::jet(Family::u, k)] = Scalar(k);
    point[jet::jet(Family::u, 0)] = Scalar(1);
    CHECK(map.images[1].evaluate(point) == RationalFunction(5));
}

TEST_CASE("flat coordinates of the first-order operators") {
    for (int N : {3, 4}) {
        CAPTURE(N);
        auto map = systems::viete_map(N);
        auto k = lift(systems::flat_metric(N));
        auto g = map.pull(systems::first_operator(N).coefficient(1));
        CHECK(geometry::pushforward_inverse_metric(k, map) == g);
        CHECK(systems::flat_metric(N).is_symmetric());
    }
}

TEST_CASE("N = 3 metric is flat") {
    auto report = geometry::curvature(systems::monge_metric(3), systems::a_chart(3));
    CHECK(report.riemann.is_zero());
    CHECK(report.scalar.is_zero());
}

TEST_CASE("N = 4 third-order operator") {
    auto g = systems::monge_metric(4);
    auto chart = systems::a_chart(4);
    CHECK(g.is_symmetric());
    auto monge = poisson::check_monge(g, chart);
    CHECK_MESSAGE(monge.passed, monge.residual);
    auto pot = poisson::check_potemin(g, chart);
    CHECK_MESSAGE(pot.passed, pot.residual);

    auto a1 = a(1);
    CHECK(algebra::determinant(g) == a1 * a1 * a1 * a1);
    auto f = systems::factorization_n4();
    CHECK(algebra::determinant(f.psi) == -a1 * a1);
    CHECK(algebra::determinant(f.phi) == Scalar(1));
    CHECK(f.psi * lift(f.phi) * f.psi.transpose() == g);

    auto canonical = diffop::build_third_order_canonical({g, chart});
    CHECK(diffop::build_factorized(f) == canonical);
    CHECK(poisson::is_skew_adjoint(canonical));

    auto report = geometry::curvature(g, chart);
    CHECK_FALSE(report.riemann.is_zero());
    CHECK(report.scalar.is_zero());
    CHECK_FALSE(report.weyl.is_zero());
}

TEST_CASE("N = 4 operators are Hamiltonian and compatible") {
    auto a1 = systems::first_operator(4);
    auto a2 = diffop::build_third_order_canonical({systems::monge_metric(4), systems::a_chart(4)});
    auto dn = poisson::check_first_order_dn(poisson::first_order_data(a1));
    CHECK_MESSAGE(dn.passed, dn.residual);
    auto v11 = poisson::schouten_bracket_vanishes(a1, a1);
    CHECK_MESSAGE(v11.passed, v11.residual);
    auto v22 = poisson::schouten_bracket_vanishes(a2, a2);
    CHECK_MESSAGE(v22.passed, v22.residual);
    auto v12 = poisson::schouten_bracket_vanishes(a1, a2);
    CHECK_MESSAGE(v12.passed, v12.residual);
}

TEST_CASE("datasets") {
    for (const auto& name : systems::dataset_names()) {
        CAPTURE(name);
        CHECK_FALSE(systems::dataset_text(name).empty());
    }
    CHECK_THROWS_AS(systems::dataset_text("nope"), std::out_of_range);
    CHECK(systems::dataset_text("n3") == "[a[2,0],\n a[3,0],\n (+ (* -1 a[1,0] a[3,0]) (^ a[2,0] 2))]");
    CHECK_THROWS_AS(systems::build_systems(5), std::invalid_argument);
}
