#include <doctest.h>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/reconstruct/reconstruct.hpp>

using namespace wdvv;
using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using algebra::ScalarMatrix;

namespace {

RationalFunction a(int i) { return jet::field(Family::a, i); }
RationalFunction b(int i, int k = 0) { return jet::field(Family::b, i, k); }

const reconstruct::ParallelSolution& published() {
    static const auto s = [] {
        auto f = systems::factorization_n4();
        return reconstruct::split(f.psi, f.phi, f.chart);
    }();
    return s;
}

const diffop::LocalOperator& reduced_n4() {
    static const auto op = diffop::reduce_to_first_order_in_b(systems::factorization_n4());
    return op;
}

std::vector<RationalFunction> column(const RationalMatrix& m, std::size_t c) {
    std::vector<RationalFunction> v;
    for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, c));
    return v;
}

std::vector<RationalFunction> zeros(std::size_t n) { return std::vector<RationalFunction>(n); }

} // namespace

TEST_CASE("constant metric: coordinate covectors and phi = g") {
    jet::Chart chart{Family::a, 1, 3};
    RationalMatrix g{{0, 0, 1}, {0, 1, 0}, {1, 0, 2}};
    auto psi = reconstruct::solve_parallel_system(g, chart);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(psi(i, j).is_constant());
    }
    RationalMatrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto phi = reconstruct::compute_phi(g, id);
    CHECK(phi.map([](const Scalar& s) { return RationalFunction(s); }) == g);
    auto s = reconstruct::split(id, phi, chart);
    auto cs = reconstruct::casimirs(s);
    CHECK(cs == std::vector<RationalFunction>{b(1), b(2), b(3)});
    CHECK(reconstruct::momentum(s) == -(b(1) * b(3) + RationalFunction(Scalar(1, 2)) * b(2) * b(2) + b(3) * b(3)));
}

TEST_CASE("published psi solves the parallel system") {
    auto g = systems::monge_metric(4);
    auto chart = systems::a_chart(4);
    auto f = systems::factorization_n4();
    for (std::size_t c = 0; c < 6; ++c) {
        CAPTURE(c);
        auto v = reconstruct::check_parallel(g, chart, column(f.psi, c));
        CHECK_MESSAGE(v.passed, v.residual);
    }
    std::vector<RationalFunction> wrong = column(f.psi, 1);
    wrong[0] += a(2);
    CHECK_FALSE(reconstruct::check_parallel(g, chart, wrong).passed);
    CHECK(reconstruct::compute_phi(g, f.psi) == f.phi);
}

TEST_CASE("six-component metric decomposition from scratch") {
    auto g = systems::monge_metric(4);
    auto chart = systems::a_chart(4);
    auto s = reconstruct::decompose(g, chart);
    REQUIRE(s.dim() == 6);
    CHECK(s.phi.is_symmetric());
    CHECK(sgn(algebra::determinant(s.phi)) != 0);
    CHECK(s.psi * s.phi.map([](const Scalar& x) { return RationalFunction(x); }) * s.psi.transpose() == g);
    auto det_psi = algebra::determinant(s.psi);
    CHECK(det_psi * det_psi * RationalFunction(algebra::determinant(s.phi)) == algebra::determinant(g));

    auto skew = reconstruct::check_skew(s);
    CHECK_MESSAGE(skew.passed, skew.residual);
    auto cyclic = reconstruct::check_cyclic(s);
    CHECK_MESSAGE(cyclic.passed, cyclic.residual);
    CHECK(diffop::build_factorized(s.factorized()) == diffop::build_third_order_canonical({g, chart}));

    auto op = diffop::reduce_to_first_order_in_b(s.factorized());
    for (const auto& c : reconstruct::casimirs(s)) {
        auto v = reconstruct::check_generates(op, c, zeros(6));
        CHECK_MESSAGE(v.passed, v.residual);
    }
    auto p = reconstruct::check_generates(op, reconstruct::momentum(s), reconstruct::translation(chart.with_family(Family::b)));
    CHECK_MESSAGE(p.passed, p.residual);
}

TEST_CASE("the parallel system rejects a non-Potemin metric") {
    jet::Chart chart{Family::a, 1, 3};
    RationalMatrix g{{1 + a(2) * a(2), a(1), 0}, {a(1), 2, a(3)}, {0, a(3), 1 + a(1)}};
    CHECK_THROWS_AS(reconstruct::solve_parallel_system(g, chart), reconstruct::NotPotemin);
}

TEST_CASE("constraints on the published six-component data") {
    const auto& s = published();
    auto skew = reconstruct::check_skew(s);
    CHECK_MESSAGE(skew.passed, skew.residual);
    auto cyclic = reconstruct::check_cyclic(s);
    CHECK_MESSAGE(cyclic.passed, cyclic.residual);
    for (int flow : {1, 2}) {
        CAPTURE(flow);
        auto v = reconstruct::check_eta_constraints(s, systems::eta_matrix(flow));
        CHECK_MESSAGE(v.passed, v.residual);
    }
    auto broken = s;
    broken.lin[1](0, 4) += 1;
    CHECK_FALSE(reconstruct::check_skew(broken).passed);
    ScalarMatrix bad_eta = systems::eta_matrix(1);
    bad_eta(0, 0) = 1;
    CHECK_FALSE(reconstruct::check_eta_constraints(s, bad_eta).passed);
    CHECK_THROWS_AS(reconstruct::hamiltonian_density(s, bad_eta), reconstruct::ConstraintViolation);
}

TEST_CASE("eta matrices of the six-component flows") {
    auto sys = systems::build_systems(4);
    CHECK(reconstruct::eta_matrix(published(), sys[0]) == systems::eta_matrix(1));
    CHECK(reconstruct::eta_matrix(published(), sys[1]) == systems::eta_matrix(2));
    CHECK(systems::eta_matrix(1)(4, 2) == Scalar(-2));

    systems::HydroSystem zero{"zero", systems::a_chart(4), zeros(6)};
    CHECK(reconstruct::eta_matrix(published(), zero) == ScalarMatrix(6, 6));
    systems::HydroSystem quadratic = zero;
    quadratic.fluxes[0] = a(1) * a(1);
    CHECK_THROWS_AS(reconstruct::eta_matrix(published(), quadratic), reconstruct::NonlinearFlow);
}

TEST_CASE("six Casimirs give zero flows") {
    auto cs = reconstruct::casimirs(published());
    auto listed = systems::casimir_densities_n4();
    REQUIRE(cs.size() == 6);
    for (const auto& c : listed) {
        auto v = reconstruct::check_generates(reduced_n4(), c, zeros(6));
        CHECK_MESSAGE(v.passed, v.residual);
    }
    for (const auto& c : cs) {
        auto v = reconstruct::check_generates(reduced_n4(), c, zeros(6));
        CHECK_MESSAGE(v.passed, v.residual);
    }
    CHECK_FALSE(reconstruct::check_generates(reduced_n4(), b(1) * b(1), zeros(6)).passed);

    // Both families span the same space modulo total derivatives.
    auto bchart = systems::a_chart(4).with_family(Family::b);
    RationalMatrix ours(6, 6), theirs(6, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        auto x = reconstruct::gradient(cs[k], bchart);
        auto y = reconstruct::gradient(listed[k], bchart);
        for (std::size_t i = 0; i < 6; ++i) {
            ours(i, k) = x[i];
            theirs(i, k) = y[i];
        }
    }
    auto change = algebra::inverse(ours) * theirs;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) CHECK(change(i, j).is_constant());
    }
    CHECK_FALSE(algebra::determinant(change).is_zero());
}

TEST_CASE("momentum generates translation") {
    auto p = reconstruct::momentum(published());
    CHECK(jet::is_trivial_density(p - systems::momentum_density_n4()));
    auto bchart = systems::a_chart(4).with_family(Family::b);
    auto v = reconstruct::check_generates(reduced_n4(), p, reconstruct::translation(bchart));
    CHECK_MESSAGE(v.passed, v.residual);
    auto w = reconstruct::check_generates(reduced_n4(), systems::momentum_density_n4(), reconstruct::translation(bchart));
    CHECK_MESSAGE(w.passed, w.residual);
}

TEST_CASE("Hamiltonians of the reduced third-order operator") {
    auto sys = systems::build_systems(4);
    for (int flow : {1, 2}) {
        CAPTURE(flow);
        const auto& target = sys[static_cast<std::size_t>(flow - 1)];
        auto eta = systems::eta_matrix(flow);
        auto expected = reconstruct::potential_flow(target);

        auto z = reconstruct::zeta(published(), eta);
        for (std::size_t p = 0; p < 6; ++p) {
            for (std::size_t q = 0; q < 6; ++q) {
                for (std::size_t m = 0; m < 6; ++m) CHECK(z[(p * 6 + q) * 6 + m] == z[(q * 6 + p) * 6 + m]);
            }
        }

        auto h = reconstruct::hamiltonian_density(published(), eta);
        CHECK(jet::is_trivial_density(h - systems::hamiltonian_density_n4(flow)));
        auto v = reconstruct::check_generates(reduced_n4(), h, expected);
        CHECK_MESSAGE(v.passed, v.residual);
        auto w = reconstruct::check_generates(reduced_n4(), systems::hamiltonian_density_n4(flow), expected);
        CHECK_MESSAGE(w.passed, w.residual);

        auto reduced = reconstruct::hamiltonian_density(published(), eta, reconstruct::ZetaMode::reduced);
        CHECK(jet::is_trivial_density(reduced - h));
    }
    auto wrong = reconstruct::check_generates(reduced_n4(), systems::hamiltonian_density_n4(1), reconstruct::potential_flow(sys[1]));
    CHECK_FALSE(wrong.passed);
}

TEST_CASE("first-order Hamiltonians in flat coordinates") {
    auto sys = systems::build_systems(4);
    auto h7 = reconstruct::check_first_order_flow(4, a(5), &sys[0]);
    CHECK_MESSAGE(h7.passed, h7.residual);
    auto h8 = reconstruct::check_first_order_flow(4, RationalFunction(Scalar(1, 2)) * a(6), &sys[1]);
    CHECK_MESSAGE(h8.passed, h8.residual);
    auto h6 = reconstruct::check_first_order_flow(4, a(3), nullptr);
    CHECK_MESSAGE(h6.passed, h6.residual);
    CHECK_FALSE(reconstruct::check_first_order_flow(4, a(5), &sys[1]).passed);
}

TEST_CASE("three-component third-order operator in potentials") {
    auto g = systems::monge_metric(3);
    auto chart = systems::a_chart(3);
    auto s = reconstruct::decompose(g, chart);
    CHECK(diffop::build_factorized(s.factorized()) == systems::third_operator_n3());
    auto op = diffop::reduce_to_first_order_in_b(s.factorized());
    auto flow = reconstruct::potential_flow(systems::build_systems(3)[0]);
    CHECK(flow == std::vector<RationalFunction>{b(2, 1), b(3, 1), b(2, 1) * b(2, 1) - b(1, 1) * b(3, 1)});
    auto v = reconstruct::check_generates(op, systems::hamiltonian_density_n3(), flow);
    CHECK_MESSAGE(v.passed, v.residual);

    auto eta = reconstruct::eta_matrix(s, systems::build_systems(3)[0]);
    auto h = reconstruct::hamiltonian_density(s, eta);
    CHECK(jet::is_trivial_density(h - systems::hamiltonian_density_n3()));
    for (const auto& c : reconstruct::casimirs(s)) {
        auto z = reconstruct::check_generates(op, c, zeros(3));
        CHECK_MESSAGE(z.passed, z.residual);
    }
}
