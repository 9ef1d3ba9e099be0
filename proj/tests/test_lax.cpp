#include <doctest.h>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/lax/lax.hpp>

#include <filesystem>

using namespace wdvv;
using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using diffop::ScalarOp;

namespace {

RationalFunction a(int i) { return jet::field(Family::a, i); }
RationalFunction u(int i, int k = 0) { return jet::field(Family::u, i, k); }
RationalFunction lam(int p = 1) { return RationalFunction(jet::kLambda).pow(p); }

ScalarOp op(std::vector<RationalFunction> cs) { return ScalarOp(std::move(cs)); }
ScalarOp d(int k) { return ScalarOp::monomial(RationalFunction(1), k); }

std::vector<lax::BranchExpansion> expand_all(int N, int depth) {
    std::vector<lax::BranchExpansion> out;
    for (int k = 1; k <= N; ++k) out.push_back(lax::expand_branch(N, k, depth));
    return out;
}

const std::vector<lax::BranchExpansion>& n3_depth3() {
    static const auto branches = expand_all(3, 3);
    return branches;
}

const std::vector<lax::BranchExpansion>& n4_depth1() {
    static const auto branches = expand_all(4, 1);
    return branches;
}

} // namespace

TEST_CASE("scalar reduction of the N = 4 Lax pair matches the displayed equation") {
    RationalFunction a1 = a(1);
    ScalarOp lhs = op({lam(4) * (a(6) - a(3) * a(3) / a1), lam(3) * (a(5) - a(2) * a(3) / a1), lam(2) * a(3) / a1});
    ScalarOp inner = op({-lam(2) * a(3) / a1, -lam() * a(2) / a1, 1 / a1});
    ScalarOp outer = op({lam(3) * (a(2) * a(3) / a1 - a(5)), lam(2) * (a(2) * a(2) / a1 - a(4)), -lam() * a(2) / a1});
    ScalarOp rhs = diffop::compose(d(2), inner) + diffop::compose(d(1), outer);
    ScalarOp eq = lax::scalar_lax_reduction(systems::lax_matrix(4));
    CHECK(lam(3) * eq == rhs - lhs);
    CHECK(eq.coeff(4) == 1 / (lam(3) * a1));
}

TEST_CASE("Riccati substitution") {
    ScalarOp second = d(2);
    RationalFunction r(lax::riccati_var()), rx(lax::riccati_var(1));
    CHECK(lax::riccati_substitution(second) == rx + r * r);

    // The top λ-coefficient with r = λρ is the characteristic polynomial.
    ScalarOp eq = lax::scalar_lax_reduction(systems::lax_matrix(4));
    RationalFunction rho(jet::kRho);
    RationalFunction sub = lax::riccati_substitution(eq).substitute(lax::riccati_var(), lam() * rho);
    for (int k = 1; k <= 3; ++k) sub = sub.substitute(lax::riccati_var(k), RationalFunction(0));
    auto coeffs = lax::laurent_coefficients(sub, jet::kLambda);
    REQUIRE_FALSE(coeffs.empty());
    auto top = coeffs.rbegin();
    CHECK(top->first == 1);
    auto cp = RationalFunction(systems::characteristic_polynomial(systems::lax_matrix(4)));
    CHECK(top->second == cp / a(1));
}

TEST_CASE("Laurent coefficients") {
    RationalFunction e = (lam(2) * a(1) + a(2)) / (lam() * a(1));
    auto c = lax::laurent_coefficients(e, jet::kLambda);
    REQUIRE(c.size() == 2);
    CHECK(c.at(1) == RationalFunction(1));
    CHECK(c.at(-1) == a(2) / a(1));
    CHECK_THROWS_AS(lax::laurent_coefficients(1 / (lam() + 1), jet::kLambda), std::invalid_argument);
}

TEST_CASE("three-component expansion") {
    const auto& bs = n3_depth3();
    RationalFunction p = (u(1) - u(2)) * (u(1) - u(3));
    CHECK(bs[0].leading == u(1));
    CHECK(bs[0].h[0] == RationalFunction(Scalar(-1, 2)) * jet::total_derivative(p) / p);
    RationalFunction sum;
    for (const auto& b : bs) {
        CAPTURE(b.branch);
        CHECK(jet::is_trivial_density(b.h[0]));
        CHECK(jet::is_trivial_density(b.h[2]));
        CHECK_FALSE(jet::is_trivial_density(b.h[1]));
        CHECK_FALSE(jet::is_trivial_density(b.h[3]));
        for (int i = 0; i <= 3; ++i) CHECK(lax::differential_degree(b.h[static_cast<std::size_t>(i)], Family::u) == i + 1);
        sum += b.h[1];
    }
    CHECK(jet::is_trivial_density(sum));
}

TEST_CASE("three-component densities are conserved") {
    const auto& bs = n3_depth3();
    auto map = systems::viete_map(3);
    auto flow = systems::build_systems(3)[0];
    for (const auto& b : bs) {
        CAPTURE(b.branch);
        auto v = lax::check_conserved(b.h[1], map, flow);
        CHECK_MESSAGE(v.passed, v.residual);
    }
    auto fake = lax::check_conserved(u(1, 1) * u(1, 1), map, flow);
    CHECK_FALSE(fake.passed);
}

TEST_CASE("three-component reconstruction of the Monge metric") {
    auto q = lax::extract_forms(n3_depth3());
    REQUIRE(q.G.size() == 3);
    REQUIRE(q.Q.size() == 3);
    for (const auto& g : q.G) CHECK(g.is_symmetric());
    for (const auto& x : q.Q) CHECK(x.is_symmetric());

    auto map = systems::viete_map(3);
    RationalMatrix expected = map.pull(systems::third_operator_n3().coefficient(3));
    auto k = systems::flat_metric(3);
    // Recursion constant of this Lax normalization, fixed by leading-order
    // matching of A₁δH₃ₖ with A₂δH₁ₖ.
    const Scalar kappa(1, 2);
    for (const auto& xi : std::vector<std::vector<Scalar>>{{1, 2, 0}, {1, Scalar(1, 3), 0}, {2, -1, 0}}) {
        auto g = lax::reconstruct_leading_metric(q, k, xi, kappa);
        CHECK(geometry::pushforward_inverse_metric(g, map) == expected);
    }
    CHECK_THROWS_AS(lax::reconstruct_leading_metric(q, k, {1, 0, 0}), lax::DegenerateXi);
    CHECK_THROWS_AS(lax::reconstruct_leading_metric(q, k, {0, 1, 1}), lax::DegenerateXi);
    CHECK_THROWS_AS(lax::reconstruct_leading_metric(q, k, {0, 0, 0}), lax::DegenerateXi);
    auto chosen = lax::choose_xi(q, {1, 0, 0});
    CHECK_NOTHROW(lax::reconstruct_leading_metric(q, k, chosen, kappa));
    CHECK(lax::choose_xi(q, {1, 2, 0}) == std::vector<Scalar>{1, 2, 0});
}

TEST_CASE("six-component expansion to degree two") {
    const auto& bs = n4_depth1();
    RationalFunction sum;
    for (const auto& b : bs) {
        CAPTURE(b.branch);
        CHECK(b.leading == u(b.branch));
        CHECK(jet::is_trivial_density(b.h[0]));
        CHECK(lax::differential_degree(b.h[1], Family::u) == 2);
        sum += b.h[1];
    }
    CHECK(jet::is_trivial_density(sum));

    // Independence of h₁₁, h₁₂, h₁₃ modulo total derivatives: their
    // gradients have rank three at a rational point.
    std::map<algebra::Var, Scalar> point;
    const long values[] = {3, 5, 7, 11, 13, 17};
    for (int c = 0; c < 6; ++c) {
        for (int order = 0; order <= 2; ++order) point[jet::jet(Family::u, c, order)] = Scalar(values[c] + 2 * order);
    }
    algebra::ScalarMatrix grads(3, 6);
    for (std::size_t k = 0; k < 3; ++k) {
        for (int c = 0; c < 6; ++c) {
            auto e = jet::variational_derivative(bs[k].h[1], Family::u, c).evaluate(point);
            REQUIRE(e.is_constant());
            grads(k, static_cast<std::size_t>(c)) = e.constant_value();
        }
    }
    CHECK(algebra::rank(grads) == 3);

    auto q = lax::extract_forms(bs);
    CHECK(q.Q.empty());
    RationalMatrix c = lax::combine(q.G, {1, Scalar(1, 3), 0, Scalar(1, 2)});
    algebra::ScalarMatrix at = c.map([&](const RationalFunction& e) { return e.evaluate(point).constant_value(); });
    CHECK(sgn(algebra::determinant(at)) != 0);
}

TEST_CASE("six-component densities are conserved by both flows") {
    auto map = systems::viete_map(4);
    const auto& b = n4_depth1()[0];
    for (const auto& flow : systems::build_systems(4)) {
        CAPTURE(flow.label);
        auto v = lax::check_conserved(b.h[1], map, flow);
        CHECK_MESSAGE(v.passed, v.residual);
    }
}

TEST_CASE("branch arguments") {
    CHECK_THROWS_AS(lax::expand_branch(4, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(lax::expand_branch(4, 5, 1), std::out_of_range);
    CHECK_THROWS_AS(lax::expand_branch(3, 4, 1), std::out_of_range);
}

TEST_CASE("expansions are cached and budgets stop early") {
    auto dir = std::filesystem::temp_directory_path() / "wdvv-test-cache";
    std::filesystem::remove_all(dir);
    lax::ExpandOptions opts;
    opts.cache = support::Cache(dir);
    auto first = lax::expand_branch(3, 2, 1, opts);
    auto path = opts.cache->path_for("expansion", lax::expansion_key(3, 2, 1));
    CHECK(std::filesystem::exists(path));
    auto again = lax::expand_branch(3, 2, 1, opts);
    CHECK(again.h == first.h);
    CHECK(lax::expansion_from_json(lax::to_json(first)).h == first.h);
    CHECK(lax::expansion_key(3, 2, 1) != lax::expansion_key(3, 2, 2));

    lax::ExpandOptions tight;
    tight.budget = support::Budget(0.0, std::nullopt);
    std::vector<int> seen;
    tight.progress = [&](const lax::BranchExpansion& e) { seen.push_back(e.depth()); };
    CHECK_THROWS_AS(lax::expand_branch(3, 1, 3, tight), support::BudgetExceeded);
    std::filesystem::remove_all(dir);
}
