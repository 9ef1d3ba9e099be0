#include <doctest.h>

#include <wdvv/cli/commands.hpp>
#include <wdvv/lax/lax.hpp>

#include <filesystem>

using namespace wdvv;
using algebra::Scalar;

namespace {

support::Cache scratch_cache(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("wdvv-test-cli-" + name);
    std::filesystem::remove_all(dir);
    return support::Cache(dir);
}

} // namespace

TEST_CASE("xi parsing") {
    CHECK(cli::parse_xi("1,1/3,0,1/2") == std::vector<Scalar>{1, Scalar(1, 3), 0, Scalar(1, 2)});
    CHECK(cli::parse_xi(" 2/4, -3 ") == std::vector<Scalar>{Scalar(1, 2), -3});
    auto xi = cli::parse_xi("6/4");
    CHECK(xi[0].get_num() == 3);
    CHECK(xi[0].get_den() == 2);
    CHECK_THROWS_AS(cli::parse_xi(""), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_xi("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_xi("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_xi("x"), std::invalid_argument);
}

TEST_CASE("named operators and budget defaults") {
    for (const auto& name : cli::operator_names()) CHECK_NOTHROW(cli::named_operator(name));
    CHECK_THROWS_AS(cli::named_operator("A3"), std::out_of_range);
    CHECK(cli::named_operator("K").order() == 1);
    CHECK(cli::named_operator("g6").order() == 3);

    auto capped = cli::expansion_budget(4, 3, std::nullopt, std::nullopt);
    CHECK(capped.seconds() == 600.0);
    CHECK(capped.gigabytes() == 2.0);
    CHECK_FALSE(cli::expansion_budget(4, 2, std::nullopt, std::nullopt).seconds());
    CHECK_FALSE(cli::expansion_budget(3, 3, std::nullopt, std::nullopt).seconds());
    auto explicit_time = cli::expansion_budget(4, 3, 5.0, std::nullopt);
    CHECK(explicit_time.seconds() == 5.0);
    CHECK_FALSE(explicit_time.gigabytes());
    CHECK(cli::default_kappa(3) == Scalar(1, 2));
}

TEST_CASE("manifest round trip") {
    cli::Manifest m;
    m.command = "schouten K A1a";
    m.checks.push_back({"first", "a passing check", true, {}, 0.25, 12});
    m.checks.push_back({"second", "a failing check", false, "entry [1,2]: u1", 1.5, 40});
    m.data["N"] = 4;
    m.stopped = "time budget exceeded";

    auto j = cli::to_json(m, true);
    CHECK(j.at("schema") == cli::kManifestSchema);
    CHECK(j.at("status") == "fail");
    auto back = cli::manifest_from_json(j);
    CHECK(back.command == m.command);
    REQUIRE(back.checks.size() == 2);
    CHECK(back.checks[1].residual == "entry [1,2]: u1");
    CHECK(back.checks[1].elapsed == 1.5);
    CHECK(back.checks[0].peak_terms == 12);
    CHECK(back.data == m.data);
    CHECK(back.stopped == m.stopped);
    CHECK(cli::to_json(back, true) == j);

    auto plain = cli::to_json(m);
    CHECK_FALSE(plain.at("checks")[0].contains("elapsed"));
    CHECK_FALSE(plain.at("checks")[0].contains("residual"));

    auto future = j;
    future["schema"] = cli::kManifestSchema + 1;
    CHECK_THROWS_AS(cli::manifest_from_json(future), std::invalid_argument);
}

TEST_CASE("runner records failures and rethrows budget stops") {
    cli::Manifest m;
    support::Budget unlimited;
    cli::Runner r(m, unlimited);
    CHECK(r.expect("yes", "", [] { return true; }));
    CHECK_FALSE(r.expect("no", "", [] { return false; }));
    CHECK_FALSE(r.expect("throws", "", []() -> bool { throw std::runtime_error("boom"); }));
    REQUIRE(m.checks.size() == 3);
    CHECK(m.checks[2].residual == "boom");
    CHECK_FALSE(m.passed());

    support::Budget none(0.0, std::nullopt);
    cli::Runner stopped(m, none);
    CHECK_THROWS_AS(stopped.expect("late", "", [] { return true; }), support::BudgetExceeded);
    CHECK(m.checks.size() == 3);
}

TEST_CASE("verification output is deterministic") {
    cli::Options opts;
    cli::Manifest first, second;
    cli::verify_n3(first, opts);
    cli::verify_n3(second, opts);
    CHECK(first.passed());
    CHECK(cli::to_json(first).dump() == cli::to_json(second).dump());
    CHECK(cli::to_table(first) == cli::to_table(second));

    cli::Manifest s;
    cli::schouten(s, "A1n3", "A2n3", opts);
    CHECK(s.passed());
    cli::Manifest bad;
    cli::schouten(bad, "K", "A2n3", opts);
    CHECK_FALSE(bad.passed());
}

TEST_CASE("a budget stop keeps the partial expansion") {
    cli::Options opts;
    opts.budget = support::Budget(0.0, std::nullopt);
    cli::Manifest m;
    CHECK_THROWS_AS(cli::expand(m, 3, 1, 2, opts), support::BudgetExceeded);
    CHECK(m.data.at("N") == 3);
    CHECK(m.data.at("key") == lax::expansion_key(3, 1, 2));
}

TEST_CASE("N = 3 reconstruction through the command layer") {
    cli::Options opts;
    opts.cache = scratch_cache("reconstruct");
    cli::Manifest m;
    cli::reconstruct(m, 3, {1, 2, 0}, std::nullopt, opts);
    CHECK(m.passed());
    CHECK(m.find("reconstruct.metric") != nullptr);

    cli::Manifest wrong;
    cli::reconstruct(wrong, 3, {1, 2, 0}, Scalar(1), opts);
    CHECK_FALSE(wrong.passed());

    cli::Manifest degenerate;
    cli::reconstruct(degenerate, 3, {0, 1, 1}, std::nullopt, opts);
    CHECK_FALSE(degenerate.passed());
    CHECK(degenerate.data.contains("suggested_xi"));
    CHECK(degenerate.find("reconstruct.metric") == nullptr);

    cli::Manifest m2;
    CHECK_THROWS_AS(cli::reconstruct(m2, 3, {1, 2}, std::nullopt, opts), std::invalid_argument);
}
