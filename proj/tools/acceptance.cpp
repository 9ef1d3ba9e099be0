#include <wdvv/cli/commands.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace wdvv;

namespace {

struct Criterion {
    int number;
    std::string title;
    bool gating = true;
    bool passed = false;
    std::string detail;
};

bool has_prefix(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// Summarizes the checks whose ids start with one of the prefixes.
void judge(Criterion& c, const cli::Manifest& m, std::initializer_list<std::string> prefixes) {
    std::size_t total = 0, passed = 0;
    std::string failed;
    for (const auto& check : m.checks) {
        bool selected = false;
        for (const auto& p : prefixes) selected = selected || has_prefix(check.id, p);
        if (!selected) continue;
        ++total;
        if (check.passed) ++passed;
        else if (failed.empty()) failed = check.id;
    }
    c.passed = total > 0 && passed == total && !m.stopped;
    c.detail = std::to_string(passed) + "/" + std::to_string(total) + " checks";
    if (!failed.empty()) c.detail += ", first failure " + failed;
    if (m.stopped) c.detail += ", stopped: " + *m.stopped;
}

template <class F>
cli::Manifest collect(const std::string& command, F&& body) {
    cli::Manifest m;
    m.command = command;
    try {
        body(m);
    } catch (const support::BudgetExceeded& e) {
        m.stopped = e.what();
    } catch (const std::exception& e) {
        m.stopped = std::string("error: ") + e.what();
    }
    return m;
}

int run_binary(const std::string& path) { return std::system((path + " > /dev/null 2>&1").c_str()); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the WDVV bi-Hamiltonian verification"};
    bool skip_stretch = false;
    double stretch_time = 1800.0, stretch_mem = 4.0;
    app.add_flag("--skip-stretch", skip_stretch, "Do not attempt the N = 4 reconstruction");
    app.add_option("--stretch-budget-time", stretch_time, "Wall-clock cap in seconds for the N = 4 reconstruction");
    app.add_option("--stretch-budget-mem", stretch_mem, "Resident memory cap in GB for the N = 4 reconstruction");
    CLI11_PARSE(app, argc, argv);

    cli::Options opts;
    opts.cache = support::Cache::from_environment();

    std::vector<Criterion> criteria{
        {1, "N = 3 bi-Hamiltonian structure"},
        {2, "N = 4 operators, metric and curvature"},
        {3, "N = 4 flows, Hamiltonians, Casimirs and momentum"},
        {4, "N = 4 Schouten brackets"},
        {5, "N = 4 Lax expansion to degree two"},
        {6, "N = 3 reconstruction of the third-order metric"},
        {7, "N = 4 reconstruction of the third-order metric", false},
        {8, "property suites"},
    };
    auto report = [](const Criterion& c) {
        std::cout << "criterion " << c.number << (c.gating ? "  " : "* ") << (c.passed ? "PASS" : "FAIL") << "  " << c.title << " (" << c.detail
                  << ")" << std::endl;
    };

    auto n3 = collect("verify n3", [&](cli::Manifest& m) { cli::verify_n3(m, opts); });
    judge(criteria[0], n3, {"n3."});
    report(criteria[0]);

    auto n4 = collect("verify n4", [&](cli::Manifest& m) { cli::verify_n4(m, opts); });
    judge(criteria[1], n4, {"n4.A1.", "n4.monge", "n4.potemin", "n4.det.", "n4.decomposition", "n4.factorized", "n4.A2.", "n4.curvature.",
                            "n4.parallel.", "n4.phi"});
    report(criteria[1]);
    judge(criteria[2], n4, {"n4.flows.", "n4.K.", "n4.b.", "n4.casimirs", "n4.momentum", "n4.constraint.", "n4.eta."});
    report(criteria[2]);
    judge(criteria[3], n4, {"n4.schouten."});
    report(criteria[3]);

    auto lax4 = collect("lax n4", [&](cli::Manifest& m) { cli::lax_n4(m, opts); });
    judge(criteria[4], lax4, {"lax4."});
    report(criteria[4]);

    auto rec3 = collect("reconstruct --n 3", [&](cli::Manifest& m) { cli::reconstruct(m, 3, {1, 2, 0}, std::nullopt, opts); });
    judge(criteria[5], rec3, {"reconstruct."});
    report(criteria[5]);

    if (skip_stretch) {
        criteria[6].detail = "skipped";
    } else {
        cli::Options capped = opts;
        capped.budget = support::Budget(stretch_time, stretch_mem);
        auto rec4 = collect("reconstruct --n 4", [&](cli::Manifest& m) {
            cli::reconstruct(m, 4, {1, algebra::Scalar(1, 3), 0, algebra::Scalar(1, 2)}, std::nullopt, capped);
        });
        judge(criteria[6], rec4, {"reconstruct."});
    }
    report(criteria[6]);

    Criterion& props = criteria[7];
    int failures = 0;
    for (const std::string& path : {std::string(WDVV_PROPERTY_TESTS), std::string(WDVV_POISSON_TESTS)}) {
        if (run_binary(path) != 0) ++failures;
    }
    props.passed = failures == 0;
    props.detail = std::to_string(2 - failures) + "/2 suites";
    report(props);

    bool gate = true;
    for (const auto& c : criteria) gate = gate && (c.passed || !c.gating);
    std::cout << (gate ? "acceptance PASS" : "acceptance FAIL") << " (* marks the stretch criterion, which does not gate)" << std::endl;
    return gate ? 0 : 1;
}
