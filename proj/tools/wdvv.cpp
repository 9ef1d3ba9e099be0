#include <wdvv/cli/commands.hpp>
#include <wdvv/systems/systems.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace wdvv;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Output {
    std::string manifest_path;
    bool json = false;
    bool timings = false;
};

int finish(const cli::Manifest& m, const Output& out) {
    if (!out.manifest_path.empty()) {
        std::ofstream f(out.manifest_path);
        f << cli::to_json(m, out.timings).dump(2) << "\n";
    }
    if (out.json) std::cout << cli::to_json(m, out.timings).dump(2) << "\n";
    else std::cout << cli::to_table(m, out.timings);
    if (m.stopped) return kExitBudget;
    return m.passed() ? 0 : kExitFail;
}

template <class F>
int run(const std::string& command, const Output& out, F&& body) {
    cli::Manifest m;
    m.command = command;
    try {
        body(m);
    } catch (const support::BudgetExceeded& e) {
        m.stopped = e.what();
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return finish(m, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of WDVV bi-Hamiltonian structures"};
    app.require_subcommand(1);
    Output out;
    bool no_cache = false;
    std::optional<double> budget_time, budget_mem;
    app.add_option("--manifest", out.manifest_path, "Write the manifest as JSON to this file");
    app.add_flag("--json", out.json, "Print the manifest as JSON instead of a table");
    app.add_flag("--timings", out.timings, "Include elapsed times (output is then not reproducible)");
    app.add_flag("--no-cache", no_cache, "Do not read or write cached expansions");
    app.add_option("--budget-time", budget_time, "Wall-clock cap in seconds");
    app.add_option("--budget-mem", budget_mem, "Resident memory cap in GB");

    auto* verify = app.add_subcommand("verify", "Run the full verification suite for N = 3 or N = 4");
    std::string which;
    verify->add_option("system", which, "n3 or n4")->required()->check(CLI::IsMember({"n3", "n4"}));

    auto* expand = app.add_subcommand("expand", "Expand the Lax generating function on one root branch");
    int n = 4, branch = 1, depth = 1;
    expand->add_option("--n", n, "Number of Lax components (3 or 4)")->check(CLI::IsMember({3, 4}));
    expand->add_option("--branch", branch, "Root branch 1..N")->required();
    expand->add_option("--depth", depth, "Highest order to compute")->required()->check(CLI::NonNegativeNumber);

    auto* rec = app.add_subcommand("reconstruct", "Reconstruct the third-order metric from conservation laws");
    int rn = 4;
    std::string xi_text, kappa_text;
    rec->add_option("--n", rn, "Number of Lax components (3 or 4)")->check(CLI::IsMember({3, 4}));
    rec->add_option("--xi", xi_text, "Comma-separated rational weights")->required();
    rec->add_option("--kappa", kappa_text, "Recursion constant (default 1/2 for N = 3, 1 for N = 4)");

    auto* sch = app.add_subcommand("schouten", "Check that the Schouten bracket of two operators vanishes");
    std::string op_a, op_b;
    sch->add_option("A", op_a, "First operator")->required();
    sch->add_option("B", op_b, "Second operator")->required();

    auto* curv = app.add_subcommand("curvature", "Curvature report of a metric");
    std::string metric;
    curv->add_option("metric", metric, "g3 or g6")->required();

    auto* show = app.add_subcommand("show", "Print a dataset");
    std::string dataset;
    show->add_option("dataset", dataset, "Dataset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    cli::Options opts;
    opts.budget = support::Budget(budget_time, budget_mem);
    if (!no_cache) opts.cache = support::Cache::from_environment();

    if (*show) {
        try {
            std::cout << systems::dataset_text(dataset) << "\n";
        } catch (const std::out_of_range& e) {
            std::cerr << "error: " << e.what() << "\nknown datasets:";
            for (const auto& name : systems::dataset_names()) std::cerr << " " << name;
            std::cerr << "\n";
            return kExitUsage;
        }
        return 0;
    }
    if (*verify) {
        return run("verify " + which, out, [&](cli::Manifest& m) {
            if (which == "n3") cli::verify_n3(m, opts);
            else cli::verify_n4(m, opts);
        });
    }
    if (*expand) {
        opts.budget = cli::expansion_budget(n, depth, budget_time, budget_mem);
        std::string cmd = "expand --n " + std::to_string(n) + " --branch " + std::to_string(branch) + " --depth " + std::to_string(depth);
        return run(cmd, out, [&](cli::Manifest& m) { cli::expand(m, n, branch, depth, opts); });
    }
    if (*rec) {
        opts.budget = cli::expansion_budget(rn, 3, budget_time, budget_mem);
        std::string cmd = "reconstruct --n " + std::to_string(rn) + " --xi " + xi_text;
        return run(cmd, out, [&](cli::Manifest& m) {
            auto xi = cli::parse_xi(xi_text);
            std::optional<algebra::Scalar> kappa;
            if (!kappa_text.empty()) kappa = cli::parse_xi(kappa_text).at(0);
            cli::reconstruct(m, rn, xi, kappa, opts);
        });
    }
    if (*sch) {
        return run("schouten " + op_a + " " + op_b, out, [&](cli::Manifest& m) { cli::schouten(m, op_a, op_b, opts); });
    }
    if (*curv) {
        return run("curvature " + metric, out, [&](cli::Manifest& m) { cli::curvature(m, metric, opts); });
    }
    return kExitUsage;
}
