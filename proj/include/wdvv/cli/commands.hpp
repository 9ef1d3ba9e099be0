#pragma once

#include <wdvv/cli/manifest.hpp>
#include <wdvv/diffop/operator.hpp>
#include <wdvv/support/cache.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wdvv::cli {

struct Options {
    support::Budget budget;
    std::optional<support::Cache> cache;
};

/// Budget caps from the command line, falling back to 2 GB / 600 s for
/// expansions of depth three or more at N = 4.
support::Budget expansion_budget(int N, int depth, std::optional<double> seconds, std::optional<double> gigabytes);

void verify_n3(Manifest& m, const Options& opts);
void verify_n4(Manifest& m, const Options& opts);

/// Branch expansion with per-order reports; partial results stay in the
/// manifest when the budget stops it.
void expand(Manifest& m, int N, int branch, int depth, const Options& opts);

/// Recursion constant used when none is given: ½ for N = 3, 1 for N = 4.
algebra::Scalar default_kappa(int N);

/// Expands every branch to depth three and checks that the leading-order
/// reconstruction equals the inverse Monge metric.
void reconstruct(Manifest& m, int N, const std::vector<algebra::Scalar>& xi, std::optional<algebra::Scalar> kappa, const Options& opts);

/// Degree-two expansion of all four branches: triviality of h0, relations
/// among the h1 and nondegeneracy of the quadratic forms.
void lax_n4(Manifest& m, const Options& opts);

void schouten(Manifest& m, const std::string& a, const std::string& b, const Options& opts);
void curvature(Manifest& m, const std::string& metric, const Options& opts);

/// "1,1/3,0,1/2" → (1, 1/3, 0, 1/2); throws std::invalid_argument.
std::vector<algebra::Scalar> parse_xi(const std::string& text);

/// Operators by name: K, A1a, A1n3, A2n3, g3, g6. Throws std::out_of_range.
diffop::LocalOperator named_operator(const std::string& name);
const std::vector<std::string>& operator_names();

} // namespace wdvv::cli
