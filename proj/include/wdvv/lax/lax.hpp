#pragma once

#include <wdvv/diffop/operator.hpp>
#include <wdvv/geometry/geometry.hpp>
#include <wdvv/poisson/poisson.hpp>
#include <wdvv/systems/systems.hpp>
#include <wdvv/support/budget.hpp>
#include <wdvv/support/cache.hpp>

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace wdvv::lax {

using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using algebra::ScalarMatrix;
using diffop::ScalarOp;

/// Eliminates ψ₁..ψ_{n-1} from ψ' = λAψ, where A has a nonzero
/// superdiagonal and zeros above it. The result acts on ψ = ψ₀.
ScalarOp scalar_lax_reduction(const RationalMatrix& lax);

/// Σ c_k B_k(r) with ψ^{(k)} = B_k ψ for ψ = exp ∫ r dx. The generating
/// function r is the jet `riccati_var()`.
RationalFunction riccati_substitution(const ScalarOp& eq);
algebra::Var riccati_var(int order = 0);

/// Coefficients of a Laurent polynomial in `v`; throws std::invalid_argument
/// if the denominator involves `v` other than as a monomial factor.
std::map<int, RationalFunction> laurent_coefficients(const RationalFunction& e, algebra::Var v);

/// r = λuᵏ + h₀ + h₁/λ + … on one root branch, in flat coordinates.
struct BranchExpansion {
    int N = 0;
    int branch = 0;
    jet::Chart chart;
    RationalFunction leading; // h₋₁ = uᵏ
    std::vector<RationalFunction> h; // h[i] = h_i
    bool complete = true; // false when a budget stopped the expansion

    int depth() const { return static_cast<int>(h.size()) - 1; }
};

nlohmann::json to_json(const BranchExpansion& e);
BranchExpansion expansion_from_json(const nlohmann::json& j);

struct ExpandOptions {
    support::Budget budget;
    /// Used when set; expansions are looked up before and stored after
    /// computing.
    std::optional<support::Cache> cache;
    /// Called after every solved order with the partial expansion.
    std::function<void(const BranchExpansion&)> progress;
};

/// Cache key for one branch expansion.
std::string expansion_key(int N, int branch, int depth);

/// Solves h₀..h_depth on branch `k`. Throws std::out_of_range for a branch
/// outside 1..N and support::BudgetExceeded (after reporting progress) when
/// the budget runs out.
BranchExpansion expand_branch(int N, int k, int depth, const ExpandOptions& opts = {});

/// E(D_t h) = 0 for a density `h` in the flat coordinates of `map`, with
/// the time derivative taken along `flow` (given in the target fields).
poisson::Outcome check_conserved(const RationalFunction& h, const geometry::CoordinateMap& map, const systems::HydroSystem& flow);

/// Differential degree under deg u = 0, deg ∂ₓ = 1 for the given family, or
/// nullopt when the expression is not quasi-homogeneous.
std::optional<int> differential_degree(const RationalFunction& e, algebra::Family f);

/// Per-branch coefficients: h₁ₖ = −½ G_{ksm} uₓˢuₓᵐ + … and
/// h₃ₖ = Q_{kms} uₓₓᵐuₓₓˢ + …, both read off modulo total derivatives.
struct QuadraticFormData {
    jet::Chart chart;
    std::vector<RationalMatrix> G;
    std::vector<RationalMatrix> Q; // empty unless h₃ was available
};

/// Throws std::invalid_argument when h₁ (or h₃) is not quasi-homogeneous of
/// degree 2 (or 4).
QuadraticFormData extract_forms(const std::vector<BranchExpansion>& branches);

RationalMatrix quadratic_form(const RationalFunction& h1, const jet::Chart& chart);
RationalMatrix quartic_form(const RationalFunction& h3, const jet::Chart& chart);

class DegenerateXi : public std::invalid_argument {
public:
    DegenerateXi() : std::invalid_argument("degenerate ξ combination: det(ξᵐG_m) = 0") {}
};

/// Σ ξᵐ M_m.
RationalMatrix combine(const std::vector<RationalMatrix>& ms, const std::vector<Scalar>& xi);

/// Leading-order solution of A₁δH₃ₖ = κ A₂δH₁ₖ, that is
/// g^{ij} = (2/κ) ξᵐK^{ip}Q_{mpq}C^{qj} with C the inverse of ξᵐG_m. The
/// constant κ depends on the normalization of the spectral parameter.
/// Throws DegenerateXi.
RationalMatrix reconstruct_leading_metric(const QuadraticFormData& q, const ScalarMatrix& k, const std::vector<Scalar>& xi,
                                          const Scalar& kappa = Scalar(1));

/// det(ξᵐG_m) ≠ 0, decided exactly by a nonzero value at a rational point.
bool is_nondegenerate(const QuadraticFormData& q, const std::vector<Scalar>& xi);

/// target · ξᵐG_m = (2/κ) K ξᵐQ_m for a contravariant `target` in the flat
/// coordinates; equivalent to reconstruct_leading_metric(…) == target
/// without inverting ξᵐG_m. Throws DegenerateXi.
poisson::Outcome check_reconstruction(const QuadraticFormData& q, const ScalarMatrix& k, const std::vector<Scalar>& xi,
                                      const Scalar& kappa, const RationalMatrix& target);

/// `preferred` when det(ξG) ≠ 0, otherwise the first nondegenerate ξ over
/// small rationals in [−2, 2] with denominators up to 6.
std::vector<Scalar> choose_xi(const QuadraticFormData& q, const std::vector<Scalar>& preferred);

} // namespace wdvv::lax
