#pragma once

#include <wdvv/diffop/builders.hpp>
#include <wdvv/geometry/geometry.hpp>
#include <wdvv/poisson/poisson.hpp>
#include <wdvv/systems/systems.hpp>

#include <vector>

namespace wdvv::reconstruct {

using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using algebra::ScalarMatrix;
using diffop::LocalOperator;

/// n covectors ψ^γ with ψ_k^γ = ψ_{km}^γ aᵐ + ω_k^γ, together with the
/// constant matrix φ of g_{ij} = φ_{βγ}ψ_i^β ψ_j^γ.
struct ParallelSolution {
    jet::Chart chart;
    RationalMatrix psi;             // psi(k, γ) = ψ_k^γ
    std::vector<ScalarMatrix> lin;  // lin[γ](k, m) = ψ_{km}^γ
    ScalarMatrix omega;             // omega(k, γ) = ω_k^γ
    ScalarMatrix phi;               // phi(β, γ) = φ_{βγ}

    std::size_t dim() const { return psi.rows(); }
    diffop::FactorizedThirdOrder factorized() const { return {psi, phi, chart}; }
};

class NotPotemin : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Basis of solutions of ψ_{j,k} = ⅓ψ_p g^{pq}(g_{qj,k} − g_{qk,j}) among
/// affine covectors, as the columns of the returned matrix. Throws
/// NotPotemin when the solution space does not have dimension n.
RationalMatrix solve_parallel_system(const RationalMatrix& g, const jet::Chart& chart);

/// Residual of the parallel system for one candidate covector.
poisson::Outcome check_parallel(const RationalMatrix& g, const jet::Chart& chart, const std::vector<RationalFunction>& psi);

/// φ = ψ⁻¹ g ψ⁻ᵀ; throws NotPotemin when φ is not constant.
ScalarMatrix compute_phi(const RationalMatrix& g, const RationalMatrix& psi);

/// Splits an affine ψ into ψ_{km}^γ and ω_k^γ; throws std::invalid_argument
/// for entries that are not affine.
ParallelSolution split(const RationalMatrix& psi, const ScalarMatrix& phi, const jet::Chart& chart);

/// solve_parallel_system, compute_phi and split in sequence.
ParallelSolution decompose(const RationalMatrix& g, const jet::Chart& chart);

/// ψ_{km}^γ = −ψ_{mk}^γ.
poisson::Outcome check_skew(const ParallelSolution& s);
/// Both cyclic identities weighted by φ.
poisson::Outcome check_cyclic(const ParallelSolution& s);
/// Cyclic identity of ψ and η, and the symmetry of φ_{βγ}ω_p^β η_q^γ.
poisson::Outcome check_eta_constraints(const ParallelSolution& s, const ScalarMatrix& eta);

/// sᵅ = (½ψ_{mk}^α bₓᵏ + ω_m^α) bᵐ.
std::vector<RationalFunction> casimirs(const ParallelSolution& s);

/// P = −(⅓φ_{βγ}ω_q^β ψ_{pm}^γ bₓᵐ + ½φ_{βγ}ω_p^β ω_q^γ) bᵖb^q.
RationalFunction momentum(const ParallelSolution& s);

class NonlinearFlow : public std::invalid_argument {
public:
    NonlinearFlow() : std::invalid_argument("psi_m v^m is not linear in b_x") {}
};

/// η(m, γ) with ψ_m^γ vᵐ(bₓ) = η_m^γ bₓᵐ; throws NonlinearFlow.
ScalarMatrix eta_matrix(const ParallelSolution& s, const systems::HydroSystem& flow);

enum class ZetaMode { standard, reduced };

class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// ζ_{pqm} stored at (p·n + q)·n + m.
std::vector<Scalar> zeta(const ParallelSolution& s, const ScalarMatrix& eta, ZetaMode mode = ZetaMode::standard);

/// ½(ζ_{pqm}bₓᵐ − φ_{βγ}ω_p^β η_q^γ)bᵖb^q; throws ConstraintViolation when
/// check_eta_constraints fails.
RationalFunction hamiltonian_density(const ParallelSolution& s, const ScalarMatrix& eta, ZetaMode mode = ZetaMode::standard);

/// Variational gradient of `h` with respect to the chart fields.
std::vector<RationalFunction> gradient(const RationalFunction& h, const jet::Chart& chart);

/// op(δH/δf) compared with `expected` component by component.
poisson::Outcome check_generates(const LocalOperator& op, const RationalFunction& h, const std::vector<RationalFunction>& expected);

/// b-potential form of a conservative system: bₜ = v(bₓ).
std::vector<RationalFunction> potential_flow(const systems::HydroSystem& flow);

/// (bₓ¹, …, bₓⁿ).
std::vector<RationalFunction> translation(const jet::Chart& chart);

/// K∂ₓ δH/δu pushed to the a-fields through the Viète Jacobian, compared
/// with the a-flow (or with aₓ when `flow` is null).
poisson::Outcome check_first_order_flow(int N, const RationalFunction& h_of_a, const systems::HydroSystem* flow);

} // namespace wdvv::reconstruct
