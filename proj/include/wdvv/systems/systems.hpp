#pragma once

#include <wdvv/diffop/builders.hpp>
#include <wdvv/geometry/geometry.hpp>
#include <wdvv/poisson/poisson.hpp>

#include <string>
#include <vector>

namespace wdvv::systems {

using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::ScalarMatrix;
using diffop::LocalOperator;

/// a_t = (v(a))ₓ.
struct HydroSystem {
    std::string label;
    jet::Chart chart;
    std::vector<RationalFunction> fluxes;
};

/// Fields a¹..aⁿ of the N = 3 (n = 3) or N = 4 (n = 6) system.
jet::Chart a_chart(int N);
/// Flat coordinates: u¹..u³ for N = 3, u⁰..u⁵ for N = 4.
jet::Chart u_chart(int N);

/// One system for N = 3, the y- and z-flows for N = 4. Throws
/// std::invalid_argument for other N.
std::vector<HydroSystem> build_systems(int N);

/// Σ ∂e/∂f^j_(k) Dₓ^{k+1}(v^j): the derivative of `e` along the flow.
RationalFunction flow_derivative(const RationalFunction& e, const HydroSystem& flow);

/// ∂_z(vⁱ)ₓ = ∂_y(wⁱ)ₓ for every component.
poisson::Outcome verify_commuting(const HydroSystem& y, const HydroSystem& z);

/// Lax matrix in the a-fields; the spectral parameter is jet::kLambda.
RationalMatrix lax_matrix(int N);
/// det(A − ρI) as a polynomial in jet::kRho.
Polynomial characteristic_polynomial(const RationalMatrix& lax);

/// a as functions of the flat coordinates u (the roots of the
/// characteristic polynomial plus the extra coordinates for N = 4).
geometry::CoordinateMap viete_map(int N);

/// Constant metric K of A₁ = K∂ₓ in flat coordinates.
ScalarMatrix flat_metric(int N);

/// Published operators in the a-fields.
LocalOperator first_operator(int N);
LocalOperator third_operator_n3();

/// Covariant Monge metric of the third-order operator.
RationalMatrix monge_metric(int N);
/// Factorization data g = ψ φ ψᵀ for N = 4.
diffop::FactorizedThirdOrder factorization_n4();
/// η matrices with ψ_m^γ v^m(bₓ) = η_m^γ bₓ^m, stored as η(m, γ).
ScalarMatrix eta_matrix(int flow);

/// Published densities in the potentials b.
RationalFunction hamiltonian_density_n4(int flow);
RationalFunction momentum_density_n4();
std::vector<RationalFunction> casimir_densities_n4();
RationalFunction hamiltonian_density_n3();

/// Names accepted by `dataset`.
const std::vector<std::string>& dataset_names();

/// A dataset rendered as text; throws std::out_of_range for unknown names.
std::string dataset_text(const std::string& name);

} // namespace wdvv::systems
