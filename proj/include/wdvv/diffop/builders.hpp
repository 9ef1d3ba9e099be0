#pragma once

#include <wdvv/diffop/operator.hpp>

namespace wdvv::diffop {

using algebra::ScalarMatrix;

/// g^{ij}∂ₓ + b_k^{ij} f^k_x. `b[k]` holds the matrix b_k.
struct FirstOrderDN {
    RationalMatrix g;
    std::vector<RationalMatrix> b;
    jet::Chart chart;
};

/// ∂ₓ(g^{ij}∂ₓ + c_k^{ij} f^k_x)∂ₓ determined by the covariant metric g_{ij}.
struct CanonicalThirdOrder {
    RationalMatrix g;
    jet::Chart chart;
};

/// φ^{βγ} ∂ₓ ψ_β^i ∂ₓ ψ_γ^j ∂ₓ. `psi(i, γ)` is ψ_i^γ, linear in the fields;
/// `phi(β, γ)` is φ_{βγ}.
struct FactorizedThirdOrder {
    RationalMatrix psi;
    ScalarMatrix phi;
    jet::Chart chart;
};

LocalOperator build_first_order_dn(const FirstOrderDN& data);

/// c_{skm} = ⅓(g_{sm,k} − g_{sk,m}), stored at `connection_index(n, s, k, m)`.
std::vector<RationalFunction> lowered_connection(const RationalMatrix& g, const jet::Chart& chart);
inline std::size_t connection_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    return (i * n + j) * n + k;
}
/// Matrices c_k with entries c_k^{ij}.
std::vector<RationalMatrix> raised_connection(const RationalMatrix& g, const jet::Chart& chart);

LocalOperator build_third_order_canonical(const CanonicalThirdOrder& data);
LocalOperator build_factorized(const FactorizedThirdOrder& data);

/// −φ^{βγ} ψ_β^i ∂ₓ ψ_γ^s after the potential substitution, acting on b.
LocalOperator reduce_to_first_order_in_b(const FactorizedThirdOrder& data);

/// Throws std::invalid_argument unless every ψ entry is affine in the
/// chart fields with constant coefficients.
void check_affine(const FactorizedThirdOrder& data);

} // namespace wdvv::diffop
