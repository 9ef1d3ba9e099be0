#pragma once

#include <wdvv/diffop/builders.hpp>

#include <string>

namespace wdvv::poisson {

using algebra::RationalFunction;
using algebra::RationalMatrix;
using diffop::LocalOperator;

/// Result of an identity check. Converts to bool; when the check fails,
/// `residual` holds the first nonzero obstruction in prefix form.
struct Outcome {
    bool passed = true;
    std::string residual;
    std::size_t peak_terms = 0;

    explicit operator bool() const { return passed; }
    /// Records `e` as a candidate residual; returns true iff it is zero.
    bool absorb(const RationalFunction& e, const std::string& where = {});
};

bool is_skew_adjoint(const LocalOperator& a);

/// Trivector Σ_cyclic(p,q,r) ⟨ℓ_{A,p}(Bq), r⟩ + ⟨ℓ_{B,p}(Aq), r⟩ with the
/// covectors p, q, r as jets of the families of the same name.
RationalFunction schouten_trivector(const LocalOperator& a, const LocalOperator& b);

struct SchoutenOptions {
    /// Also take Euler derivatives along the fields and along q, r. The p
    /// derivative alone already decides the question for a trilinear form.
    bool all_families = true;
};

/// Throws std::invalid_argument unless both operators are skew-adjoint on the
/// same chart.
Outcome schouten_bracket_vanishes(const LocalOperator& a, const LocalOperator& b, SchoutenOptions opts = {});

/// Splits a homogeneous first-order operator g∂ₓ + b_k f^k_x into its data.
/// Throws std::invalid_argument when the free term is not linear in f_x.
diffop::FirstOrderDN first_order_data(const LocalOperator& op);

/// Γ^i_{jk} = −g_{js} b_k^{si} is the Levi-Civita connection of g and flat.
Outcome check_first_order_dn(const diffop::FirstOrderDN& data);

/// g_{mk,s} + g_{ks,m} + g_{ms,k} = 0 for the covariant metric `g`.
Outcome check_monge(const RationalMatrix& g, const jet::Chart& chart);

/// g_{mk,sl} − g_{ms,kl} + ⅓ g^{pq}(g_{pl,m} − g_{pm,l})(g_{qk,s} − g_{qs,k}) = 0.
Outcome check_potemin(const RationalMatrix& g, const jet::Chart& chart);

} // namespace wdvv::poisson
