#include <wdvv/diffop/builders.hpp>

#include <stdexcept>

namespace wdvv::diffop {

using algebra::Polynomial;
using algebra::SingularMatrix;

namespace {

LocalOperator dx_identity(const jet::Chart& chart) {
    LocalOperator op(chart);
    for (std::size_t i = 0; i < op.dim(); ++i) op(i, i) = ScalarOp::dx();
    return op;
}

RationalMatrix checked_inverse(const RationalMatrix& m, const char* what) {
    try {
        return algebra::inverse(m);
    } catch (const SingularMatrix&) {
        throw SingularMatrix(std::string(what) + " is degenerate");
    }
}

} // namespace

LocalOperator build_first_order_dn(const FirstOrderDN& data) {
    const auto n = static_cast<std::size_t>(data.chart.dim);
    if (data.g.rows() != n || data.b.size() != n) throw std::invalid_argument("first-order data has the wrong shape");
    if (algebra::is_zero(algebra::determinant(data.g))) throw SingularMatrix("metric is degenerate");
    LocalOperator op = LocalOperator::from_matrix(data.g, 1, data.chart);
    for (std::size_t k = 0; k < n; ++k) {
        RationalFunction ax = data.chart.field(static_cast<int>(k), 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!data.b[k](i, j).is_zero()) op(i, j) += ScalarOp::multiplication(data.b[k](i, j) * ax);
            }
        }
    }
    return op;
}

std::vector<RationalFunction> lowered_connection(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    std::vector<RationalMatrix> dg;
    dg.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        jet::Var v = chart.var(static_cast<int>(k));
        dg.push_back(g.map([v](const RationalFunction& e) { return e.derivative(v); }));
    }
    std::vector<RationalFunction> c(n * n * n);
    const RationalFunction third(algebra::Scalar(1, 3));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t m = 0; m < n; ++m) {
                RationalFunction v = dg[k](s, m) - dg[m](s, k);
                if (!v.is_zero()) c[connection_index(n, s, k, m)] = third * v;
            }
        }
    }
    return c;
}

std::vector<RationalMatrix> raised_connection(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    RationalMatrix ginv = checked_inverse(g, "metric");
    auto c = lowered_connection(g, chart);
    std::vector<RationalMatrix> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // c_k^{pq} = g^{pj} g^{qi} c_{ijk}: C(j, i) = c_{ijk}, raised = ginv · C · ginvᵀ.
        RationalMatrix ck(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) ck(j, i) = c[connection_index(n, i, j, k)];
        }
        out.push_back(ginv * ck * ginv.transpose());
    }
    return out;
}

LocalOperator build_third_order_canonical(const CanonicalThirdOrder& data) {
    const auto n = static_cast<std::size_t>(data.chart.dim);
    if (!data.g.is_symmetric() || data.g.rows() != n) throw std::invalid_argument("metric must be symmetric n×n");
    RationalMatrix ginv = checked_inverse(data.g, "metric");
    auto c = raised_connection(data.g, data.chart);
    LocalOperator middle = LocalOperator::from_matrix(ginv, 1, data.chart);
    for (std::size_t k = 0; k < n; ++k) {
        RationalFunction ax = data.chart.field(static_cast<int>(k), 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!c[k](i, j).is_zero()) middle(i, j) += ScalarOp::multiplication(c[k](i, j) * ax);
            }
        }
    }
    LocalOperator d = dx_identity(data.chart);
    return compose(compose(d, middle), d);
}

void check_affine(const FactorizedThirdOrder& data) {
    for (std::size_t i = 0; i < data.psi.rows(); ++i) {
        for (std::size_t j = 0; j < data.psi.cols(); ++j) {
            const auto& e = data.psi(i, j);
            bool ok = e.is_polynomial() && e.num().total_degree() <= 1;
            if (ok) {
                for (auto v : e.num().variables()) {
                    if (v.family() != data.chart.family || v.order() != 0) ok = false;
                }
            }
            if (!ok) throw std::invalid_argument("psi must be affine in the fields");
        }
    }
}

namespace {

// (ψ⁻¹)ᵀ with entries ψ_β^i at (i, β), and φ⁻¹ ψ⁻¹.
std::pair<LocalOperator, LocalOperator> factor_pieces(const FactorizedThirdOrder& data) {
    check_affine(data);
    RationalMatrix x = checked_inverse(data.psi, "psi");
    algebra::ScalarMatrix phi_inv;
    try {
        phi_inv = algebra::inverse(data.phi);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("phi is degenerate");
    }
    RationalMatrix phi_inv_r = phi_inv.map([](const algebra::Scalar& s) { return RationalFunction(s); });
    LocalOperator left = LocalOperator::from_matrix(x.transpose(), 0, data.chart);
    LocalOperator right = LocalOperator::from_matrix(phi_inv_r * x, 0, data.chart);
    return {left, right};
}

} // namespace

LocalOperator build_factorized(const FactorizedThirdOrder& data) {
    auto [left, right] = factor_pieces(data);
    LocalOperator d = dx_identity(data.chart);
    return compose(compose(compose(compose(d, left), d), right), d);
}

LocalOperator reduce_to_first_order_in_b(const FactorizedThirdOrder& data) {
    if (data.chart.family != Family::a) throw std::invalid_argument("potential substitution needs a-fields");
    auto [left, right] = factor_pieces(data);
    LocalOperator d = dx_identity(data.chart);
    LocalOperator op = -compose(compose(left, d), right);
    jet::Chart bchart = data.chart.with_family(Family::b);
    LocalOperator out(bchart);
    for (std::size_t i = 0; i < op.dim(); ++i) {
        for (std::size_t j = 0; j < op.dim(); ++j) {
            std::vector<RationalFunction> cs;
            for (const auto& c : op(i, j).coeffs()) cs.push_back(jet::potential_substitution(c));
            out(i, j) = ScalarOp(std::move(cs));
        }
    }
    return out;
}

} // namespace wdvv::diffop
