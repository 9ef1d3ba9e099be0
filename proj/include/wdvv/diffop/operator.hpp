#pragma once

#include <wdvv/algebra/matrix.hpp>
#include <wdvv/jet/jet.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace wdvv::diffop {

using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;

/// Scalar operator Σ_k c_k ∂ₓ^k; coefficient k is stored at index k and the
/// vector never ends in a zero coefficient.
class ScalarOp {
public:
    ScalarOp() = default;
    explicit ScalarOp(std::vector<RationalFunction> coeffs);
    /// Multiplication operator by `c`.
    static ScalarOp multiplication(RationalFunction c);
    /// c ∂ₓ^k.
    static ScalarOp monomial(RationalFunction c, int k);
    static ScalarOp dx() { return monomial(RationalFunction(1), 1); }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<RationalFunction>& coeffs() const { return coeffs_; }
    /// Coefficient of ∂ₓ^k (zero beyond the order).
    RationalFunction coeff(int k) const;

    ScalarOp operator-() const;
    ScalarOp& operator+=(const ScalarOp& o);
    ScalarOp& operator-=(const ScalarOp& o);
    ScalarOp& operator*=(const RationalFunction& c);
    friend ScalarOp operator+(ScalarOp x, const ScalarOp& y) { return x += y; }
    friend ScalarOp operator-(ScalarOp x, const ScalarOp& y) { return x -= y; }
    friend ScalarOp operator*(const RationalFunction& c, ScalarOp x) { return x *= c; }

    /// Apply to a function: Σ c_k Dₓ^k f.
    RationalFunction apply(const RationalFunction& f) const;

    bool operator==(const ScalarOp& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim();
    std::vector<RationalFunction> coeffs_;
};

ScalarOp compose(const ScalarOp& a, const ScalarOp& b);
ScalarOp adjoint(const ScalarOp& a);

/// n×n matrix of scalar differential operators acting on the fields of a
/// chart.
class LocalOperator {
public:
    LocalOperator() = default;
    explicit LocalOperator(jet::Chart chart)
        : n_(static_cast<std::size_t>(chart.dim)), chart_(chart), entries_(n_ * n_) {}

    static LocalOperator identity(jet::Chart chart);
    /// Matrix of functions times ∂ₓ^k.
    static LocalOperator from_matrix(const RationalMatrix& m, int k, jet::Chart chart);

    std::size_t dim() const { return n_; }
    const jet::Chart& chart() const { return chart_; }
    Family family() const { return chart_.family; }
    int order() const;

    ScalarOp& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const ScalarOp& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    /// Coefficient matrix of ∂ₓ^k.
    RationalMatrix coefficient(int k) const;

    LocalOperator operator-() const;
    LocalOperator& operator+=(const LocalOperator& o);
    LocalOperator& operator-=(const LocalOperator& o);
    LocalOperator& operator*=(const RationalFunction& c);
    friend LocalOperator operator+(LocalOperator x, const LocalOperator& y) { return x += y; }
    friend LocalOperator operator-(LocalOperator x, const LocalOperator& y) { return x -= y; }
    friend LocalOperator operator*(const RationalFunction& c, LocalOperator x) { return x *= c; }

    bool is_zero() const;
    bool operator==(const LocalOperator& o) const { return n_ == o.n_ && entries_ == o.entries_; }

    /// Largest number of polynomial terms held by any coefficient.
    std::size_t peak_terms() const;

private:
    void check_same(const LocalOperator& o) const;

    std::size_t n_ = 0;
    jet::Chart chart_;
    std::vector<ScalarOp> entries_;
};

LocalOperator compose(const LocalOperator& a, const LocalOperator& b);
LocalOperator adjoint(const LocalOperator& a);
std::vector<RationalFunction> apply(const LocalOperator& a, const std::vector<RationalFunction>& v);

/// Rows of entry lists `[(k, expr)]`.
std::string to_text(const LocalOperator& a);
nlohmann::json to_json(const LocalOperator& a);

} // namespace wdvv::diffop
