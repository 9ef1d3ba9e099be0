#pragma once

#include <wdvv/algebra/matrix.hpp>
#include <wdvv/jet/jet.hpp>

#include <json.hpp>

#include <array>
#include <vector>

namespace wdvv::geometry {

using algebra::RationalFunction;
using algebra::RationalMatrix;

/// Dense tensor of fixed rank over a chart, all indices running 0..n-1.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t dim, std::size_t rank);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rank_; }

    RationalFunction& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    const RationalFunction& at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
    RationalFunction& flat(std::size_t k) { return data_[k]; }
    const RationalFunction& flat(std::size_t k) const { return data_[k]; }
    std::size_t size() const { return data_.size(); }

    bool is_zero() const;
    std::size_t nonzero_count() const;

    /// Multi-index of a flat position.
    std::vector<std::size_t> index_of(std::size_t flat) const;

private:
    std::size_t offset(std::initializer_list<std::size_t> idx) const;

    std::size_t dim_ = 0;
    std::size_t rank_ = 0;
    std::vector<RationalFunction> data_;
};

struct CurvatureReport {
    Tensor christoffel; // Γ^i_{jk} at (i, j, k)
    Tensor riemann;     // R^i_{jkl}
    Tensor riemann_lowered; // R_{ijkl}
    RationalMatrix ricci;   // R_{jl} = R^i_{jil}
    RationalFunction scalar;
    Tensor weyl; // C_{ijkl}; empty for n < 3
};

/// Exact inverse; throws algebra::SingularMatrix.
RationalMatrix invert_metric(const RationalMatrix& g);

/// Levi-Civita symbols of the covariant metric `g` on `chart`.
Tensor christoffel(const RationalMatrix& g, const jet::Chart& chart);

CurvatureReport curvature(const RationalMatrix& g, const jet::Chart& chart);

/// Nonzero components as `{"index": [...], "value": prefix}` lists.
nlohmann::json to_json(const CurvatureReport& report);

/// New coordinates as functions of the old ones.
struct CoordinateMap {
    jet::Chart from;
    jet::Chart to;
    std::vector<RationalFunction> images;

    /// J(i, m) = ∂(to^i)/∂(from^m).
    RationalMatrix jacobian() const;
    /// Replaces `to` fields in `e` by their images.
    RationalFunction pull(const RationalFunction& e) const;
    RationalMatrix pull(const RationalMatrix& m) const;
};

/// second ∘ first, where `second.from` is `first.to`.
CoordinateMap compose(const CoordinateMap& second, const CoordinateMap& first);

/// Covariant metric in the new coordinates, as functions of the old ones:
/// J⁻ᵀ g J⁻¹. Throws on a singular Jacobian.
RationalMatrix pushforward_metric(const RationalMatrix& g, const CoordinateMap& map);
/// Contravariant version: J g Jᵀ.
RationalMatrix pushforward_inverse_metric(const RationalMatrix& g, const CoordinateMap& map);
/// Contravariant metric given in the target coordinates, expressed in the
/// source ones: J⁻¹ g(map) J⁻ᵀ.
RationalMatrix pullback_inverse_metric(const RationalMatrix& g, const CoordinateMap& map);

} // namespace wdvv::geometry
