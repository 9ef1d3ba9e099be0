#include <wdvv/geometry/geometry.hpp>

#include <wdvv/algebra/expr.hpp>

#include <stdexcept>

namespace wdvv::geometry {

using algebra::Scalar;

Tensor::Tensor(std::size_t dim, std::size_t rank) : dim_(dim), rank_(rank) {
    std::size_t size = 1;
    for (std::size_t r = 0; r < rank; ++r) size *= dim;
    data_.resize(size);
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
    std::size_t k = 0;
    for (auto i : idx) k = k * dim_ + i;
    return k;
}

std::vector<std::size_t> Tensor::index_of(std::size_t flat) const {
    std::vector<std::size_t> idx(rank_);
    for (std::size_t r = rank_; r-- > 0;) {
        idx[r] = flat % dim_;
        flat /= dim_;
    }
    return idx;
}

bool Tensor::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

std::size_t Tensor::nonzero_count() const {
    std::size_t c = 0;
    for (const auto& x : data_) c += x.is_zero() ? 0 : 1;
    return c;
}

RationalMatrix invert_metric(const RationalMatrix& g) { return algebra::inverse(g); }

Tensor christoffel(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    RationalMatrix ginv = invert_metric(g);
    std::vector<RationalMatrix> dg;
    for (std::size_t k = 0; k < n; ++k) {
        auto v = chart.var(static_cast<int>(k));
        dg.push_back(g.map([v](const RationalFunction& e) { return e.derivative(v); }));
    }
    // Γ_{ljk} = ½(∂_j g_{lk} + ∂_k g_{lj} − ∂_l g_{jk})
    Tensor lower(n, 3);
    const RationalFunction half(Scalar(1, 2));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j; k < n; ++k) {
                RationalFunction v = dg[j](l, k) + dg[k](l, j) - dg[l](j, k);
                if (v.is_zero()) continue;
                v *= half;
                lower.at({l, j, k}) = v;
                lower.at({l, k, j}) = v;
            }
        }
    }
    Tensor gamma(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j; k < n; ++k) {
                RationalFunction v;
                for (std::size_t l = 0; l < n; ++l) {
                    if (!ginv(i, l).is_zero() && !lower.at({l, j, k}).is_zero()) v += ginv(i, l) * lower.at({l, j, k});
                }
                gamma.at({i, j, k}) = v;
                gamma.at({i, k, j}) = v;
            }
        }
    }
    return gamma;
}

CurvatureReport curvature(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    CurvatureReport rep;
    rep.christoffel = christoffel(g, chart);
    const Tensor& G = rep.christoffel;
    RationalMatrix ginv = invert_metric(g);

    std::vector<Tensor> dG;
    for (std::size_t k = 0; k < n; ++k) {
        Tensor t(n, 3);
        auto v = chart.var(static_cast<int>(k));
        for (std::size_t f = 0; f < G.size(); ++f) {
            if (!G.flat(f).is_zero()) t.flat(f) = G.flat(f).derivative(v);
        }
        dG.push_back(std::move(t));
    }

    // R^i_{jkl} = ∂_kΓ^i_{lj} − ∂_lΓ^i_{kj} + Γ^i_{km}Γ^m_{lj} − Γ^i_{lm}Γ^m_{kj}
    rep.riemann = Tensor(n, 4);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = k + 1; l < n; ++l) {
                    RationalFunction v = dG[k].at({i, l, j}) - dG[l].at({i, k, j});
                    for (std::size_t m = 0; m < n; ++m) {
                        const auto& a1 = G.at({i, k, m});
                        const auto& b1 = G.at({m, l, j});
                        if (!a1.is_zero() && !b1.is_zero()) v += a1 * b1;
                        const auto& a2 = G.at({i, l, m});
                        const auto& b2 = G.at({m, k, j});
                        if (!a2.is_zero() && !b2.is_zero()) v -= a2 * b2;
                    }
                    rep.riemann.at({i, j, k, l}) = v;
                    rep.riemann.at({i, j, l, k}) = -v;
                }
            }
        }
    }

    rep.riemann_lowered = Tensor(n, 4);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    RationalFunction v;
                    for (std::size_t m = 0; m < n; ++m) {
                        const auto& r = rep.riemann.at({m, j, k, l});
                        if (!g(i, m).is_zero() && !r.is_zero()) v += g(i, m) * r;
                    }
                    rep.riemann_lowered.at({i, j, k, l}) = v;
                }
            }
        }
    }

    rep.ricci = RationalMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            RationalFunction v;
            for (std::size_t i = 0; i < n; ++i) v += rep.riemann.at({i, j, i, l});
            rep.ricci(j, l) = v;
        }
    }
    rep.scalar = RationalFunction();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            if (!ginv(j, l).is_zero() && !rep.ricci(j, l).is_zero()) rep.scalar += ginv(j, l) * rep.ricci(j, l);
        }
    }

    if (n >= 3) {
        const RationalFunction c1(Scalar(1, static_cast<long>(n - 2)));
        const RationalFunction c2 = rep.scalar * RationalFunction(Scalar(1, static_cast<long>((n - 1) * (n - 2))));
        const auto& R = rep.ricci;
        rep.weyl = Tensor(n, 4);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) {
                        RationalFunction ric = R(i, k) * g(j, l) - R(i, l) * g(j, k) - R(j, k) * g(i, l) + R(j, l) * g(i, k);
                        RationalFunction gg = g(i, k) * g(j, l) - g(i, l) * g(j, k);
                        rep.weyl.at({i, j, k, l}) = rep.riemann_lowered.at({i, j, k, l}) - c1 * ric + c2 * gg;
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

nlohmann::json tensor_json(const Tensor& t) {
    auto out = nlohmann::json::array();
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t.flat(f).is_zero()) continue;
        out.push_back({{"index", t.index_of(f)}, {"value", algebra::to_prefix(t.flat(f))}});
    }
    return out;
}

} // namespace

nlohmann::json to_json(const CurvatureReport& report) {
    auto ricci = nlohmann::json::array();
    for (std::size_t i = 0; i < report.ricci.rows(); ++i) {
        for (std::size_t j = 0; j < report.ricci.cols(); ++j) {
            if (!report.ricci(i, j).is_zero()) {
                ricci.push_back({{"index", {i, j}}, {"value", algebra::to_prefix(report.ricci(i, j))}});
            }
        }
    }
    return {{"christoffel", tensor_json(report.christoffel)},
            {"riemann", tensor_json(report.riemann)},
            {"ricci", ricci},
            {"scalar", algebra::to_prefix(report.scalar)},
            {"weyl", tensor_json(report.weyl)}};
}

RationalMatrix CoordinateMap::jacobian() const {
    const auto n = images.size();
    RationalMatrix j(n, static_cast<std::size_t>(from.dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (int m = 0; m < from.dim; ++m) j(i, static_cast<std::size_t>(m)) = images[i].derivative(from.var(m));
    }
    return j;
}

RationalFunction CoordinateMap::pull(const RationalFunction& e) const {
    RationalFunction r = e;
    for (int i = 0; i < to.dim; ++i) r = r.substitute(to.var(i), images[static_cast<std::size_t>(i)]);
    return r;
}

RationalMatrix CoordinateMap::pull(const RationalMatrix& m) const {
    return m.map([this](const RationalFunction& e) { return pull(e); });
}

CoordinateMap compose(const CoordinateMap& second, const CoordinateMap& first) {
    if (!(second.from == first.to)) throw std::invalid_argument("coordinate maps do not compose");
    CoordinateMap out{first.from, second.to, {}};
    for (const auto& e : second.images) out.images.push_back(first.pull(e));
    return out;
}

RationalMatrix pushforward_metric(const RationalMatrix& g, const CoordinateMap& map) {
    RationalMatrix jinv = algebra::inverse(map.jacobian());
    return jinv.transpose() * g * jinv;
}

RationalMatrix pushforward_inverse_metric(const RationalMatrix& g, const CoordinateMap& map) {
    RationalMatrix j = map.jacobian();
    return j * g * j.transpose();
}

RationalMatrix pullback_inverse_metric(const RationalMatrix& g, const CoordinateMap& map) {
    RationalMatrix x = algebra::inverse(map.jacobian());
    return x * map.pull(g) * x.transpose();
}

} // namespace wdvv::geometry
