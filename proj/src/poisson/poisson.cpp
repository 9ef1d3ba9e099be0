#include <wdvv/poisson/poisson.hpp>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/geometry/geometry.hpp>

#include <map>
#include <set>
#include <stdexcept>

namespace wdvv::poisson {

using algebra::Family;
using algebra::Scalar;
using algebra::Var;
using jet::Chart;

bool Outcome::absorb(const RationalFunction& e, const std::string& where) {
    peak_terms = std::max(peak_terms, e.num().size() + e.den().size());
    if (e.is_zero()) return true;
    if (passed) {
        passed = false;
        residual = where.empty() ? algebra::to_prefix(e) : where + ": " + algebra::to_prefix(e);
    }
    return false;
}

bool is_skew_adjoint(const LocalOperator& a) { return (diffop::adjoint(a) + a).is_zero(); }

namespace {

std::string index_label(std::initializer_list<std::size_t> idx) {
    std::string s = "[";
    for (auto i : idx) s += (s.size() > 1 ? "," : "") + std::to_string(i);
    return s + "]";
}

std::vector<RationalFunction> covector(const Chart& chart, Family f) {
    std::vector<RationalFunction> v;
    for (int i = 0; i < chart.dim; ++i) v.push_back(chart.with_family(f).field(i));
    return v;
}

std::set<Var> field_vars(const RationalFunction& e, Family f) {
    std::set<Var> out;
    for (Var v : e.num().variables()) {
        if (v.family() == f) out.insert(v);
    }
    for (Var v : e.den().variables()) {
        if (v.family() == f) out.insert(v);
    }
    return out;
}

// ⟨ℓ_{A,p}(X), r⟩ where `ap` holds A p.
RationalFunction paired_linearization(const std::vector<RationalFunction>& ap, const std::vector<RationalFunction>& x,
                                      const std::vector<RationalFunction>& r, const Chart& chart) {
    std::map<Var, RationalFunction> dx_cache;
    auto derived = [&](Var v) -> const RationalFunction& {
        auto it = dx_cache.find(v);
        if (it != dx_cache.end()) return it->second;
        auto l = static_cast<std::size_t>(v.component() - chart.base);
        return dx_cache.emplace(v, jet::total_derivative(x[l], v.order())).first->second;
    };
    RationalFunction sum;
    for (std::size_t i = 0; i < ap.size(); ++i) {
        RationalFunction li;
        for (Var v : field_vars(ap[i], chart.family)) {
            const auto& dxv = derived(v);
            if (dxv.is_zero()) continue;
            li += ap[i].derivative(v) * dxv;
        }
        if (!li.is_zero()) sum += r[i] * li;
    }
    return sum;
}

} // namespace

RationalFunction schouten_trivector(const LocalOperator& a, const LocalOperator& b) {
    if (!(a.chart() == b.chart())) throw std::invalid_argument("Schouten bracket of operators on different charts");
    const Chart& chart = a.chart();
    if (chart.family == Family::p || chart.family == Family::q || chart.family == Family::r) {
        throw std::invalid_argument("operator fields clash with the covector families");
    }
    const Family fam[3] = {Family::p, Family::q, Family::r};
    std::vector<RationalFunction> cov[3], av[3], bv[3];
    for (int k = 0; k < 3; ++k) {
        cov[k] = covector(chart, fam[k]);
        av[k] = diffop::apply(a, cov[k]);
        bv[k] = diffop::apply(b, cov[k]);
    }
    RationalFunction t;
    for (int s = 0; s < 3; ++s) {
        int p = s, q = (s + 1) % 3, r = (s + 2) % 3;
        t += paired_linearization(av[p], bv[q], cov[r], chart);
        t += paired_linearization(bv[p], av[q], cov[r], chart);
    }
    return t;
}

Outcome schouten_bracket_vanishes(const LocalOperator& a, const LocalOperator& b, SchoutenOptions opts) {
    if (!is_skew_adjoint(a) || !is_skew_adjoint(b)) throw std::invalid_argument("Schouten bracket needs skew-adjoint operators");
    RationalFunction t = schouten_trivector(a, b);
    Outcome out;
    out.peak_terms = t.num().size() + t.den().size();
    const Chart& chart = a.chart();
    std::vector<Family> families{Family::p};
    if (opts.all_families) families = {Family::p, Family::q, Family::r, chart.family};
    for (Family f : families) {
        for (int i = 0; i < chart.dim; ++i) {
            int c = chart.base + i;
            auto e = jet::variational_derivative(t, f, c);
            if (!out.absorb(e, "E(" + Var(f, c, 0).str() + ")")) return out;
        }
    }
    return out;
}

diffop::FirstOrderDN first_order_data(const LocalOperator& op) {
    const Chart& chart = op.chart();
    const auto n = op.dim();
    if (op.order() > 1) throw std::invalid_argument("operator is not of first order");
    diffop::FirstOrderDN data{op.coefficient(1), std::vector<RationalMatrix>(n, RationalMatrix(n, n)), chart};
    RationalMatrix free = op.coefficient(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            RationalFunction rest = free(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                Var vx = chart.var(static_cast<int>(k), 1);
                data.b[k](i, j) = free(i, j).derivative(vx);
                rest -= data.b[k](i, j) * RationalFunction(vx);
            }
            bool homogeneous = rest.is_zero();
            for (std::size_t k = 0; k < n && homogeneous; ++k) {
                homogeneous = !data.b[k](i, j).has_var_if([&](Var v) { return v.family() == chart.family && v.order() > 0; });
            }
            if (!homogeneous) throw std::invalid_argument("free term is not linear in the first derivatives");
        }
    }
    return data;
}

Outcome check_first_order_dn(const diffop::FirstOrderDN& data) {
    const auto n = data.g.rows();
    const auto& g = data.g;
    const auto& b = data.b;
    if (algebra::is_zero(algebra::determinant(g))) throw algebra::SingularMatrix("metric is degenerate");
    Outcome out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!out.absorb(g(i, j) - g(j, i), "symmetry" + index_label({i, j}))) return out;
        }
    }
    // Compatibility with the metric: ∂_k g^{ij} = b_k^{ij} + b_k^{ji}.
    for (std::size_t k = 0; k < n; ++k) {
        auto v = data.chart.var(static_cast<int>(k));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                RationalFunction e = g(i, j).derivative(v) - b[k](i, j) - b[k](j, i);
                if (!out.absorb(e, "compatibility" + index_label({k, i, j}))) return out;
            }
        }
    }
    // Symmetry of the connection: g^{is} b_s^{jk} = g^{js} b_s^{ik}.
    auto gb = [&](std::size_t i, std::size_t j, std::size_t k) {
        RationalFunction acc;
        for (std::size_t s = 0; s < n; ++s) {
            if (!g(i, s).is_zero() && !b[s](j, k).is_zero()) acc += g(i, s) * b[s](j, k);
        }
        return acc;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!out.absorb(gb(i, j, k) - gb(j, i, k), "torsion" + index_label({i, j, k}))) return out;
            }
        }
    }
    // R^{ijk}_l = g^{is}(∂_s b_l^{jk} − ∂_l b_s^{jk}) + b_s^{ij} b_l^{sk} − b_s^{ik} b_l^{sj}.
    std::vector<std::vector<RationalMatrix>> db(n);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t s = 0; s < n; ++s) {
            auto v = data.chart.var(static_cast<int>(s));
            db[l].push_back(b[l].map([v](const RationalFunction& e) { return e.derivative(v); }));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    RationalFunction e;
                    for (std::size_t s = 0; s < n; ++s) {
                        if (!g(i, s).is_zero()) {
                            RationalFunction d = db[l][s](j, k) - db[s][l](j, k);
                            if (!d.is_zero()) e += g(i, s) * d;
                        }
                        if (!b[s](i, j).is_zero() && !b[l](s, k).is_zero()) e += b[s](i, j) * b[l](s, k);
                        if (!b[s](i, k).is_zero() && !b[l](s, j).is_zero()) e -= b[s](i, k) * b[l](s, j);
                    }
                    if (!out.absorb(e, "curvature" + index_label({i, j, k, l}))) return out;
                }
            }
        }
    }
    return out;
}

namespace {

std::vector<RationalMatrix> metric_derivatives(const RationalMatrix& g, const Chart& chart) {
    std::vector<RationalMatrix> dg;
    for (int k = 0; k < chart.dim; ++k) {
        Var v = chart.var(k);
        dg.push_back(g.map([v](const RationalFunction& e) { return e.derivative(v); }));
    }
    return dg;
}

} // namespace

Outcome check_monge(const RationalMatrix& g, const Chart& chart) {
    const auto n = g.rows();
    auto dg = metric_derivatives(g, chart);
    Outcome out;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t s = 0; s < n; ++s) {
                RationalFunction e = dg[s](m, k) + dg[m](k, s) + dg[k](m, s);
                if (!out.absorb(e, "Monge" + index_label({m, k, s}))) return out;
            }
        }
    }
    return out;
}

Outcome check_potemin(const RationalMatrix& g, const Chart& chart) {
    const auto n = g.rows();
    RationalMatrix ginv = geometry::invert_metric(g);
    auto dg = metric_derivatives(g, chart);
    // w[(l, m)] is the vector g_{pl,m} − g_{pm,l} indexed by p, v its raised form.
    std::vector<std::vector<RationalFunction>> w(n * n), v(n * n);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t m = 0; m < n; ++m) {
            auto& wl = w[l * n + m];
            wl.resize(n);
            for (std::size_t p = 0; p < n; ++p) wl[p] = dg[m](p, l) - dg[l](p, m);
        }
    }
    for (std::size_t lm = 0; lm < n * n; ++lm) {
        v[lm].resize(n);
        for (std::size_t q = 0; q < n; ++q) {
            RationalFunction acc;
            for (std::size_t p = 0; p < n; ++p) {
                if (!ginv(q, p).is_zero() && !w[lm][p].is_zero()) acc += ginv(q, p) * w[lm][p];
            }
            v[lm][q] = acc;
        }
    }
    const RationalFunction third(Scalar(1, 3));
    Outcome out;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t l = 0; l < n; ++l) {
                    RationalFunction e = dg[s](m, k).derivative(chart.var(static_cast<int>(l))) -
                                         dg[k](m, s).derivative(chart.var(static_cast<int>(l)));
                    RationalFunction quad;
                    const auto& vl = v[l * n + m];
                    const auto& wk = w[k * n + s];
                    for (std::size_t q = 0; q < n; ++q) {
                        if (!vl[q].is_zero() && !wk[q].is_zero()) quad += vl[q] * wk[q];
                    }
                    e += third * quad;
                    if (!out.absorb(e, "Potemin" + index_label({m, k, s, l}))) return out;
                }
            }
        }
    }
    return out;
}

} // namespace wdvv::poisson
