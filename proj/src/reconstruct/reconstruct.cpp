#include <wdvv/reconstruct/reconstruct.hpp>

#include <wdvv/algebra/expr.hpp>

#include <map>

namespace wdvv::reconstruct {

using algebra::Family;
using algebra::Monomial;
using algebra::Polynomial;
using algebra::Var;

namespace {

RationalFunction lift(const Scalar& s) { return RationalFunction(s); }

std::string at(std::initializer_list<std::size_t> idx) {
    std::string s = "[";
    bool first = true;
    for (auto i : idx) {
        s += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
    }
    return s + "]";
}

Polynomial lcm(const Polynomial& x, const Polynomial& y) {
    Polynomial g = algebra::gcd(x, y);
    return *(x * y).divide_exact(g);
}

// M[p](j, k) = Σ_q g^{pq} ⅓(g_{qj,k} − g_{qk,j}).
std::vector<RationalMatrix> parallel_coefficients(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    RationalMatrix ginv = geometry::invert_metric(g);
    auto c = diffop::lowered_connection(g, chart);
    std::vector<RationalMatrix> m(n, RationalMatrix(n, n));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                RationalFunction sum;
                for (std::size_t q = 0; q < n; ++q) {
                    const auto& cq = c[diffop::connection_index(n, q, k, j)];
                    if (!cq.is_zero() && !ginv(p, q).is_zero()) sum += ginv(p, q) * cq;
                }
                m[p](j, k) = sum;
            }
        }
    }
    return m;
}

// Σ_{β,γ} φ_{βγ} x^β y^γ.
Scalar pair(const ScalarMatrix& phi, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    Scalar s = 0;
    for (std::size_t b = 0; b < x.size(); ++b) {
        if (sgn(x[b]) == 0) continue;
        for (std::size_t c = 0; c < y.size(); ++c) {
            if (sgn(y[c]) != 0 && sgn(phi(b, c)) != 0) s += phi(b, c) * x[b] * y[c];
        }
    }
    return s;
}

// ψ_{ij}^γ as a vector over γ.
std::vector<Scalar> lin_vec(const ParallelSolution& s, std::size_t i, std::size_t j) {
    std::vector<Scalar> v(s.dim());
    for (std::size_t g = 0; g < s.dim(); ++g) v[g] = s.lin[g](i, j);
    return v;
}

std::vector<Scalar> row(const ScalarMatrix& m, std::size_t i) {
    std::vector<Scalar> v(m.cols());
    for (std::size_t g = 0; g < m.cols(); ++g) v[g] = m(i, g);
    return v;
}

RationalFunction bfield(const ParallelSolution& s, std::size_t i, int order = 0) {
    return s.chart.with_family(Family::b).field(static_cast<int>(i), order);
}

} // namespace

poisson::Outcome check_parallel(const RationalMatrix& g, const jet::Chart& chart, const std::vector<RationalFunction>& psi) {
    const std::size_t n = g.rows();
    auto m = parallel_coefficients(g, chart);
    poisson::Outcome out;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            RationalFunction e = psi[j].derivative(chart.var(static_cast<int>(k)));
            for (std::size_t p = 0; p < n; ++p) {
                if (!m[p](j, k).is_zero()) e -= psi[p] * m[p](j, k);
            }
            if (!out.absorb(e, "parallel" + at({j, k}))) return out;
        }
    }
    return out;
}

RationalMatrix solve_parallel_system(const RationalMatrix& g, const jet::Chart& chart) {
    const std::size_t n = g.rows();
    auto m = parallel_coefficients(g, chart);
    // Unknown u < n² is the coefficient of aᵐ in ψ_k (u = k·n + m); unknown
    // n² + k is the constant term ω_k.
    const std::size_t unknowns = n * n + n;
    auto entry = [&](std::size_t u) -> std::pair<std::size_t, RationalFunction> {
        if (u < n * n) return {u / n, chart.field(static_cast<int>(u % n))};
        return {u - n * n, RationalFunction(1)};
    };
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<RationalFunction> r(unknowns);
            Polynomial den(1);
            for (std::size_t u = 0; u < unknowns; ++u) {
                auto [slot, value] = entry(u);
                RationalFunction e;
                if (slot == j) e += value.derivative(chart.var(static_cast<int>(k)));
                if (!m[slot](j, k).is_zero()) e -= value * m[slot](j, k);
                if (!e.den().is_one()) den = lcm(den, e.den());
                r[u] = std::move(e);
            }
            std::map<Monomial, std::vector<Scalar>, algebra::MonomialGreater> by_mono;
            for (std::size_t u = 0; u < unknowns; ++u) {
                if (r[u].is_zero()) continue;
                Polynomial num = r[u].num() * *den.divide_exact(r[u].den());
                for (const auto& t : num.terms()) {
                    auto& v = by_mono[t.mono];
                    if (v.empty()) v.assign(unknowns, Scalar(0));
                    v[u] += t.coeff;
                }
            }
            for (auto& [mono, v] : by_mono) rows.push_back(std::move(v));
        }
    }
    ScalarMatrix system(rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t u = 0; u < unknowns; ++u) system(i, u) = rows[i][u];
    }
    auto basis = algebra::nullspace(system);
    if (basis.size() != n) {
        throw NotPotemin("parallel system has " + std::to_string(basis.size()) + " solutions, expected " + std::to_string(n));
    }
    RationalMatrix psi(n, n);
    for (std::size_t gamma = 0; gamma < n; ++gamma) {
        for (std::size_t u = 0; u < unknowns; ++u) {
            if (sgn(basis[gamma][u]) == 0) continue;
            auto [slot, value] = entry(u);
            psi(slot, gamma) += lift(basis[gamma][u]) * value;
        }
    }
    return psi;
}

ScalarMatrix compute_phi(const RationalMatrix& g, const RationalMatrix& psi) {
    RationalMatrix x = algebra::inverse(psi);
    RationalMatrix phi = x * g * x.transpose();
    ScalarMatrix out(phi.rows(), phi.cols());
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        for (std::size_t j = 0; j < phi.cols(); ++j) {
            if (!phi(i, j).is_constant()) throw NotPotemin("phi is not constant at " + at({i, j}));
            out(i, j) = phi(i, j).constant_value();
        }
    }
    return out;
}

ParallelSolution split(const RationalMatrix& psi, const ScalarMatrix& phi, const jet::Chart& chart) {
    diffop::check_affine({psi, phi, chart});
    const std::size_t n = psi.rows();
    ParallelSolution s{chart, psi, std::vector<ScalarMatrix>(n, ScalarMatrix(n, n)), ScalarMatrix(n, n), phi};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t g = 0; g < n; ++g) {
            s.omega(k, g) = psi(k, g).num().constant_term();
            for (std::size_t m = 0; m < n; ++m) {
                auto d = psi(k, g).derivative(chart.var(static_cast<int>(m)));
                s.lin[g](k, m) = d.is_zero() ? Scalar(0) : d.constant_value();
            }
        }
    }
    return s;
}

ParallelSolution decompose(const RationalMatrix& g, const jet::Chart& chart) {
    RationalMatrix psi = solve_parallel_system(g, chart);
    return split(psi, compute_phi(g, psi), chart);
}

poisson::Outcome check_skew(const ParallelSolution& s) {
    poisson::Outcome out;
    const std::size_t n = s.dim();
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t m = k; m < n; ++m) {
                if (!out.absorb(lift(s.lin[g](k, m) + s.lin[g](m, k)), "skew" + at({k, m, g}))) return out;
            }
        }
    }
    return out;
}

poisson::Outcome check_cyclic(const ParallelSolution& s) {
    poisson::Outcome out;
    const std::size_t n = s.dim();
    std::vector<std::vector<Scalar>> l(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) l[i * n + j] = lin_vec(s, i, j);
    }
    auto L = [&](std::size_t i, std::size_t j) -> const std::vector<Scalar>& { return l[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t t = 0; t < n; ++t) {
                    Scalar e = pair(s.phi, L(i, t), L(j, k)) + pair(s.phi, L(j, t), L(k, i)) + pair(s.phi, L(k, t), L(i, j));
                    if (!out.absorb(lift(e), "cyclic" + at({i, j, k, t}))) return out;
                }
                auto w = [&](std::size_t x) { return row(s.omega, x); };
                Scalar e = pair(s.phi, w(i), L(j, k)) + pair(s.phi, w(j), L(k, i)) + pair(s.phi, w(k), L(i, j));
                if (!out.absorb(lift(e), "cyclic-omega" + at({i, j, k}))) return out;
            }
        }
    }
    return out;
}

poisson::Outcome check_eta_constraints(const ParallelSolution& s, const ScalarMatrix& eta) {
    poisson::Outcome out;
    const std::size_t n = s.dim();
    auto h = [&](std::size_t x) { return row(eta, x); };
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t k = 0; k < n; ++k) {
                Scalar e = pair(s.phi, lin_vec(s, q, p), h(k)) + pair(s.phi, lin_vec(s, k, q), h(p)) +
                           pair(s.phi, lin_vec(s, p, k), h(q));
                if (!out.absorb(lift(e), "eta-cyclic" + at({q, p, k}))) return out;
            }
            Scalar e = pair(s.phi, row(s.omega, p), h(q)) - pair(s.phi, row(s.omega, q), h(p));
            if (!out.absorb(lift(e), "eta-omega" + at({p, q}))) return out;
        }
    }
    return out;
}

std::vector<RationalFunction> casimirs(const ParallelSolution& s) {
    const std::size_t n = s.dim();
    std::vector<RationalFunction> out;
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
        RationalFunction total;
        for (std::size_t m = 0; m < n; ++m) {
            RationalFunction c = lift(s.omega(m, alpha));
            for (std::size_t k = 0; k < n; ++k) {
                if (sgn(s.lin[alpha](m, k)) != 0) c += lift(Scalar(s.lin[alpha](m, k) / 2)) * bfield(s, k, 1);
            }
            if (!c.is_zero()) total += c * bfield(s, m);
        }
        out.push_back(total);
    }
    return out;
}

RationalFunction momentum(const ParallelSolution& s) {
    const std::size_t n = s.dim();
    RationalFunction total;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            RationalFunction c = lift(Scalar(pair(s.phi, row(s.omega, p), row(s.omega, q)) / 2));
            for (std::size_t m = 0; m < n; ++m) {
                Scalar w = pair(s.phi, row(s.omega, q), lin_vec(s, p, m));
                if (sgn(w) != 0) c += lift(Scalar(w / 3)) * bfield(s, m, 1);
            }
            if (!c.is_zero()) total -= c * bfield(s, p) * bfield(s, q);
        }
    }
    return total;
}

ScalarMatrix eta_matrix(const ParallelSolution& s, const systems::HydroSystem& flow) {
    const std::size_t n = s.dim();
    ScalarMatrix eta(n, n);
    for (std::size_t g = 0; g < n; ++g) {
        RationalFunction e;
        for (std::size_t m = 0; m < n; ++m) {
            e += jet::potential_substitution(s.psi(m, g)) * jet::potential_substitution(flow.fluxes[m]);
        }
        RationalFunction rest = e;
        for (std::size_t m = 0; m < n; ++m) {
            Var v = bfield(s, m, 1).num().leading().mono.factors().front().var;
            RationalFunction d = e.derivative(v);
            if (!d.is_zero() && !d.is_constant()) throw NonlinearFlow();
            eta(m, g) = d.is_zero() ? Scalar(0) : d.constant_value();
            if (!d.is_zero()) rest -= d * bfield(s, m, 1);
        }
        if (!rest.is_zero()) throw NonlinearFlow();
    }
    return eta;
}

std::vector<Scalar> zeta(const ParallelSolution& s, const ScalarMatrix& eta, ZetaMode mode) {
    const std::size_t n = s.dim();
    auto h = [&](std::size_t x) { return row(eta, x); };
    auto idx = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    std::vector<Scalar> z(n * n * n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (mode == ZetaMode::standard) {
                    Scalar v = pair(s.phi, lin_vec(s, k, p), h(q)) + 2 * pair(s.phi, lin_vec(s, q, k), h(p));
                    z[idx(k, p, q)] = v / 3;
                    continue;
                }
                // Entry ζ_{kpq} with the last index on bₓ.
                if (k == p) continue;
                if (q == k) {
                    z[idx(k, p, q)] = pair(s.phi, lin_vec(s, k, p), h(k));
                } else if (q == p) {
                    z[idx(k, p, q)] = pair(s.phi, lin_vec(s, p, k), h(p));
                } else {
                    Scalar v = pair(s.phi, lin_vec(s, q, p), h(k)) - pair(s.phi, lin_vec(s, k, q), h(p));
                    z[idx(k, p, q)] = v / 3;
                }
            }
        }
    }
    return z;
}

RationalFunction hamiltonian_density(const ParallelSolution& s, const ScalarMatrix& eta, ZetaMode mode) {
    auto constraints = check_eta_constraints(s, eta);
    if (!constraints.passed) throw ConstraintViolation("eta constraints fail: " + constraints.residual);
    const std::size_t n = s.dim();
    auto z = zeta(s, eta, mode);
    RationalFunction total;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            RationalFunction c = -lift(pair(s.phi, row(s.omega, p), row(eta, q)));
            for (std::size_t m = 0; m < n; ++m) {
                const Scalar& w = z[(p * n + q) * n + m];
                if (sgn(w) != 0) c += lift(w) * bfield(s, m, 1);
            }
            if (!c.is_zero()) total += c * bfield(s, p) * bfield(s, q);
        }
    }
    return RationalFunction(Scalar(1, 2)) * total;
}

std::vector<RationalFunction> gradient(const RationalFunction& h, const jet::Chart& chart) {
    std::vector<RationalFunction> out;
    for (int i = 0; i < chart.dim; ++i) out.push_back(jet::variational_derivative(h, chart.family, chart.base + i));
    return out;
}

poisson::Outcome check_generates(const LocalOperator& op, const RationalFunction& h, const std::vector<RationalFunction>& expected) {
    auto got = diffop::apply(op, gradient(h, op.chart()));
    poisson::Outcome out;
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (!out.absorb(got[i] - expected[i], "component " + std::to_string(i + 1))) return out;
    }
    return out;
}

std::vector<RationalFunction> potential_flow(const systems::HydroSystem& flow) {
    std::vector<RationalFunction> out;
    for (const auto& v : flow.fluxes) out.push_back(jet::potential_substitution(v));
    return out;
}

std::vector<RationalFunction> translation(const jet::Chart& chart) {
    std::vector<RationalFunction> out;
    for (int i = 0; i < chart.dim; ++i) out.push_back(chart.field(i, 1));
    return out;
}

poisson::Outcome check_first_order_flow(int N, const RationalFunction& h_of_a, const systems::HydroSystem* flow) {
    auto map = systems::viete_map(N);
    auto k = systems::flat_metric(N).map([](const Scalar& x) { return RationalFunction(x); });
    auto op = LocalOperator::from_matrix(k, 1, map.from);
    auto ut = diffop::apply(op, gradient(map.pull(h_of_a), map.from));
    auto j = map.jacobian();
    poisson::Outcome out;
    for (std::size_t i = 0; i < map.images.size(); ++i) {
        RationalFunction at;
        for (std::size_t m = 0; m < ut.size(); ++m) at += j(i, m) * ut[m];
        RationalFunction expected = flow ? jet::total_derivative(map.pull(flow->fluxes[i])) : jet::total_derivative(map.images[i]);
        if (!out.absorb(at - expected, "component " + std::to_string(i + 1))) return out;
    }
    return out;
}

} // namespace wdvv::reconstruct
