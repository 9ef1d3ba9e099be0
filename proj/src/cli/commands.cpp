#include <wdvv/cli/commands.hpp>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/lax/lax.hpp>
#include <wdvv/reconstruct/reconstruct.hpp>

#include <map>

namespace wdvv::cli {

using algebra::Family;
using algebra::RationalFunction;
using algebra::RationalMatrix;
using algebra::Scalar;
using algebra::ScalarMatrix;
using diffop::LocalOperator;
using poisson::Outcome;

namespace {

RationalMatrix lift(const ScalarMatrix& m) {
    return m.map([](const Scalar& s) { return RationalFunction(s); });
}

Outcome equal(const RationalFunction& x, const RationalFunction& y, const std::string& where = {}) {
    Outcome o;
    o.absorb(x - y, where);
    return o;
}

Outcome equal(const RationalMatrix& x, const RationalMatrix& y) {
    Outcome o;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (!o.absorb(x(i, j) - y(i, j), "entry [" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]")) return o;
        }
    }
    return o;
}

Outcome trivial(const RationalFunction& h, const std::string& what) {
    Outcome o;
    if (!jet::is_trivial_density(h)) {
        o.passed = false;
        o.residual = what + " is not a total derivative";
    }
    return o;
}

Outcome all_of(std::initializer_list<Outcome> parts) {
    Outcome o;
    for (const auto& p : parts) {
        o.peak_terms = std::max(o.peak_terms, p.peak_terms);
        if (o.passed && !p.passed) {
            o.passed = false;
            o.residual = p.residual;
        }
    }
    return o;
}

Outcome zero_flows(const LocalOperator& op, const std::vector<RationalFunction>& densities) {
    Outcome o;
    std::vector<RationalFunction> zero(op.dim());
    for (std::size_t k = 0; k < densities.size(); ++k) {
        auto v = reconstruct::check_generates(op, densities[k], zero);
        o.peak_terms = std::max(o.peak_terms, v.peak_terms);
        if (!v.passed) {
            o.passed = false;
            o.residual = "density " + std::to_string(k + 1) + ", " + v.residual;
            return o;
        }
    }
    return o;
}

Outcome columns_parallel(const RationalMatrix& g, const jet::Chart& chart, const RationalMatrix& psi) {
    Outcome o;
    for (std::size_t c = 0; c < psi.cols(); ++c) {
        std::vector<RationalFunction> col;
        for (std::size_t i = 0; i < psi.rows(); ++i) col.push_back(psi(i, c));
        auto v = reconstruct::check_parallel(g, chart, col);
        if (!v.passed) {
            o.passed = false;
            o.residual = "column " + std::to_string(c + 1) + ", " + v.residual;
            return o;
        }
    }
    return o;
}

} // namespace

const std::vector<std::string>& operator_names() {
    static const std::vector<std::string> names{"K", "A1a", "A1n3", "A2n3", "g3", "g6"};
    return names;
}

LocalOperator named_operator(const std::string& name) {
    if (name == "K") return LocalOperator::from_matrix(lift(systems::flat_metric(4)), 1, systems::u_chart(4));
    if (name == "A1a") return systems::first_operator(4);
    if (name == "A1n3") return systems::first_operator(3);
    if (name == "A2n3") return systems::third_operator_n3();
    if (name == "g3") return diffop::build_third_order_canonical({systems::monge_metric(3), systems::a_chart(3)});
    if (name == "g6") return diffop::build_third_order_canonical({systems::monge_metric(4), systems::a_chart(4)});
    throw std::out_of_range("unknown operator: " + name);
}

support::Budget expansion_budget(int N, int depth, std::optional<double> seconds, std::optional<double> gigabytes) {
    if (!seconds && !gigabytes && N == 4 && depth >= 3) return support::Budget(600.0, 2.0);
    return support::Budget(seconds, gigabytes);
}

std::vector<Scalar> parse_xi(const std::string& text) {
    std::vector<Scalar> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(start, end - start);
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        Scalar v;
        if (item.empty() || v.set_str(item, 10) != 0 || v.get_den() == 0) throw std::invalid_argument("bad xi component: '" + item + "'");
        v.canonicalize();
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

Scalar default_kappa(int N) { return N == 3 ? Scalar(1, 2) : Scalar(1); }

void verify_n3(Manifest& m, const Options& opts) {
    Runner r(m, opts.budget);
    auto a1 = systems::first_operator(3);
    auto a2 = systems::third_operator_n3();
    auto g = systems::monge_metric(3);
    auto chart = systems::a_chart(3);

    r.expect("n3.A1.skew", "first-order operator is skew-adjoint", [&] { return poisson::is_skew_adjoint(a1); });
    r.expect("n3.A2.skew", "third-order operator is skew-adjoint", [&] { return poisson::is_skew_adjoint(a2); });
    r.run("n3.A1.dn", "first-order operator is of Dubrovin-Novikov type", [&] {
        return poisson::check_first_order_dn(poisson::first_order_data(a1));
    });
    r.run("n3.schouten.A1A1", "[A1,A1] = 0", [&] { return poisson::schouten_bracket_vanishes(a1, a1); });
    r.run("n3.schouten.A2A2", "[A2,A2] = 0", [&] { return poisson::schouten_bracket_vanishes(a2, a2); });
    r.run("n3.schouten.A1A2", "[A1,A2] = 0", [&] { return poisson::schouten_bracket_vanishes(a1, a2); });
    r.run("n3.monge", "metric is a Monge metric", [&] { return poisson::check_monge(g, chart); });
    r.run("n3.potemin", "metric solves the Potemin system", [&] { return poisson::check_potemin(g, chart); });
    r.run("n3.inverse", "inverse metric is the leading coefficient of A2", [&] {
        return equal(geometry::invert_metric(g), a2.coefficient(3));
    });
    r.run("n3.canonical", "canonical operator of the metric is A2", [&] {
        Outcome o;
        o.passed = diffop::build_third_order_canonical({g, chart}) == a2;
        if (!o.passed) o.residual = "operators differ";
        return o;
    });
    r.expect("n3.curvature.flat", "metric is flat", [&] { return geometry::curvature(g, chart).riemann.is_zero(); });

    std::optional<reconstruct::ParallelSolution> s;
    r.run("n3.decomposition", "parallel covectors factorize A2", [&] {
        s = reconstruct::decompose(g, chart);
        Outcome o = all_of({reconstruct::check_skew(*s), reconstruct::check_cyclic(*s)});
        if (o.passed && !(diffop::build_factorized(s->factorized()) == a2)) {
            o.passed = false;
            o.residual = "factorized operator differs from A2";
        }
        return o;
    });
    if (!s) return;
    auto reduced = diffop::reduce_to_first_order_in_b(s->factorized());
    auto flow = systems::build_systems(3)[0];
    r.run("n3.hamiltonian.flow", "h1 in potentials generates the system", [&] {
        return reconstruct::check_generates(reduced, systems::hamiltonian_density_n3(), reconstruct::potential_flow(flow));
    });
    r.run("n3.hamiltonian.formula", "closed-form Hamiltonian equals h1", [&] {
        auto h = reconstruct::hamiltonian_density(*s, reconstruct::eta_matrix(*s, flow));
        return trivial(h - systems::hamiltonian_density_n3(), "difference");
    });
    r.run("n3.casimirs", "nonlocal Casimirs give zero flows", [&] { return zero_flows(reduced, reconstruct::casimirs(*s)); });
    r.run("n3.momentum", "momentum generates translation", [&] {
        return reconstruct::check_generates(reduced, reconstruct::momentum(*s), reconstruct::translation(chart.with_family(Family::b)));
    });
}

void verify_n4(Manifest& m, const Options& opts) {
    Runner r(m, opts.budget);
    auto sys = systems::build_systems(4);
    auto a1 = systems::first_operator(4);
    auto g = systems::monge_metric(4);
    auto chart = systems::a_chart(4);
    auto bchart = chart.with_family(Family::b);
    auto f = systems::factorization_n4();
    auto a2 = diffop::build_third_order_canonical({g, chart});
    auto published = reconstruct::split(f.psi, f.phi, f.chart);
    auto reduced = diffop::reduce_to_first_order_in_b(f);
    const RationalFunction x = jet::field(Family::a, 1);

    r.run("n4.flows.commute", "the two flows commute", [&] { return systems::verify_commuting(sys[0], sys[1]); });
    r.run("n4.A1.dn", "first-order operator is of Dubrovin-Novikov type", [&] {
        return poisson::check_first_order_dn(poisson::first_order_data(a1));
    });
    r.run("n4.monge", "metric is a Monge metric", [&] { return poisson::check_monge(g, chart); });
    r.run("n4.potemin", "metric solves the Potemin system", [&] { return poisson::check_potemin(g, chart); });
    r.run("n4.det.g", "det g = (a1)^4", [&] { return equal(algebra::determinant(g), x.pow(4)); });
    r.run("n4.det.psi", "det psi = -(a1)^2", [&] { return equal(algebra::determinant(f.psi), -x.pow(2)); });
    r.run("n4.det.phi", "det phi = 1", [&] { return equal(RationalFunction(algebra::determinant(f.phi)), RationalFunction(1)); });
    r.run("n4.decomposition", "psi phi psi^T = g", [&] { return equal(f.psi * lift(f.phi) * f.psi.transpose(), g); });
    r.run("n4.factorized", "factorized operator equals the canonical one", [&] {
        Outcome o;
        o.passed = diffop::build_factorized(f) == a2;
        if (!o.passed) o.residual = "operators differ";
        return o;
    });
    r.expect("n4.A2.skew", "third-order operator is skew-adjoint", [&] { return poisson::is_skew_adjoint(a2); });

    std::optional<geometry::CurvatureReport> curv;
    r.expect("n4.curvature.riemann", "Riemann tensor is nonzero", [&] {
        curv = geometry::curvature(g, chart);
        return !curv->riemann.is_zero();
    });
    r.expect("n4.curvature.scalar", "scalar curvature vanishes", [&] { return curv && curv->scalar.is_zero(); });
    r.expect("n4.curvature.weyl", "Weyl tensor is nonzero", [&] { return curv && !curv->weyl.is_zero(); });

    r.run("n4.parallel.published", "published psi solves the parallel system", [&] { return columns_parallel(g, chart, f.psi); });
    r.run("n4.parallel.solved", "parallel system has six solutions that reproduce g", [&] {
        auto s = reconstruct::decompose(g, chart);
        return equal(s.psi * lift(s.phi) * s.psi.transpose(), g);
    });
    r.run("n4.phi", "phi = psi^-1 g psi^-T is the published matrix", [&] {
        return equal(lift(reconstruct::compute_phi(g, f.psi)), lift(f.phi));
    });
    r.run("n4.constraint.c", "psi_km is skew in k, m", [&] { return reconstruct::check_skew(published); });
    r.run("n4.constraint.seven", "cyclic constraints on psi and omega", [&] { return reconstruct::check_cyclic(published); });
    for (int flow : {1, 2}) {
        const std::string tag = flow == 1 ? "y" : "z";
        r.run("n4.eta." + tag, "eta matrix of the " + tag + "-flow", [&] {
            return equal(lift(reconstruct::eta_matrix(published, sys[static_cast<std::size_t>(flow - 1)])), lift(systems::eta_matrix(flow)));
        });
        r.run("n4.constraint.very." + tag, "eta constraints of the " + tag + "-flow", [&] {
            return reconstruct::check_eta_constraints(published, systems::eta_matrix(flow));
        });
    }

    r.run("n4.K.h7", "K d/dx with h7 = a5 generates the y-flow", [&] {
        return reconstruct::check_first_order_flow(4, jet::field(Family::a, 5), &sys[0]);
    });
    r.run("n4.K.h8", "K d/dx with h8 = a6/2 generates the z-flow", [&] {
        return reconstruct::check_first_order_flow(4, RationalFunction(Scalar(1, 2)) * jet::field(Family::a, 6), &sys[1]);
    });
    r.run("n4.K.h6", "K d/dx with h6 = a3 generates translation", [&] {
        return reconstruct::check_first_order_flow(4, jet::field(Family::a, 3), nullptr);
    });

    for (int flow : {1, 2}) {
        const std::string tag = flow == 1 ? "y" : "z";
        const auto& target = sys[static_cast<std::size_t>(flow - 1)];
        r.run("n4.b.h" + std::to_string(flow), "reduced third-order operator with h~" + std::to_string(flow) + " generates the " + tag + "-flow", [&] {
            return reconstruct::check_generates(reduced, systems::hamiltonian_density_n4(flow), reconstruct::potential_flow(target));
        });
        r.run("n4.b.formula" + std::to_string(flow), "closed-form Hamiltonian equals h~" + std::to_string(flow), [&] {
            auto h = reconstruct::hamiltonian_density(published, systems::eta_matrix(flow));
            return trivial(h - systems::hamiltonian_density_n4(flow), "difference");
        });
    }
    r.run("n4.casimirs", "six Casimirs give zero flows", [&] {
        return all_of({zero_flows(reduced, systems::casimir_densities_n4()), zero_flows(reduced, reconstruct::casimirs(published))});
    });
    r.run("n4.momentum", "P generates translation", [&] {
        return reconstruct::check_generates(reduced, systems::momentum_density_n4(), reconstruct::translation(bchart));
    });
    r.run("n4.momentum.formula", "closed-form momentum equals P", [&] {
        return trivial(reconstruct::momentum(published) - systems::momentum_density_n4(), "difference");
    });

    r.run("n4.schouten.A1A1", "[A1,A1] = 0", [&] { return poisson::schouten_bracket_vanishes(a1, a1); });
    r.run("n4.schouten.A2A2", "[A2,A2] = 0", [&] { return poisson::schouten_bracket_vanishes(a2, a2); });
    r.run("n4.schouten.A1A2", "[A1,A2] = 0", [&] { return poisson::schouten_bracket_vanishes(a1, a2); });
}

namespace {

nlohmann::json order_report(const RationalFunction& h, int order, bool triviality) {
    auto d = lax::differential_degree(h, Family::u);
    nlohmann::json out{{"order", order},
                       {"numerator_terms", h.num().size()},
                       {"denominator_terms", h.den().size()},
                       {"degree", d ? nlohmann::json(*d) : nlohmann::json(nullptr)}};
    if (triviality) out["trivial"] = jet::is_trivial_density(h);
    return out;
}

lax::BranchExpansion expand_reported(Manifest& m, int N, int branch, int depth, const Options& opts, bool triviality = false) {
    lax::ExpandOptions eo{opts.budget, opts.cache, {}};
    const std::string key = "branch" + std::to_string(branch);
    eo.progress = [&](const lax::BranchExpansion& e) {
        auto& orders = m.data["expansions"][key];
        orders = nlohmann::json::array();
        for (std::size_t i = 0; i < e.h.size(); ++i) orders.push_back(order_report(e.h[i], static_cast<int>(i), triviality));
    };
    auto e = lax::expand_branch(N, branch, depth, eo);
    eo.progress(e);
    return e;
}

} // namespace

void expand(Manifest& m, int N, int branch, int depth, const Options& opts) {
    Runner r(m, opts.budget);
    m.data["N"] = N;
    m.data["branch"] = branch;
    m.data["depth"] = depth;
    m.data["key"] = lax::expansion_key(N, branch, depth);
    auto e = expand_reported(m, N, branch, depth, opts, true);
    r.expect("expand.leading", "leading term is the flat coordinate", [&] { return e.leading == jet::field(Family::u, branch); });
    r.run("expand.h0.trivial", "h0 is a total derivative", [&] { return trivial(e.h[0], "h0"); });
    for (int i = 0; i <= depth; ++i) {
        r.expect("expand.h" + std::to_string(i) + ".degree", "h" + std::to_string(i) + " has differential degree " + std::to_string(i + 1),
                 [&] { return lax::differential_degree(e.h[static_cast<std::size_t>(i)], Family::u) == i + 1; });
    }
}

void reconstruct(Manifest& m, int N, const std::vector<Scalar>& xi, std::optional<Scalar> kappa, const Options& opts) {
    if (N != 3 && N != 4) throw std::invalid_argument("N must be 3 or 4");
    if (xi.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("xi needs " + std::to_string(N) + " components");
    Runner r(m, opts.budget);
    const Scalar k = kappa.value_or(default_kappa(N));
    m.data["N"] = N;
    m.data["kappa"] = k.get_str();
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& v : xi) xs.push_back(v.get_str());
    m.data["xi"] = xs;
    std::vector<lax::BranchExpansion> branches;
    for (int b = 1; b <= N; ++b) branches.push_back(expand_reported(m, N, b, 3, opts));
    std::optional<lax::QuadraticFormData> q;
    r.run("reconstruct.forms", "quadratic and quartic forms read off every branch", [&] {
        q = lax::extract_forms(branches);
        return Outcome{};
    });
    if (!q) return;
    r.expect("reconstruct.xi", "the xi combination of quadratic forms is nondegenerate", [&] { return lax::is_nondegenerate(*q, xi); });
    if (!m.checks.back().passed) {
        auto alt = lax::choose_xi(*q, xi);
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : alt) a.push_back(v.get_str());
        m.data["suggested_xi"] = a;
        return;
    }
    r.run("reconstruct.metric", "reconstructed leading coefficient equals the inverse Monge metric", [&] {
        auto map = systems::viete_map(N);
        auto target = geometry::pullback_inverse_metric(geometry::invert_metric(systems::monge_metric(N)), map);
        return lax::check_reconstruction(*q, systems::flat_metric(N), xi, k, target);
    });
}

void lax_n4(Manifest& m, const Options& opts) {
    Runner r(m, opts.budget);
    std::vector<lax::BranchExpansion> branches;
    for (int b = 1; b <= 4; ++b) branches.push_back(expand_reported(m, 4, b, 1, opts));
    r.run("lax4.h0.trivial", "every h0k is a total derivative", [&] {
        Outcome o;
        for (const auto& b : branches) {
            if (!o.passed) break;
            o = trivial(b.h[0], "h0" + std::to_string(b.branch));
        }
        return o;
    });
    r.run("lax4.h1.sum", "sum of the h1k is a total derivative", [&] {
        RationalFunction sum;
        for (const auto& b : branches) sum += b.h[1];
        return trivial(sum, "sum");
    });
    r.expect("lax4.h1.independent", "h11, h12, h13 are independent modulo total derivatives", [&] {
        // Variational gradients of rank three at one rational point.
        const auto& chart = branches.front().chart;
        std::map<algebra::Var, Scalar> point;
        const long values[] = {3, 5, 7, 11, 13, 17};
        for (int c = 0; c < chart.dim; ++c) {
            for (int order = 0; order <= 2; ++order) point[chart.var(c, order)] = Scalar(values[c] + 2 * order);
        }
        ScalarMatrix grads(3, static_cast<std::size_t>(chart.dim));
        for (std::size_t k = 0; k < 3; ++k) {
            for (int c = 0; c < chart.dim; ++c) {
                auto v = jet::variational_derivative(branches[k].h[1], Family::u, chart.base + c).evaluate(point);
                if (!v.is_constant()) return false;
                grads(k, static_cast<std::size_t>(c)) = v.constant_value();
            }
        }
        return algebra::rank(grads) == 3;
    });
    r.expect("lax4.G.nondegenerate", "det(G1 + G2/3 + G4/2) is nonzero", [&] {
        auto q = lax::extract_forms(branches);
        return lax::is_nondegenerate(q, {1, Scalar(1, 3), 0, Scalar(1, 2)});
    });
}

void schouten(Manifest& m, const std::string& a, const std::string& b, const Options& opts) {
    Runner r(m, opts.budget);
    auto x = named_operator(a);
    auto y = named_operator(b);
    r.expect("schouten.skew." + a, a + " is skew-adjoint", [&] { return poisson::is_skew_adjoint(x); });
    if (b != a) r.expect("schouten.skew." + b, b + " is skew-adjoint", [&] { return poisson::is_skew_adjoint(y); });
    r.run("schouten." + a + "." + b, "[" + a + "," + b + "] = 0", [&] { return poisson::schouten_bracket_vanishes(x, y); });
}

void curvature(Manifest& m, const std::string& metric, const Options& opts) {
    Runner r(m, opts.budget);
    int N = 0;
    if (metric == "g3") N = 3;
    if (metric == "g6") N = 4;
    if (N == 0) throw std::out_of_range("unknown metric: " + metric);
    auto g = systems::monge_metric(N);
    auto chart = systems::a_chart(N);
    std::optional<geometry::CurvatureReport> rep;
    r.expect("curvature.report", "curvature tensors computed", [&] {
        rep = geometry::curvature(g, chart);
        return true;
    });
    if (!rep) return;
    m.data["riemann_zero"] = rep->riemann.is_zero();
    m.data["riemann_nonzero_components"] = rep->riemann.nonzero_count();
    m.data["ricci_zero"] = rep->ricci.is_zero();
    m.data["scalar"] = algebra::to_prefix(rep->scalar);
    m.data["weyl_zero"] = rep->weyl.is_zero();
    if (N == 3) {
        r.expect("curvature.flat", "metric is flat", [&] { return rep->riemann.is_zero(); });
    } else {
        r.expect("curvature.riemann", "Riemann tensor is nonzero", [&] { return !rep->riemann.is_zero(); });
        r.expect("curvature.scalar", "scalar curvature vanishes", [&] { return rep->scalar.is_zero(); });
        r.expect("curvature.weyl", "Weyl tensor is nonzero", [&] { return !rep->weyl.is_zero(); });
    }
}

} // namespace wdvv::cli
