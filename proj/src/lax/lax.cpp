#include <wdvv/lax/lax.hpp>

#include <wdvv/algebra/expr.hpp>
#include <wdvv/systems/systems.hpp>

#include <limits>
#include <set>
#include <stdexcept>

namespace wdvv::lax {

using algebra::Family;
using algebra::Polynomial;
using algebra::Var;

ScalarOp scalar_lax_reduction(const RationalMatrix& lax) {
    const auto n = lax.rows();
    if (n < 2 || lax.cols() != n) throw std::invalid_argument("Lax matrix must be square of size at least 2");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (!lax(i, j).is_zero()) throw std::invalid_argument("Lax matrix has entries above the superdiagonal");
        }
    }
    const RationalFunction lambda(jet::kLambda);
    const RationalFunction inv_lambda = lambda.inverse();
    const ScalarOp dx = ScalarOp::dx();
    std::vector<ScalarOp> psi{ScalarOp::multiplication(RationalFunction(1))};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (lax(i, i + 1).is_zero()) throw std::invalid_argument("Lax matrix has a zero superdiagonal entry");
        ScalarOp next = inv_lambda * diffop::compose(dx, psi[i]);
        for (std::size_t j = 0; j <= i; ++j) {
            if (!lax(i, j).is_zero()) next -= lax(i, j) * psi[j];
        }
        next *= lax(i, i + 1).inverse();
        psi.push_back(std::move(next));
    }
    ScalarOp eq = diffop::compose(dx, psi[n - 1]);
    for (std::size_t j = 0; j < n; ++j) {
        if (!lax(n - 1, j).is_zero()) eq -= (lambda * lax(n - 1, j)) * psi[j];
    }
    return eq;
}

Var riccati_var(int order) { return Var(Family::r, 0, order); }

RationalFunction riccati_substitution(const ScalarOp& eq) {
    const RationalFunction r(riccati_var());
    RationalFunction b(1), sum;
    for (int k = 0; k <= eq.order(); ++k) {
        if (k > 0) b = jet::total_derivative(b) + r * b;
        if (!eq.coeff(k).is_zero()) sum += eq.coeff(k) * b;
    }
    return sum;
}

std::map<int, RationalFunction> laurent_coefficients(const RationalFunction& e, Var v) {
    auto pick = [v](Var w) { return w == v; };
    auto den = e.den().collect(pick);
    if (den.size() != 1) throw std::invalid_argument("denominator is not a monomial in " + v.str());
    const auto& [den_mono, den_rest] = *den.begin();
    int shift = static_cast<int>(den_mono.degree_in(v));
    std::map<int, RationalFunction> out;
    for (const auto& [mono, rest] : e.num().collect(pick)) {
        out.emplace(static_cast<int>(mono.degree_in(v)) - shift, RationalFunction(rest, den_rest));
    }
    return out;
}

nlohmann::json to_json(const BranchExpansion& e) {
    nlohmann::json h = nlohmann::json::array();
    for (const auto& d : e.h) h.push_back(algebra::to_prefix(d));
    return {{"schema", 1},
            {"N", e.N},
            {"branch", e.branch},
            {"chart", {{"family", std::string(1, algebra::family_letter(e.chart.family))}, {"base", e.chart.base}, {"dim", e.chart.dim}}},
            {"leading", algebra::to_prefix(e.leading)},
            {"h", h},
            {"complete", e.complete}};
}

BranchExpansion expansion_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported expansion schema");
    BranchExpansion e;
    e.N = j.at("N").get<int>();
    e.branch = j.at("branch").get<int>();
    const auto& c = j.at("chart");
    auto fam = algebra::family_from_letter(c.at("family").get<std::string>().at(0));
    if (!fam) throw std::invalid_argument("unknown family in expansion chart");
    e.chart = jet::Chart{*fam, c.at("base").get<int>(), c.at("dim").get<int>()};
    e.leading = algebra::parse_rational(j.at("leading").get<std::string>());
    for (const auto& h : j.at("h")) e.h.push_back(algebra::parse_rational(h.get<std::string>()));
    e.complete = j.at("complete").get<bool>();
    return e;
}

std::string expansion_key(int N, int branch, int depth) {
    auto viete = systems::viete_map(N);
    std::string text = "lax-expansion/1\nN=" + std::to_string(N) + "\nbranch=" + std::to_string(branch) +
                       "\ndepth=" + std::to_string(depth) + "\nlax=" + algebra::to_text(systems::lax_matrix(N)) + "\nviete=";
    for (const auto& img : viete.images) text += algebra::to_prefix(img) + ";";
    return support::content_hash(text);
}

BranchExpansion expand_branch(int N, int k, int depth, const ExpandOptions& opts) {
    auto chart = systems::u_chart(N);
    if (k < 1 || k > N) throw std::out_of_range("branch must lie in 1.." + std::to_string(N));
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    std::string key;
    if (opts.cache) {
        key = expansion_key(N, k, depth);
        if (auto doc = opts.cache->load("expansion", key)) {
            auto cached = expansion_from_json(*doc);
            if (cached.complete) return cached;
        }
    }

    auto viete = systems::viete_map(N);
    ScalarOp eq = scalar_lax_reduction(viete.pull(systems::lax_matrix(N)));

    // Multiplying by μ^T = λ^{-T} turns Σ c_{k,e} λ^{k+e} γ_k(μ) into a
    // power series in μ; `shift` is the μ power carried by each term.
    struct Term {
        int order;
        int shift;
        RationalFunction coeff;
    };
    std::vector<Term> terms;
    int top = std::numeric_limits<int>::min();
    for (int ord = 0; ord <= eq.order(); ++ord) {
        for (auto& [e, c] : laurent_coefficients(eq.coeff(ord), jet::kLambda)) {
            terms.push_back({ord, ord + e, std::move(c)});
            top = std::max(top, ord + e);
        }
    }
    for (auto& t : terms) t.shift = top - t.shift;

    const RationalFunction s0 = jet::field(Family::u, k);
    std::vector<RationalFunction> s0_pow{RationalFunction(1)};
    for (int i = 1; i <= eq.order(); ++i) s0_pow.push_back(s0_pow.back() * s0);
    RationalFunction phi0, slope;
    for (const auto& t : terms) {
        if (t.shift != 0) continue;
        phi0 += t.coeff * s0_pow[static_cast<std::size_t>(t.order)];
        if (t.order > 0) slope += RationalFunction(t.order) * t.coeff * s0_pow[static_cast<std::size_t>(t.order - 1)];
    }
    if (!phi0.is_zero()) throw std::logic_error("leading coefficient does not vanish on the root branch");
    if (slope.is_zero()) throw std::logic_error("root branch is not simple");

    BranchExpansion out{N, k, chart, s0, {}, true};
    const int J = depth + 1;
    const auto orders = static_cast<std::size_t>(eq.order()) + 1;
    // gamma[m][j]: coefficient of μ^j in λ^{-m} B_m(λ s(μ)).
    std::vector<std::vector<RationalFunction>> gamma(orders, std::vector<RationalFunction>(static_cast<std::size_t>(J) + 1));
    for (std::size_t m = 0; m < orders; ++m) gamma[m][0] = s0_pow[m];
    std::vector<RationalFunction> s{s0};

    auto stop = [&](const std::string& where) {
        try {
            opts.budget.check(where);
        } catch (const support::BudgetExceeded&) {
            out.complete = false;
            if (opts.progress) opts.progress(out);
            throw;
        }
    };

    for (int j = 1; j <= J; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        for (std::size_t m = 0; m + 1 < orders; ++m) {
            RationalFunction g = jet::total_derivative(gamma[m][ju - 1]);
            if (!gamma[m][ju].is_zero()) g += s0 * gamma[m][ju];
            for (std::size_t i = 1; i < ju; ++i) {
                if (!s[i].is_zero() && !gamma[m][ju - i].is_zero()) g += s[i] * gamma[m][ju - i];
            }
            gamma[m + 1][ju] = std::move(g);
            stop("order " + std::to_string(j - 1) + ", derivative " + std::to_string(m + 1));
        }
        RationalFunction phi;
        for (const auto& t : terms) {
            if (t.shift > j) continue;
            const auto& g = gamma[static_cast<std::size_t>(t.order)][static_cast<std::size_t>(j - t.shift)];
            if (!g.is_zero()) phi += t.coeff * g;
        }
        RationalFunction sj = -phi / slope;
        for (std::size_t m = 1; m < orders; ++m) {
            gamma[m][ju] += RationalFunction(static_cast<long>(m)) * s0_pow[m - 1] * sj;
        }
        s.push_back(sj);
        out.h.push_back(std::move(sj));
        if (opts.progress) opts.progress(out);
        if (j < J) stop("order " + std::to_string(j - 1));
    }
    if (opts.cache) opts.cache->store("expansion", key, to_json(out));
    return out;
}

poisson::Outcome check_conserved(const RationalFunction& h, const geometry::CoordinateMap& map, const systems::HydroSystem& flow) {
    const auto& chart = map.from;
    const auto n = static_cast<std::size_t>(chart.dim);
    RationalMatrix jinv = algebra::inverse(map.jacobian());
    std::vector<RationalFunction> at(n), ut(n);
    for (std::size_t i = 0; i < n; ++i) at[i] = jet::total_derivative(map.pull(flow.fluxes[i]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!jinv(i, j).is_zero()) ut[i] += jinv(i, j) * at[j];
        }
    }
    std::set<Var> vars;
    for (Var v : h.num().variables()) vars.insert(v);
    for (Var v : h.den().variables()) vars.insert(v);
    RationalFunction dt;
    for (Var v : vars) {
        if (v.family() != chart.family) continue;
        auto j = static_cast<std::size_t>(v.component() - chart.base);
        dt += h.derivative(v) * jet::total_derivative(ut[j], v.order());
    }
    poisson::Outcome out;
    for (int c = 0; c < chart.dim; ++c) {
        if (!out.absorb(jet::variational_derivative(dt, chart.family, chart.base + c), "E(" + chart.var(c).str() + ")")) break;
    }
    return out;
}

std::optional<int> differential_degree(const RationalFunction& e, Family f) {
    auto degree = [f](const Polynomial& p) -> std::optional<int> {
        std::optional<int> d;
        for (const auto& t : p.terms()) {
            int w = 0;
            for (const auto& [v, ex] : t.mono.factors()) {
                if (v.family() == f) w += v.order() * static_cast<int>(ex);
            }
            if (d && *d != w) return std::nullopt;
            d = w;
        }
        return d.value_or(0);
    };
    auto dn = degree(e.num());
    auto dd = degree(e.den());
    if (!dn || !dd) return std::nullopt;
    return *dn - *dd;
}

namespace {

// ∂E_j(h)/∂f^m_(order) for h quasi-homogeneous of degree `order`: only
// Σ_k (−1)^k ∂²h/∂f^j_(k)∂f^m_(order−k) survives.
RationalMatrix top_symbol(const RationalFunction& h, const jet::Chart& chart, int order) {
    const auto n = static_cast<std::size_t>(chart.dim);
    RationalMatrix out(n, n);
    for (int k = 0; k <= order; ++k) {
        const int hi = std::max(k, order - k);
        const int lo = order - hi;
        for (std::size_t first = 0; first < n; ++first) {
            auto d = h.derivative(chart.var(static_cast<int>(first), hi));
            if (d.is_zero()) continue;
            for (std::size_t second = 0; second < n; ++second) {
                auto dd = d.derivative(chart.var(static_cast<int>(second), lo));
                if (dd.is_zero()) continue;
                // The higher jet belongs to f^j when k = hi.
                std::size_t j = k == hi ? first : second;
                std::size_t m = k == hi ? second : first;
                if (k % 2) out(j, m) -= dd;
                else out(j, m) += dd;
            }
        }
    }
    return out;
}

} // namespace

RationalMatrix quadratic_form(const RationalFunction& h1, const jet::Chart& chart) { return top_symbol(h1, chart, 2); }

RationalMatrix quartic_form(const RationalFunction& h3, const jet::Chart& chart) {
    const RationalFunction half(Scalar(1, 2));
    return top_symbol(h3, chart, 4).map([&](const RationalFunction& e) { return half * e; });
}

QuadraticFormData extract_forms(const std::vector<BranchExpansion>& branches) {
    if (branches.empty()) throw std::invalid_argument("no branches to extract forms from");
    QuadraticFormData out{branches.front().chart, {}, {}};
    bool quartic = true;
    for (const auto& b : branches) {
        if (!(b.chart == out.chart)) throw std::invalid_argument("branches live on different charts");
        if (b.depth() < 1) throw std::invalid_argument("branch expansion lacks h₁");
        quartic = quartic && b.depth() >= 3;
    }
    auto check_degree = [&](const RationalFunction& h, int expected, const char* name) {
        if (h.is_zero()) return;
        auto d = differential_degree(h, out.chart.family);
        if (!d || *d != expected) throw std::invalid_argument(std::string(name) + " is not quasi-homogeneous of degree " + std::to_string(expected));
    };
    for (const auto& b : branches) {
        check_degree(b.h[1], 2, "h1");
        out.G.push_back(quadratic_form(b.h[1], out.chart));
        if (quartic) {
            check_degree(b.h[3], 4, "h3");
            out.Q.push_back(quartic_form(b.h[3], out.chart));
        }
    }
    return out;
}

RationalMatrix combine(const std::vector<RationalMatrix>& ms, const std::vector<Scalar>& xi) {
    if (ms.empty() || ms.size() != xi.size()) throw std::invalid_argument("ξ has the wrong number of components");
    RationalMatrix out(ms.front().rows(), ms.front().cols());
    for (std::size_t m = 0; m < ms.size(); ++m) {
        if (sgn(xi[m]) == 0) continue;
        out += ms[m].map([&](const RationalFunction& e) { return RationalFunction(xi[m]) * e; });
    }
    return out;
}

RationalMatrix reconstruct_leading_metric(const QuadraticFormData& q, const ScalarMatrix& k, const std::vector<Scalar>& xi,
                                          const Scalar& kappa) {
    if (sgn(kappa) == 0) throw std::invalid_argument("recursion constant must be nonzero");
    if (q.Q.size() != q.G.size()) throw std::invalid_argument("quartic forms are required for the reconstruction");
    RationalMatrix c;
    try {
        c = algebra::inverse(combine(q.G, xi));
    } catch (const algebra::SingularMatrix&) {
        throw DegenerateXi();
    }
    const Scalar factor = Scalar(2) / kappa;
    RationalMatrix kk = k.map([&](const Scalar& s) { return RationalFunction(factor * s); });
    return kk * combine(q.Q, xi) * c;
}

namespace {

std::vector<Scalar> small_rationals() {
    std::vector<Scalar> out{Scalar(0)};
    for (long den = 1; den <= 6; ++den) {
        for (long num = 1; num <= 2 * den; ++num) {
            Scalar v = algebra::make_scalar(num, den);
            if (v.get_den() != den) continue;
            out.push_back(v);
            out.push_back(-v);
        }
    }
    return out;
}

bool nondegenerate_at_points(const QuadraticFormData& q, const std::vector<Scalar>& xi) {
    bool all_zero = true;
    for (const auto& v : xi) all_zero = all_zero && sgn(v) == 0;
    if (all_zero) return false;
    RationalMatrix g = combine(q.G, xi);
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long offset : {0L, 5L}) {
        std::map<Var, Scalar> point;
        for (int i = 0; i < q.chart.dim; ++i) point[q.chart.var(i)] = Scalar(primes[(static_cast<std::size_t>(i + offset)) % 12] + offset);
        try {
            algebra::ScalarMatrix at = g.map([&](const RationalFunction& e) {
                auto v = e.evaluate(point);
                if (!v.is_constant()) throw std::invalid_argument("form depends on derivatives");
                return v.constant_value();
            });
            if (sgn(algebra::determinant(at)) != 0) return true;
        } catch (const std::domain_error&) {
        }
    }
    return false;
}

} // namespace

bool is_nondegenerate(const QuadraticFormData& q, const std::vector<Scalar>& xi) {
    return xi.size() == q.G.size() && nondegenerate_at_points(q, xi);
}

poisson::Outcome check_reconstruction(const QuadraticFormData& q, const ScalarMatrix& k, const std::vector<Scalar>& xi,
                                      const Scalar& kappa, const RationalMatrix& target) {
    if (sgn(kappa) == 0) throw std::invalid_argument("recursion constant must be nonzero");
    if (q.Q.size() != q.G.size()) throw std::invalid_argument("quartic forms are required for the reconstruction");
    if (!is_nondegenerate(q, xi)) throw DegenerateXi();
    const Scalar factor = Scalar(2) / kappa;
    RationalMatrix kk = k.map([&](const Scalar& s) { return RationalFunction(factor * s); });
    RationalMatrix lhs = target * combine(q.G, xi);
    RationalMatrix rhs = kk * combine(q.Q, xi);
    poisson::Outcome out;
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            if (!out.absorb(lhs(i, j) - rhs(i, j), "entry [" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]")) return out;
        }
    }
    return out;
}

std::vector<Scalar> choose_xi(const QuadraticFormData& q, const std::vector<Scalar>& preferred) {
    if (is_nondegenerate(q, preferred)) return preferred;
    const auto values = small_rationals();
    std::vector<std::size_t> idx(q.G.size(), 0);
    while (true) {
        std::size_t pos = idx.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < values.size()) break;
            idx[pos] = 0;
            if (pos == 0) throw DegenerateXi();
        }
        std::vector<Scalar> xi;
        for (auto i : idx) xi.push_back(values[i]);
        if (nondegenerate_at_points(q, xi)) return xi;
    }
}

} // namespace wdvv::lax
