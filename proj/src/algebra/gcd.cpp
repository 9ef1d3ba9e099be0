// Multivariate polynomial gcd over Q.
//
// Cheap structural reductions (constants, monomials, variables present in
// only one argument) run first; what remains goes to Brown's dense modular
// algorithm: images over Z_p by recursive evaluation/interpolation of the
// last variable, Chinese remaindering over primes, and a final trial
// division over Q.

#include <wdvv/algebra/polynomial.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace wdvv::algebra {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Exps = std::vector<std::uint16_t>;

struct Field {
    u64 p;
    u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    u64 reduce(const Integer& z) const {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
        return r.get_ui();
    }
};

// ---- dense univariate polynomials over Z_p (index = degree) ----

using UPoly = std::vector<u64>;

void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int udeg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 ueval(const UPoly& a, u64 x, const Field& F) {
    u64 r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x), *it);
    return r;
}

UPoly umul(const UPoly& a, const UPoly& b, const Field& F) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

UPoly uscale(UPoly a, u64 c, const Field& F) {
    for (auto& x : a) x = F.mul(x, c);
    trim(a);
    return a;
}

void uaddto(UPoly& a, const UPoly& b, const Field& F) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    trim(a);
}

// Quotient and remainder; b must be nonzero.
void udivrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r, const Field& F) {
    r = a;
    q.clear();
    if (udeg(a) < udeg(b)) return;
    q.assign(a.size() - b.size() + 1, 0);
    u64 inv = F.inv(b.back());
    for (int k = udeg(r); k >= udeg(b); --k) {
        u64 c = F.mul(r[k], inv);
        if (c == 0) continue;
        int shift = k - udeg(b);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = F.sub(r[shift + j], F.mul(c, b[j]));
    }
    trim(r);
    trim(q);
}

UPoly umonic(UPoly a, const Field& F) {
    if (a.empty()) return a;
    return uscale(std::move(a), F.inv(a.back()), F);
}

UPoly ugcd(UPoly a, UPoly b, const Field& F) {
    while (!b.empty()) {
        UPoly q, r;
        udivrem(a, b, q, r, F);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(std::move(a), F);
}

UPoly uexact_div(const UPoly& a, const UPoly& b, const Field& F) {
    UPoly q, r;
    udivrem(a, b, q, r, F);
    if (!r.empty()) throw std::logic_error("modular gcd: inexact univariate division");
    return q;
}

// ---- sparse multivariate polynomials over Z_p, lex order on exponents ----

struct MTerm {
    Exps e;
    u64 c;
};
using MPoly = std::vector<MTerm>;

struct LexGreater {
    bool operator()(const Exps& x, const Exps& y) const { return y < x; }
};

void mnormalize(MPoly& a, const Field& F) {
    std::sort(a.begin(), a.end(), [](const MTerm& x, const MTerm& y) { return y.e < x.e; });
    MPoly out;
    out.reserve(a.size());
    for (auto& t : a) {
        if (!out.empty() && out.back().e == t.e) {
            out.back().c = F.add(out.back().c, t.c);
        } else {
            if (!out.empty() && out.back().c == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    a = std::move(out);
}

bool mconst(const MPoly& a) {
    for (const auto& t : a) {
        for (auto x : t.e) {
            if (x) return false;
        }
    }
    return true;
}

MPoly mscale(MPoly a, u64 c, const Field& F) {
    for (auto& t : a) t.c = F.mul(t.c, c);
    return a;
}

MPoly eval_last(const MPoly& a, u64 alpha, const Field& F) {
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a) {
        Exps e(t.e.begin(), t.e.end() - 1);
        u64 c = F.mul(t.c, F.pow(alpha, t.e.back()));
        if (c == 0) continue;
        if (!out.empty() && out.back().e == e) {
            out.back().c = F.add(out.back().c, c);
            if (out.back().c == 0) out.pop_back();
        } else {
            out.push_back({std::move(e), c});
        }
    }
    mnormalize(out, F);
    return out;
}

using Groups = std::vector<std::pair<Exps, UPoly>>;

// Coefficients in the last variable, keyed by the remaining exponents.
Groups split_last(const MPoly& a) {
    Groups g;
    for (const auto& t : a) {
        Exps key(t.e.begin(), t.e.end() - 1);
        if (g.empty() || g.back().first != key) g.push_back({std::move(key), UPoly{}});
        auto& up = g.back().second;
        auto d = t.e.back();
        if (up.size() <= d) up.resize(d + 1, 0);
        up[d] = t.c;
    }
    return g;
}

MPoly join_last(const Groups& g) {
    MPoly out;
    for (const auto& [key, up] : g) {
        for (int d = udeg(up); d >= 0; --d) {
            if (up[d] == 0) continue;
            Exps e = key;
            e.push_back(static_cast<std::uint16_t>(d));
            out.push_back({std::move(e), up[d]});
        }
    }
    return out;
}

UPoly groups_content(const Groups& g, const Field& F) {
    UPoly c;
    for (const auto& [key, up] : g) {
        c = ugcd(c, up, F);
        if (udeg(c) == 0) break;
    }
    return c;
}

// True when b divides a over Z_p.
bool mdivides(const MPoly& a, const MPoly& b, const Field& F) {
    if (b.empty()) return false;
    std::map<Exps, u64, LexGreater> rem;
    for (const auto& t : a) rem.emplace(t.e, t.c);
    const auto& lead = b.front();
    u64 inv = F.inv(lead.c);
    std::size_t k = lead.e.size();
    while (!rem.empty()) {
        auto it = rem.begin();
        Exps q(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (it->first[i] < lead.e[i]) return false;
            q[i] = static_cast<std::uint16_t>(it->first[i] - lead.e[i]);
        }
        u64 c = F.mul(it->second, inv);
        rem.erase(it);
        for (std::size_t j = 1; j < b.size(); ++j) {
            Exps e(k);
            for (std::size_t i = 0; i < k; ++i) e[i] = static_cast<std::uint16_t>(b[j].e[i] + q[i]);
            u64 sub = F.mul(b[j].c, c);
            auto [pos, inserted] = rem.try_emplace(std::move(e), F.neg(sub));
            if (!inserted) {
                pos->second = F.sub(pos->second, sub);
                if (pos->second == 0) rem.erase(pos);
            }
        }
    }
    return true;
}

MPoly from_upoly_last(const UPoly& u, std::size_t k) {
    MPoly out;
    for (int d = udeg(u); d >= 0; --d) {
        if (u[d] == 0) continue;
        Exps e(k, 0);
        e[k - 1] = static_cast<std::uint16_t>(d);
        out.push_back({std::move(e), u[d]});
    }
    return out;
}

MPoly mul_by_upoly_last(const MPoly& a, const UPoly& u, const Field& F) {
    auto g = split_last(a);
    for (auto& [key, up] : g) up = umul(up, u, F);
    return join_last(g);
}

// gcd over Z_p[x_0..x_{k-1}] of nonzero a, b; result defined up to a unit.
MPoly pgcd(const MPoly& a, const MPoly& b, std::size_t k, const Field& F) {
    if (k == 0) return {{Exps{}, 1}};
    if (k == 1) {
        UPoly ua, ub;
        for (const auto& t : a) {
            if (ua.size() <= t.e[0]) ua.resize(t.e[0] + 1, 0);
            ua[t.e[0]] = t.c;
        }
        for (const auto& t : b) {
            if (ub.size() <= t.e[0]) ub.resize(t.e[0] + 1, 0);
            ub[t.e[0]] = t.c;
        }
        return from_upoly_last(ugcd(ua, ub, F), 1);
    }

    auto ga = split_last(a);
    auto gb = split_last(b);
    UPoly ca = groups_content(ga, F);
    UPoly cb = groups_content(gb, F);
    UPoly cont = ugcd(ca, cb, F);
    for (auto& [key, up] : ga) up = uexact_div(up, ca, F);
    for (auto& [key, up] : gb) up = uexact_div(up, cb, F);
    UPoly lca = ga.front().second;
    UPoly lcb = gb.front().second;
    UPoly g = ugcd(lca, lcb, F);
    int dega = 0;
    int degb = 0;
    for (const auto& [key, up] : ga) dega = std::max(dega, udeg(up));
    for (const auto& [key, up] : gb) degb = std::max(degb, udeg(up));
    const int bound = std::min(dega, degb) + udeg(g);
    MPoly pa = join_last(ga);
    MPoly pb = join_last(gb);

    if (gb.size() == 1 && gb.front().first == Exps(k - 1, 0)) return from_upoly_last(cont, k);
    if (ga.size() == 1 && ga.front().first == Exps(k - 1, 0)) return from_upoly_last(cont, k);

    std::map<Exps, UPoly, LexGreater> interp;
    Exps lm;
    UPoly modulus{1};
    int npts = 0;
    for (u64 alpha = 1; alpha < F.p; ++alpha) {
        u64 g_at = ueval(g, alpha, F);
        if (g_at == 0 || ueval(lca, alpha, F) == 0 || ueval(lcb, alpha, F) == 0) continue;
        MPoly image = pgcd(eval_last(pa, alpha, F), eval_last(pb, alpha, F), k - 1, F);
        if (mconst(image)) return from_upoly_last(cont, k);
        image = mscale(std::move(image), F.mul(g_at, F.inv(image.front().c)), F);

        bool changed = true;
        if (npts == 0 || image.front().e < lm) {
            interp.clear();
            for (const auto& t : image) interp[t.e] = UPoly{t.c};
            lm = image.front().e;
            modulus = UPoly{F.neg(alpha), 1};
            npts = 1;
        } else if (lm < image.front().e) {
            continue;
        } else {
            changed = false;
            u64 inv_q = F.inv(ueval(modulus, alpha, F));
            std::map<Exps, u64, LexGreater> vals;
            for (const auto& t : image) vals[t.e] = t.c;
            for (const auto& [e, c] : vals) interp.try_emplace(e, UPoly{});
            for (auto it = interp.begin(); it != interp.end();) {
                auto vit = vals.find(it->first);
                u64 target = vit == vals.end() ? 0 : vit->second;
                u64 diff = F.sub(target, ueval(it->second, alpha, F));
                if (diff != 0) {
                    changed = true;
                    uaddto(it->second, uscale(modulus, F.mul(diff, inv_q), F), F);
                }
                if (it->second.empty()) {
                    it = interp.erase(it);
                } else {
                    ++it;
                }
            }
            modulus = umul(modulus, UPoly{F.neg(alpha), 1}, F);
            ++npts;
        }

        if (!changed || npts > bound) {
            Groups cand;
            for (const auto& [e, up] : interp) cand.push_back({e, up});
            UPoly cc = groups_content(cand, F);
            for (auto& [e, up] : cand) up = uexact_div(up, cc, F);
            MPoly d = join_last(cand);
            if (mdivides(pa, d, F) && mdivides(pb, d, F)) return mul_by_upoly_last(d, cont, F);
        }
    }
    throw std::runtime_error("modular gcd: ran out of evaluation points");
}

// ---- integer layer ----

struct ZTerm {
    Exps e;
    Integer c;
};
using ZPoly = std::vector<ZTerm>;

Integer int_gcd(const Integer& x, const Integer& y) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

u64 next_prime_below(u64 n) {
    do {
        --n;
    } while (!is_prime(n));
    return n;
}

MPoly zreduce(const ZPoly& a, const Field& F) {
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a) {
        u64 c = F.reduce(t.c);
        if (c) out.push_back({t.e, c});
    }
    return out;
}

Integer symmetric(const Integer& x, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

ZPoly crt(const ZPoly& c, const Integer& m, const MPoly& cp, const Field& F) {
    std::map<Exps, std::pair<Integer, u64>, LexGreater> all;
    for (const auto& t : c) all[t.e].first = t.c;
    for (const auto& t : cp) all[t.e].second = t.c;
    u64 inv_m = F.inv(F.reduce(m));
    Integer mp = m * static_cast<unsigned long>(F.p);
    ZPoly out;
    for (const auto& [e, v] : all) {
        u64 old_mod = F.reduce(v.first);
        u64 s = F.mul(F.sub(v.second, old_mod), inv_m);
        Integer x = v.first + m * static_cast<unsigned long>(s);
        x = symmetric(x, mp);
        if (x != 0) out.push_back({e, std::move(x)});
    }
    return out;
}

ZPoly zprimitive(ZPoly a) {
    Integer g = 0;
    for (const auto& t : a) g = int_gcd(g, t.c);
    if (g != 0 && g != 1) {
        for (auto& t : a) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    }
    return a;
}

ZPoly to_local(const Polynomial& p, const std::vector<Var>& vars) {
    Integer den = 1;
    for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    ZPoly out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Exps e(vars.size(), 0);
        for (const auto& f : t.mono.factors()) {
            auto pos = std::lower_bound(vars.begin(), vars.end(), f.var) - vars.begin();
            e[pos] = static_cast<std::uint16_t>(f.exp);
        }
        Integer c = t.coeff.get_num() * (den / t.coeff.get_den());
        out.push_back({std::move(e), std::move(c)});
    }
    std::sort(out.begin(), out.end(), [](const ZTerm& x, const ZTerm& y) { return y.e < x.e; });
    return zprimitive(std::move(out));
}

Polynomial from_local(const ZPoly& z, const std::vector<Var>& vars) {
    std::vector<Polynomial::Term> terms;
    for (const auto& t : z) {
        Monomial::Factors fs;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (t.e[i]) fs.push_back({vars[i], t.e[i]});
        }
        terms.push_back({Monomial::from_factors(std::move(fs)), Scalar(t.c)});
    }
    return Polynomial::from_terms(std::move(terms));
}

// gcd of two polynomials in exactly the same variables.
Polynomial modular_gcd(const Polynomial& x, const Polynomial& y) {
    auto vars = x.variables();
    ZPoly a = to_local(x, vars);
    ZPoly b = to_local(y, vars);
    const std::size_t k = vars.size();
    Integer lc_gcd = int_gcd(a.front().c, b.front().c);

    ZPoly c;
    Integer m;
    bool have = false;
    u64 prime = (1ull << 31);
    for (int attempts = 0; attempts < 10000; ++attempts) {
        prime = next_prime_below(prime);
        Field F{prime};
        if (F.reduce(a.front().c) == 0 || F.reduce(b.front().c) == 0) continue;
        MPoly image = pgcd(zreduce(a, F), zreduce(b, F), k, F);
        if (mconst(image)) return Polynomial(1);
        image = mscale(std::move(image), F.mul(F.reduce(lc_gcd), F.inv(image.front().c)), F);
        if (!have || image.front().e < c.front().e) {
            c.clear();
            for (const auto& t : image) {
                Integer v = t.c;
                c.push_back({t.e, symmetric(v, Integer(static_cast<unsigned long>(prime)))});
            }
            m = static_cast<unsigned long>(prime);
            have = true;
        } else if (c.front().e < image.front().e) {
            continue;
        } else {
            ZPoly next = crt(c, m, image, F);
            m *= static_cast<unsigned long>(prime);
            bool stable = next.size() == c.size();
            for (std::size_t i = 0; stable && i < c.size(); ++i) stable = next[i].e == c[i].e && next[i].c == c[i].c;
            c = std::move(next);
            if (!stable) continue;
        }
        Polynomial cand = from_local(zprimitive(c), vars);
        if (cand.is_constant()) continue;
        if (x.divide_exact(cand) && y.divide_exact(cand)) return cand.monic();
    }
    throw std::runtime_error("modular gcd did not converge");
}

Monomial min_monomial(const Polynomial& p) {
    Monomial m = p.leading().mono;
    for (const auto& t : p.terms()) {
        m = Monomial::gcd(m, t.mono);
        if (m.is_one()) break;
    }
    return m;
}

Polynomial divide_monomial(const Polynomial& p, const Monomial& m) {
    if (m.is_one()) return p;
    return *p.divide_exact(Polynomial(m, Scalar(1)));
}

Polynomial gcd_impl(const Polynomial& x, const Polynomial& y);

// gcd(x, y) where y has variables outside of `keep`: fold x with the
// coefficients of y taken with respect to those variables.
Polynomial gcd_with_coefficients(const Polynomial& x, const Polynomial& y, const std::vector<Var>& keep) {
    auto coeffs = y.collect([&](Var v) { return !std::binary_search(keep.begin(), keep.end(), v); });
    std::vector<const Polynomial*> order;
    order.reserve(coeffs.size());
    for (const auto& [mono, c] : coeffs) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Polynomial* p, const Polynomial* q) { return p->size() < q->size(); });
    Polynomial g = x;
    for (const auto* c : order) {
        g = gcd_impl(g, *c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Polynomial gcd_impl(const Polynomial& x, const Polynomial& y) {
    if (x.is_zero()) return y.monic();
    if (y.is_zero()) return x.monic();
    if (x.is_constant() || y.is_constant()) return Polynomial(1);
    if (x.is_monomial()) return Polynomial(Monomial::gcd(x.leading().mono, min_monomial(y)), Scalar(1));
    if (y.is_monomial()) return Polynomial(Monomial::gcd(y.leading().mono, min_monomial(x)), Scalar(1));
    if (x.monic() == y.monic()) return x.monic();

    Monomial mx = min_monomial(x);
    Monomial my = min_monomial(y);
    Monomial mg = Monomial::gcd(mx, my);
    Polynomial xr = divide_monomial(x, mx);
    Polynomial yr = divide_monomial(y, my);
    Polynomial mono_part(mg, Scalar(1));

    auto vx = xr.variables();
    auto vy = yr.variables();
    std::vector<Var> shared;
    std::set_intersection(vx.begin(), vx.end(), vy.begin(), vy.end(), std::back_inserter(shared));
    if (shared.empty()) return mono_part;
    Polynomial core;
    if (shared.size() < vy.size()) {
        core = gcd_with_coefficients(xr, yr, shared.size() < vx.size() ? shared : vx);
    } else if (shared.size() < vx.size()) {
        core = gcd_with_coefficients(yr, xr, vy);
    } else {
        core = modular_gcd(xr, yr);
    }
    return (core * mono_part).monic();
}

} // namespace

Polynomial gcd(const Polynomial& x, const Polynomial& y) { return gcd_impl(x, y); }

} // namespace wdvv::algebra
