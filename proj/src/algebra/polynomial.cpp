#include <wdvv/algebra/polynomial.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace wdvv::algebra {

std::string to_string(const Scalar& s) { return s.get_str(); }

std::optional<Scalar> parse_scalar(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    bool slash = false;
    bool digit = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        char c = text[k];
        if (c >= '0' && c <= '9') {
            digit = true;
        } else if (c == '/' && !slash && digit && k + 1 < text.size()) {
            slash = true;
        } else {
            return std::nullopt;
        }
    }
    if (!digit) return std::nullopt;
    std::string s(text[0] == '+' ? text.substr(1) : text);
    Scalar q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

namespace {

using Terms = std::vector<Polynomial::Term>;

// Merge of two sorted term lists, y scaled by `sign`.
Terms merge(const Terms& x, const Terms& y, int sign) {
    Terms out;
    out.reserve(x.size() + y.size());
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        int c = Monomial::compare(i->mono, j->mono);
        if (c > 0) {
            out.push_back(*i++);
        } else if (c < 0) {
            out.push_back({j->mono, sign > 0 ? j->coeff : Scalar(-j->coeff)});
            ++j;
        } else {
            Scalar s = sign > 0 ? Scalar(i->coeff + j->coeff) : Scalar(i->coeff - j->coeff);
            if (sgn(s) != 0) out.push_back({i->mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, x.end());
    for (; j != y.end(); ++j) out.push_back({j->mono, sign > 0 ? j->coeff : Scalar(-j->coeff)});
    return out;
}

Terms merge_in_place(Terms&& x, Terms&& y) {
    if (x.empty()) return std::move(y);
    if (y.empty()) return std::move(x);
    return merge(x, y, 1);
}

} // namespace

Polynomial::Polynomial(const Scalar& c) {
    if (sgn(c) != 0) {
        terms_.push_back({Monomial(), c});
        terms_.back().coeff.canonicalize();
    }
}

Polynomial::Polynomial(Var v) { terms_.push_back({Monomial(v), Scalar(1)}); }

Polynomial::Polynomial(const Monomial& m, const Scalar& c) {
    if (sgn(c) != 0) {
        terms_.push_back({m, c});
        terms_.back().coeff.canonicalize();
    }
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return Monomial::compare(x.mono, y.mono) > 0; });
    Polynomial p;
    for (auto& t : terms) {
        t.coeff.canonicalize();
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    return p;
}

bool Polynomial::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

Scalar Polynomial::constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? Scalar(0) : terms_[0].coeff;
}

Scalar Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Scalar(0);
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t Polynomial::degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(v));
    return d;
}

std::vector<Var> Polynomial::variables() const {
    std::vector<Var> vs;
    for (const auto& t : terms_) {
        for (const auto& f : t.mono.factors()) vs.push_back(f.var);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool Polynomial::has_var(Var v) const {
    for (const auto& t : terms_) {
        if (t.mono.degree_in(v) > 0) return true;
    }
    return false;
}

bool Polynomial::has_var_if(const std::function<bool(Var)>& pred) const {
    for (const auto& t : terms_) {
        for (const auto& f : t.mono.factors()) {
            if (pred(f.var)) return true;
        }
    }
    return false;
}

int Polynomial::max_order(Family fam) const {
    int m = -1;
    for (const auto& t : terms_) {
        for (const auto& f : t.mono.factors()) {
            if (f.var.family() == fam) m = std::max(m, f.var.order());
        }
    }
    return m;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge(terms_, o.terms_, 1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, -1);
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
    if (sgn(c) == 0) {
        terms_.clear();
    } else {
        for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::mul_term(const Monomial& m, const Scalar& c) const {
    Polynomial p;
    if (sgn(c) == 0) return p;
    p.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves the graded-lex order.
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    return p;
}

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const Polynomial& small = x.size() <= y.size() ? x : y;
    const Polynomial& large = x.size() <= y.size() ? y : x;
    if (small.size() == 1) return large.mul_term(small.terms_[0].mono, small.terms_[0].coeff);

    if (small.size() * large.size() > 4096) {
        // Hash accumulation beats repeated merging for large products.
        std::unordered_map<Monomial, Scalar> acc;
        acc.reserve(small.size() * large.size());
        for (const auto& s : small.terms_) {
            for (const auto& l : large.terms_) {
                auto [it, inserted] = acc.try_emplace(s.mono * l.mono, s.coeff * l.coeff);
                if (!inserted) it->second += s.coeff * l.coeff;
            }
        }
        std::vector<Polynomial::Term> terms;
        terms.reserve(acc.size());
        for (auto& [m, c] : acc) {
            if (sgn(c) != 0) terms.push_back({m, std::move(c)});
        }
        std::sort(terms.begin(), terms.end(), [](const Polynomial::Term& a, const Polynomial::Term& b) {
            return Monomial::compare(a.mono, b.mono) > 0;
        });
        Polynomial p;
        p.terms_ = std::move(terms);
        return p;
    }

    std::vector<Terms> rows;
    rows.reserve(small.size());
    for (const auto& t : small.terms_) rows.push_back(large.mul_term(t.mono, t.coeff).terms_);
    while (rows.size() > 1) {
        std::vector<Terms> next;
        next.reserve((rows.size() + 1) / 2);
        for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
            next.push_back(merge_in_place(std::move(rows[k]), std::move(rows[k + 1])));
        }
        if (rows.size() % 2) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    Polynomial p;
    p.terms_ = std::move(rows.front());
    return p;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return Polynomial();
    const auto& lead = divisor.leading();
    if (divisor.size() == 1) {
        Polynomial q;
        q.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            auto m = t.mono.divide(lead.mono);
            if (!m) return std::nullopt;
            q.terms_.push_back({std::move(*m), t.coeff / lead.coeff});
        }
        return q;
    }
    if (!leading().mono.divisible_by(lead.mono)) return std::nullopt;
    // The trailing term of a product is the product of the trailing terms.
    if (!terms_.back().mono.divisible_by(divisor.terms_.back().mono)) return std::nullopt;

    std::map<Monomial, Scalar, MonomialGreater> rem;
    for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.mono, t.coeff);
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        auto m = it->first.divide(lead.mono);
        if (!m) return std::nullopt;
        Scalar c = it->second / lead.coeff;
        rem.erase(it);
        for (std::size_t k = 1; k < divisor.terms_.size(); ++k) {
            const auto& d = divisor.terms_[k];
            auto prod = d.mono * *m;
            auto [pos, inserted] = rem.try_emplace(prod, -(d.coeff * c));
            if (!inserted) {
                pos->second -= d.coeff * c;
                if (sgn(pos->second) == 0) rem.erase(pos);
            }
        }
        quot.push_back({std::move(*m), std::move(c)});
    }
    Polynomial q;
    q.terms_ = std::move(quot);
    return q;
}

Polynomial Polynomial::derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        auto e = t.mono.degree_in(v);
        if (e == 0) continue;
        std::uint32_t removed = 0;
        auto rest = t.mono.without(v, &removed);
        out.push_back({rest * Monomial(v, e - 1), t.coeff * static_cast<unsigned long>(e)});
    }
    return from_terms(std::move(out));
}

Scalar Polynomial::content() const {
    if (terms_.empty()) return Scalar(0);
    Integer num = 0;
    Integer den = 1;
    for (const auto& t : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Scalar c(num, den);
    c.canonicalize();
    return c;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty() || terms_[0].coeff == 1) return *this;
    Scalar inv = 1 / terms_[0].coeff;
    return *this * inv;
}

std::map<Monomial, Polynomial, MonomialGreater> Polynomial::collect(const std::function<bool(Var)>& select) const {
    std::map<Monomial, std::vector<Term>, MonomialGreater> groups;
    for (const auto& t : terms_) {
        Monomial::Factors sel;
        Monomial::Factors rest;
        for (const auto& f : t.mono.factors()) (select(f.var) ? sel : rest).push_back(f);
        groups[Monomial::from_factors(std::move(sel))].push_back({Monomial::from_factors(std::move(rest)), t.coeff});
    }
    std::map<Monomial, Polynomial, MonomialGreater> out;
    for (auto& [k, ts] : groups) out.emplace(k, from_terms(std::move(ts)));
    return out;
}

Polynomial Polynomial::substitute(Var v, const Polynomial& value) const {
    if (!has_var(v)) return *this;
    std::map<std::uint32_t, std::vector<Term>> by_power;
    for (const auto& t : terms_) {
        std::uint32_t e = 0;
        auto rest = t.mono.without(v, &e);
        by_power[e].push_back({std::move(rest), t.coeff});
    }
    Polynomial result;
    Polynomial power(1);
    std::uint32_t current = 0;
    for (auto& [e, ts] : by_power) {
        while (current < e) {
            power = power * value;
            ++current;
        }
        result += from_terms(std::move(ts)) * power;
    }
    return result;
}

Polynomial Polynomial::rename(const std::function<Var(Var)>& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial::Factors fs;
        for (const auto& fac : t.mono.factors()) fs.push_back({f(fac.var), fac.exp});
        out.push_back({Monomial::from_factors(std::move(fs)), t.coeff});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::evaluate(const std::map<Var, Scalar>& point) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Scalar c = t.coeff;
        Monomial::Factors rest;
        for (const auto& f : t.mono.factors()) {
            auto it = point.find(f.var);
            if (it == point.end()) {
                rest.push_back(f);
            } else {
                Scalar pw;
                mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), f.exp);
                mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), f.exp);
                c *= pw;
            }
        }
        if (sgn(c) != 0) out.push_back({Monomial::from_factors(std::move(rest)), std::move(c)});
    }
    return from_terms(std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (!(terms_[k].mono == o.terms_[k].mono) || terms_[k].coeff != o.terms_[k].coeff) return false;
    }
    return true;
}

std::size_t Polynomial::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h ^= t.mono.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.coeff.get_str()) + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace wdvv::algebra
