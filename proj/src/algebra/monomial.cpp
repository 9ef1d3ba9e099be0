#include <wdvv/algebra/monomial.hpp>

#include <algorithm>

namespace wdvv::algebra {

Monomial::Monomial(Var v, std::uint32_t e) {
    if (e > 0) {
        factors_.push_back({v, e});
        degree_ = e;
    }
}

Monomial Monomial::from_factors(Factors factors) {
    std::sort(factors.begin(), factors.end(), [](const Factor& x, const Factor& y) { return x.var < y.var; });
    Monomial m;
    for (const auto& f : factors) {
        if (f.exp == 0) continue;
        if (!m.factors_.empty() && m.factors_.back().var == f.var) {
            m.factors_.back().exp += f.exp;
        } else {
            m.factors_.push_back(f);
        }
        m.degree_ += f.exp;
    }
    return m;
}

std::uint32_t Monomial::degree_in(Var v) const {
    for (const auto& f : factors_) {
        if (f.var == v) return f.exp;
        if (v < f.var) break;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial m;
    m.factors_.reserve(factors_.size() + other.factors_.size());
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() && j != other.factors_.end()) {
        if (i->var < j->var) {
            m.factors_.push_back(*i++);
        } else if (j->var < i->var) {
            m.factors_.push_back(*j++);
        } else {
            m.factors_.push_back({i->var, i->exp + j->exp});
            ++i;
            ++j;
        }
    }
    m.factors_.insert(m.factors_.end(), i, factors_.end());
    m.factors_.insert(m.factors_.end(), j, other.factors_.end());
    m.degree_ = degree_ + other.degree_;
    return m;
}

bool Monomial::divisible_by(const Monomial& divisor) const {
    if (divisor.degree_ > degree_) return false;
    auto i = factors_.begin();
    for (const auto& d : divisor.factors_) {
        while (i != factors_.end() && i->var < d.var) ++i;
        if (i == factors_.end() || i->var != d.var || i->exp < d.exp) return false;
    }
    return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
    if (!divisible_by(divisor)) return std::nullopt;
    Monomial m;
    auto j = divisor.factors_.begin();
    for (const auto& f : factors_) {
        if (j != divisor.factors_.end() && j->var == f.var) {
            if (f.exp > j->exp) m.factors_.push_back({f.var, f.exp - j->exp});
            ++j;
        } else {
            m.factors_.push_back(f);
        }
    }
    m.degree_ = degree_ - divisor.degree_;
    return m;
}

Monomial Monomial::without(Var v, std::uint32_t* removed) const {
    Monomial m;
    std::uint32_t e = 0;
    for (const auto& f : factors_) {
        if (f.var == v) {
            e = f.exp;
        } else {
            m.factors_.push_back(f);
        }
    }
    m.degree_ = degree_ - e;
    if (removed) *removed = e;
    return m;
}

Monomial Monomial::gcd(const Monomial& x, const Monomial& y) {
    Monomial m;
    auto i = x.factors_.begin();
    auto j = y.factors_.begin();
    while (i != x.factors_.end() && j != y.factors_.end()) {
        if (i->var < j->var) {
            ++i;
        } else if (j->var < i->var) {
            ++j;
        } else {
            auto e = std::min(i->exp, j->exp);
            m.factors_.push_back({i->var, e});
            m.degree_ += e;
            ++i;
            ++j;
        }
    }
    return m;
}

int Monomial::compare(const Monomial& x, const Monomial& y) {
    if (x.degree_ != y.degree_) return x.degree_ < y.degree_ ? -1 : 1;
    auto n = std::min(x.factors_.size(), y.factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& fx = x.factors_[k];
        const auto& fy = y.factors_[k];
        if (fx.var != fy.var) return fx.var < fy.var ? 1 : -1;
        if (fx.exp != fy.exp) return fx.exp < fy.exp ? -1 : 1;
    }
    if (x.factors_.size() == y.factors_.size()) return 0;
    return x.factors_.size() > y.factors_.size() ? 1 : -1;
}

std::size_t Monomial::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& f : factors_) {
        std::uint64_t k = (static_cast<std::uint64_t>(f.var.id()) << 32) | f.exp;
        h ^= std::hash<std::uint64_t>{}(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::string Monomial::str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += ' ';
        if (f.exp == 1) {
            s += f.var.str();
        } else {
            s += "(^ " + f.var.str() + " " + std::to_string(f.exp) + ")";
        }
    }
    return s;
}

} // namespace wdvv::algebra
