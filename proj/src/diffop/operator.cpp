#include <wdvv/diffop/operator.hpp>

#include <wdvv/algebra/expr.hpp>

#include <stdexcept>

namespace wdvv::diffop {

using jet::total_derivative;

namespace {

std::vector<std::vector<Scalar>> binomials(int n) {
    std::vector<std::vector<Scalar>> c(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        c[i].assign(static_cast<std::size_t>(i + 1), Scalar(1));
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

// D^0 f, ..., D^k f.
std::vector<RationalFunction> derivatives(const RationalFunction& f, int k) {
    std::vector<RationalFunction> d{f};
    for (int j = 1; j <= k; ++j) d.push_back(d.back().is_zero() ? RationalFunction() : total_derivative(d.back()));
    return d;
}

} // namespace

ScalarOp::ScalarOp(std::vector<RationalFunction> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ScalarOp ScalarOp::multiplication(RationalFunction c) { return ScalarOp({std::move(c)}); }

ScalarOp ScalarOp::monomial(RationalFunction c, int k) {
    std::vector<RationalFunction> v(static_cast<std::size_t>(k + 1));
    v[k] = std::move(c);
    return ScalarOp(std::move(v));
}

void ScalarOp::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalFunction ScalarOp::coeff(int k) const {
    if (k < 0 || k > order()) return {};
    return coeffs_[k];
}

ScalarOp ScalarOp::operator-() const {
    ScalarOp r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

ScalarOp& ScalarOp::operator+=(const ScalarOp& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        if (!o.coeffs_[k].is_zero()) coeffs_[k] += o.coeffs_[k];
    }
    trim();
    return *this;
}

ScalarOp& ScalarOp::operator-=(const ScalarOp& o) { return *this += -o; }

ScalarOp& ScalarOp::operator*=(const RationalFunction& c) {
    for (auto& x : coeffs_) {
        if (!x.is_zero()) x *= c;
    }
    trim();
    return *this;
}

RationalFunction ScalarOp::apply(const RationalFunction& f) const {
    if (coeffs_.empty() || f.is_zero()) return {};
    auto d = derivatives(f, order());
    RationalFunction r;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].is_zero() && !d[k].is_zero()) r += coeffs_[k] * d[k];
    }
    return r;
}

ScalarOp compose(const ScalarOp& a, const ScalarOp& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto binom = binomials(a.order());
    std::vector<RationalFunction> out(static_cast<std::size_t>(a.order() + b.order() + 1));
    for (int l = 0; l <= b.order(); ++l) {
        const auto& bl = b.coeffs()[l];
        if (bl.is_zero()) continue;
        auto d = derivatives(bl, a.order());
        for (int k = 0; k <= a.order(); ++k) {
            const auto& ak = a.coeffs()[k];
            if (ak.is_zero()) continue;
            for (int j = 0; j <= k; ++j) {
                if (d[j].is_zero()) continue;
                out[k - j + l] += RationalFunction(binom[k][j]) * ak * d[j];
            }
        }
    }
    return ScalarOp(std::move(out));
}

ScalarOp adjoint(const ScalarOp& a) {
    if (a.is_zero()) return {};
    auto binom = binomials(a.order());
    std::vector<RationalFunction> out(static_cast<std::size_t>(a.order() + 1));
    for (int k = 0; k <= a.order(); ++k) {
        const auto& c = a.coeffs()[k];
        if (c.is_zero()) continue;
        auto d = derivatives(c, k);
        Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
        for (int j = 0; j <= k; ++j) {
            if (!d[k - j].is_zero()) out[j] += RationalFunction(Scalar(sign * binom[k][j])) * d[k - j];
        }
    }
    return ScalarOp(std::move(out));
}

LocalOperator LocalOperator::identity(jet::Chart chart) {
    LocalOperator op(chart);
    const std::size_t n = op.dim();
    for (std::size_t i = 0; i < n; ++i) op(i, i) = ScalarOp::multiplication(RationalFunction(1));
    return op;
}

LocalOperator LocalOperator::from_matrix(const RationalMatrix& m, int k, jet::Chart chart) {
    if (!m.square() || m.rows() != static_cast<std::size_t>(chart.dim)) {
        throw std::invalid_argument("operator coefficient has the wrong shape");
    }
    LocalOperator op(chart);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) op(i, j) = ScalarOp::monomial(m(i, j), k);
        }
    }
    return op;
}

int LocalOperator::order() const {
    int o = -1;
    for (const auto& e : entries_) o = std::max(o, e.order());
    return o;
}

RationalMatrix LocalOperator::coefficient(int k) const {
    RationalMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).coeff(k);
    }
    return m;
}

void LocalOperator::check_same(const LocalOperator& o) const {
    if (!(chart_ == o.chart_)) throw std::invalid_argument("operator dimension mismatch");
}

LocalOperator LocalOperator::operator-() const {
    LocalOperator r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
}

LocalOperator& LocalOperator::operator+=(const LocalOperator& o) {
    check_same(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

LocalOperator& LocalOperator::operator-=(const LocalOperator& o) {
    check_same(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

LocalOperator& LocalOperator::operator*=(const RationalFunction& c) {
    for (auto& e : entries_) e *= c;
    return *this;
}

bool LocalOperator::is_zero() const {
    for (const auto& e : entries_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

std::size_t LocalOperator::peak_terms() const {
    std::size_t peak = 0;
    for (const auto& e : entries_) {
        for (const auto& c : e.coeffs()) peak = std::max(peak, c.num().size() + c.den().size());
    }
    return peak;
}

LocalOperator compose(const LocalOperator& a, const LocalOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
    const std::size_t n = a.dim();
    LocalOperator out(a.chart());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ScalarOp acc;
            for (std::size_t m = 0; m < n; ++m) {
                if (a(i, m).is_zero() || b(m, j).is_zero()) continue;
                acc += compose(a(i, m), b(m, j));
            }
            out(i, j) = std::move(acc);
        }
    }
    return out;
}

LocalOperator adjoint(const LocalOperator& a) {
    const std::size_t n = a.dim();
    LocalOperator out(a.chart());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = adjoint(a(j, i));
    }
    return out;
}

std::vector<RationalFunction> apply(const LocalOperator& a, const std::vector<RationalFunction>& v) {
    if (v.size() != a.dim()) throw std::invalid_argument("operator applied to vector of wrong length");
    std::vector<RationalFunction> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a(i, j).apply(v[j]);
    }
    return out;
}

std::string to_text(const LocalOperator& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += i ? ",\n [" : "[";
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (j) s += ", ";
            s += "[";
            bool first = true;
            const auto& e = a(i, j);
            for (int k = 0; k <= e.order(); ++k) {
                if (e.coeffs()[k].is_zero()) continue;
                if (!first) s += ", ";
                first = false;
                s += "(" + std::to_string(k) + ", " + algebra::to_prefix(e.coeffs()[k]) + ")";
            }
            s += "]";
        }
        s += "]";
    }
    return s + "]";
}

nlohmann::json to_json(const LocalOperator& a) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < a.dim(); ++j) {
            auto entry = nlohmann::json::array();
            const auto& e = a(i, j);
            for (int k = 0; k <= e.order(); ++k) {
                if (!e.coeffs()[k].is_zero()) entry.push_back({{"order", k}, {"coeff", algebra::to_prefix(e.coeffs()[k])}});
            }
            row.push_back(std::move(entry));
        }
        rows.push_back(std::move(row));
    }
    return {{"family", std::string(1, algebra::family_letter(a.family()))},
            {"base", a.chart().base},
            {"dim", a.dim()}, {"entries", rows}};
}

} // namespace wdvv::diffop
