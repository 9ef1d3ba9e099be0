#include <wdvv/algebra/expr.hpp>

#include <cctype>

namespace wdvv::algebra {

Expr Expr::number(Scalar s) {
    Expr e;
    e.kind = Kind::number;
    e.value = std::move(s);
    return e;
}

Expr Expr::variable(Var v) {
    Expr e;
    e.kind = Kind::variable;
    e.var = v;
    return e;
}

Expr Expr::op(Kind k, std::vector<Expr> args) {
    Expr e;
    e.kind = k;
    e.args = std::move(args);
    return e;
}

Expr Expr::power(Expr base, int exponent) {
    Expr e;
    e.kind = Kind::pow;
    e.exponent = exponent;
    e.args.push_back(std::move(base));
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse();
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view atom() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') break;
            if (c == '[') {
                auto close = text_.find(']', pos_);
                if (close == std::string_view::npos) fail("unterminated variable");
                pos_ = close + 1;
                continue;
            }
            ++pos_;
        }
        if (start == pos_) fail("expected atom");
        return text_.substr(start, pos_ - start);
    }

    Expr parse() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] != '(') {
            auto tok = atom();
            if (auto v = Var::parse(tok)) return Expr::variable(*v);
            if (auto s = parse_scalar(tok)) return Expr::number(*s);
            fail("bad atom '" + std::string(tok) + "'");
        }
        ++pos_;
        auto head = atom();
        std::vector<Expr> args;
        skip_space();
        while (pos_ < text_.size() && text_[pos_] != ')') {
            if (head == "^" && args.size() == 1) {
                auto tok = atom();
                auto s = parse_scalar(tok);
                if (!s || s->get_den() != 1 || !s->get_num().fits_sint_p()) fail("exponent must be an integer");
                args.push_back(Expr::number(*s));
            } else {
                args.push_back(parse());
            }
            skip_space();
        }
        if (pos_ >= text_.size()) fail("missing ')'");
        ++pos_;
        using K = Expr::Kind;
        if (head == "+") return Expr::op(K::add, std::move(args));
        if (head == "*") return Expr::op(K::mul, std::move(args));
        if (head == "-") {
            if (args.size() == 1) return Expr::op(K::neg, std::move(args));
            if (args.empty()) fail("'-' needs arguments");
            return Expr::op(K::sub, std::move(args));
        }
        if (head == "/") {
            if (args.size() != 2) fail("'/' takes two arguments");
            return Expr::op(K::div, std::move(args));
        }
        if (head == "^") {
            if (args.size() != 2) fail("'^' takes two arguments");
            int e = static_cast<int>(args[1].value.get_num().get_si());
            return Expr::power(std::move(args[0]), e);
        }
        fail("unknown operator '" + std::string(head) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string term_prefix(const Polynomial::Term& t) {
    if (t.mono.is_one()) return to_string(t.coeff);
    std::vector<std::string> parts;
    if (t.coeff != 1) parts.push_back(to_string(t.coeff));
    for (const auto& f : t.mono.factors()) {
        if (f.exp == 1) {
            parts.push_back(f.var.str());
        } else {
            parts.push_back("(^ " + f.var.str() + " " + std::to_string(f.exp) + ")");
        }
    }
    if (parts.size() == 1) return parts.front();
    std::string s = "(*";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

RationalFunction canonicalize(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number:
        return RationalFunction(e.value);
    case K::variable:
        return RationalFunction(e.var);
    case K::add: {
        std::vector<Polynomial::Term> terms;
        RationalFunction rest;
        for (const auto& a : e.args) {
            auto c = canonicalize(a);
            if (c.is_polynomial()) terms.insert(terms.end(), c.num().terms().begin(), c.num().terms().end());
            else rest += c;
        }
        return RationalFunction(Polynomial::from_terms(std::move(terms))) + rest;
    }
    case K::sub: {
        RationalFunction r = canonicalize(e.args.front());
        for (std::size_t i = 1; i < e.args.size(); ++i) r -= canonicalize(e.args[i]);
        return r;
    }
    case K::mul: {
        RationalFunction r(1);
        for (const auto& a : e.args) r *= canonicalize(a);
        return r;
    }
    case K::div: {
        RationalFunction den = canonicalize(e.args[1]);
        if (den.is_zero()) throw std::domain_error("division by zero");
        return canonicalize(e.args[0]) / den;
    }
    case K::neg:
        return -canonicalize(e.args.front());
    case K::pow: {
        RationalFunction base = canonicalize(e.args.front());
        if (e.exponent < 0 && base.is_zero()) throw std::domain_error("division by zero");
        return base.pow(e.exponent);
    }
    }
    return {};
}

std::string to_prefix(const Polynomial& p) {
    if (p.is_zero()) return "0";
    if (p.size() == 1) return term_prefix(p.leading());
    std::string s = "(+";
    for (const auto& t : p.terms()) s += " " + term_prefix(t);
    return s + ")";
}

std::string to_prefix(const RationalFunction& r) {
    if (r.is_polynomial()) return to_prefix(r.num());
    return "(/ " + to_prefix(r.num()) + " " + to_prefix(r.den()) + ")";
}

nlohmann::json to_json(const Polynomial& p) {
    auto terms = nlohmann::json::array();
    for (const auto& t : p.terms()) {
        auto factors = nlohmann::json::array();
        for (const auto& f : t.mono.factors()) factors.push_back({{"var", f.var.str()}, {"exp", f.exp}});
        terms.push_back({{"coeff", to_string(t.coeff)}, {"factors", std::move(factors)}});
    }
    return terms;
}

nlohmann::json to_json(const RationalFunction& r) {
    return {{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

namespace {

Polynomial poly_from_json(const nlohmann::json& j) {
    std::vector<Polynomial::Term> terms;
    for (const auto& t : j) {
        auto c = parse_scalar(t.at("coeff").get<std::string>());
        if (!c) throw ParseError("bad coefficient in json");
        Monomial::Factors fs;
        for (const auto& f : t.at("factors")) {
            auto v = Var::parse(f.at("var").get<std::string>());
            if (!v) throw ParseError("bad variable in json");
            fs.push_back({*v, f.at("exp").get<std::uint32_t>()});
        }
        terms.push_back({Monomial::from_factors(std::move(fs)), *c});
    }
    return Polynomial::from_terms(std::move(terms));
}

} // namespace

RationalFunction rational_from_json(const nlohmann::json& j) {
    return RationalFunction(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

std::string to_text(const RationalMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",\n [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_prefix(m(i, j));
        s += "]";
    }
    return s + "]";
}

std::string to_text(const ScalarMatrix& m) {
    return to_text(m.map([](const Scalar& c) { return RationalFunction(c); }));
}

nlohmann::json to_json(const RationalMatrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_prefix(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace wdvv::algebra
