#include "tricluster/parser.hpp"

#include <cctype>
#include <sstream>

namespace tricluster {

namespace {

using ExpVec = std::vector<unsigned>;

struct Value {
    // Sparse polynomial in z1..z_arity with ParsedCoeff coefficients.
    int arity;
    std::map<ExpVec, ParsedCoeff> terms;
};

ParsedCoeff coeff_add(const ParsedCoeff& a, const ParsedCoeff& b) {
    ParsedCoeff c;
    if (a.exact && b.exact) {
        c.exact = true;
        c.value = a.value + b.value;
        c.text = "";  // filled lazily by renderers; exact values print directly
    } else {
        c.exact = false;
        c.oracle = a.to_oracle() + b.to_oracle();
        c.text = "(" + (a.exact ? a.value.get_str() : a.text) + " + " +
                 (b.exact ? b.value.get_str() : b.text) + ")";
    }
    return c;
}

ParsedCoeff coeff_mul(const ParsedCoeff& a, const ParsedCoeff& b) {
    ParsedCoeff c;
    if (a.exact && b.exact) {
        c.exact = true;
        c.value = a.value * b.value;
    } else {
        c.exact = false;
        c.oracle = a.to_oracle() * b.to_oracle();
        c.text = "(" + (a.exact ? a.value.get_str() : a.text) + " * " +
                 (b.exact ? b.value.get_str() : b.text) + ")";
    }
    return c;
}

ParsedCoeff coeff_neg(const ParsedCoeff& a) {
    ParsedCoeff c;
    if (a.exact) {
        c.exact = true;
        c.value = -a.value;
    } else {
        c.exact = false;
        c.oracle = -a.oracle;
        c.text = "(0 - " + a.text + ")";
    }
    return c;
}

bool coeff_is_zero(const ParsedCoeff& a) { return a.exact && a.value == 0; }

Value val_add(const Value& a, const Value& b) {
    Value r{a.arity, a.terms};
    for (const auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end())
            r.terms.emplace(e, c);
        else {
            it->second = coeff_add(it->second, c);
            if (coeff_is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

Value val_neg(const Value& a) {
    Value r{a.arity, {}};
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, coeff_neg(c));
    return r;
}

Value val_mul(const Value& a, const Value& b) {
    Value r{a.arity, {}};
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            ExpVec e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            ParsedCoeff p = coeff_mul(ca, cb);
            auto it = r.terms.find(e);
            if (it == r.terms.end())
                r.terms.emplace(e, std::move(p));
            else {
                it->second = coeff_add(it->second, p);
                if (coeff_is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

Value val_pow(const Value& a, unsigned k) {
    Value r{a.arity, {}};
    ParsedCoeff one;
    one.value = 1;
    r.terms.emplace(ExpVec(static_cast<size_t>(a.arity), 0), one);
    Value base = a;
    while (k > 0) {
        if (k & 1u) r = val_mul(r, base);
        k >>= 1u;
        if (k > 0) base = val_mul(base, base);
    }
    return r;
}

class LineParser {
public:
    LineParser(const std::string& text, int line_no, int max_var)
        : s_(text), line_(line_no), max_var_(max_var) {}

    Value parse_expr_all() {
        Value v = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(ParseErrorKind::syntax, msg, line_, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Value parse_expr() {
        Value v = eat('-') ? val_neg(parse_term()) : (eat('+'), parse_term());
        for (;;) {
            if (eat('+'))
                v = val_add(v, parse_term());
            else if (eat('-'))
                v = val_add(v, val_neg(parse_term()));
            else
                return v;
        }
    }

    Value parse_term() {
        Value v = parse_factor();
        while (eat('*')) v = val_mul(v, parse_factor());
        return v;
    }

    Value parse_factor() {
        Value v = parse_base();
        if (eat('^')) {
            std::string digits = read_digits();
            if (digits.empty()) fail("expected integer exponent after '^'");
            unsigned long k = std::stoul(digits);
            if (k > 64) fail("exponent too large");
            v = val_pow(v, static_cast<unsigned>(k));
        }
        return v;
    }

    std::string read_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    Value constant(ParsedCoeff c) {
        Value v{max_var_, {}};
        if (!coeff_is_zero(c)) v.terms.emplace(ExpVec(static_cast<size_t>(max_var_), 0), c);
        return v;
    }

    Value parse_base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Value v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '-') {
            eat('-');
            return val_neg(parse_base());
        }
        if (c == 'z') {
            ++pos_;
            std::string digits = read_digits();
            if (digits.empty()) fail("expected variable index after 'z'");
            int idx = std::stoi(digits);
            if (idx < 1) fail("variable indices start at 1");
            if (idx > max_var_)
                throw ParseError(ParseErrorKind::not_triangular,
                                 "f" + std::to_string(line_) + " may not mention z" + digits,
                                 line_, static_cast<int>(pos_));
            Value v{max_var_, {}};
            ExpVec e(static_cast<size_t>(max_var_), 0);
            e[static_cast<size_t>(idx - 1)] = 1;
            ParsedCoeff one;
            one.value = 1;
            v.terms.emplace(std::move(e), std::move(one));
            return v;
        }
        if (c == 's') {
            // sqrt(k)
            if (s_.compare(pos_, 4, "sqrt") != 0) fail("unknown identifier");
            pos_ += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            std::string digits = read_digits();
            if (digits.empty()) fail("expected integer inside sqrt");
            if (!eat(')')) fail("expected ')' after sqrt argument");
            unsigned long k = std::stoul(digits);
            OracleNumber o = OracleNumber::sqrt_of(k);
            ParsedCoeff pc;
            if (o.is_exact_rational()) {
                pc.exact = true;
                pc.value = o.exact_value().first;
            } else {
                pc.exact = false;
                pc.oracle = o;
                pc.text = "sqrt(" + digits + ")";
            }
            return constant(std::move(pc));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string intpart = read_digits();
            ParsedCoeff pc;
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                std::string frac = read_digits();
                mpz_class num(intpart + frac, 10);
                mpz_class den = 1;
                for (size_t i = 0; i < frac.size(); ++i) den *= 10;
                pc.value = mpq_class(num) / mpq_class(den);
                pc.value.canonicalize();
            } else if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::string den = read_digits();
                if (den.empty()) fail("expected denominator after '/'");
                pc.value = mpq_class(mpz_class(intpart, 10)) / mpq_class(mpz_class(den, 10));
                pc.value.canonicalize();
            } else {
                pc.value = mpq_class(mpz_class(intpart, 10));
            }
            return constant(std::move(pc));
        }
        fail("expected a number, variable, sqrt(k), or '('");
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_;
    int max_var_;
};

std::string render_coeff(const ParsedCoeff& c) {
    return c.exact ? c.value.get_str() : c.text;
}

}  // namespace

bool ParsedPoly::exact_rational() const {
    for (const auto& [e, c] : terms)
        if (!c.exact) return false;
    return true;
}

OraclePolynomial ParsedPoly::to_oracle_poly() const {
    OraclePolynomial p(arity);
    for (const auto& [e, c] : terms) p.add_term(e, c.to_oracle());
    return p;
}

std::string ParsedPoly::print(int index) const {
    std::ostringstream os;
    os << "f" << index << " =";
    if (terms.empty()) {
        os << " 0";
        return os.str();
    }
    // Terms in descending exponent order (reverse map order).
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        os << (first ? " " : " + ");
        first = false;
        os << render_coeff(it->second);
        for (size_t v = 0; v < it->first.size(); ++v) {
            unsigned e = it->first[v];
            if (e == 0) continue;
            os << "*z" << v + 1;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

bool ParsedSystem::exact_rational() const {
    for (const ParsedPoly& p : polys)
        if (!p.exact_rational()) return false;
    return true;
}

TriangularSystem ParsedSystem::to_system() const {
    std::vector<OraclePolynomial> ps;
    ps.reserve(polys.size());
    for (const ParsedPoly& p : polys) ps.push_back(p.to_oracle_poly());
    return TriangularSystem(std::move(ps));
}

std::string ParsedSystem::print() const {
    std::ostringstream os;
    for (size_t i = 0; i < polys.size(); ++i)
        os << polys[i].print(static_cast<int>(i) + 1) << "\n";
    return os.str();
}

ParsedSystem parse_system(const std::string& src) {
    ParsedSystem sys;
    std::istringstream in(src);
    std::string raw;
    int line_no = 0;
    int index = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        ++index;

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(ParseErrorKind::syntax, "expected 'f" + std::to_string(index) + " = ...'",
                             line_no, 1);
        std::string label = line.substr(0, eq);
        std::string expect = "f" + std::to_string(index);
        size_t li = 0;
        while (li < label.size() && std::isspace(static_cast<unsigned char>(label[li]))) ++li;
        size_t le = label.size();
        while (le > li && std::isspace(static_cast<unsigned char>(label[le - 1]))) --le;
        if (label.substr(li, le - li) != expect)
            throw ParseError(ParseErrorKind::syntax,
                             "expected label '" + expect + "', got '" + label.substr(li, le - li) + "'",
                             line_no, 1);

        std::string body = line.substr(eq + 1);
        LineParser lp(body, index, index);
        Value v = lp.parse_expr_all();

        ParsedPoly poly;
        poly.arity = index;
        poly.terms = std::move(v.terms);
        unsigned dz = 0;
        for (const auto& [e, c] : poly.terms) dz = std::max(dz, e[static_cast<size_t>(index) - 1]);
        if (dz < 1)
            throw ParseError(ParseErrorKind::zero_degree,
                             "f" + std::to_string(index) + " must have degree >= 1 in z" +
                                 std::to_string(index),
                             line_no, 1);
        sys.polys.push_back(std::move(poly));
    }
    if (sys.polys.empty())
        throw ParseError(ParseErrorKind::syntax, "empty system", line_no == 0 ? 1 : line_no, 1);
    return sys;
}

}  // namespace tricluster
