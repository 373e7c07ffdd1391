// Scalar text form: printer and recursive-descent parser.
#include <cctype>

#include "ncgcurv/scalar.hpp"

namespace ncgcurv {

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

// one part like "3/2", "-i", "1/2*r2", "i*r2"
std::string part(const Rational& q, const char* unit) {
    if (!*unit) return q.get_str();
    if (q == 1) return unit;
    if (q == -1) return std::string("-") + unit;
    return q.get_str() + "*" + unit;
}

std::string join_signed(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) {
        if (s.empty())
            s = p;
        else if (p[0] == '-')
            s += p;
        else
            s += "+" + p;
    }
    return s;
}

std::vector<std::string> coeff_parts(const Coeff& c) {
    std::vector<std::string> ps;
    if (sgn(c.a.re)) ps.push_back(part(c.a.re, ""));
    if (sgn(c.a.im)) ps.push_back(part(c.a.im, "i"));
    if (sgn(c.b.re)) ps.push_back(part(c.b.re, "r2"));
    if (sgn(c.b.im)) ps.push_back(part(c.b.im, "i*r2"));
    return ps;
}

std::string term_str(int e, const Coeff& c) {
    auto ps = coeff_parts(c);
    std::string cs = ps.empty() ? "0" : join_signed(ps);
    if (e == 0) return cs;
    std::string l = e == 1 ? "L" : "L^" + std::to_string(e);
    if (c.is_one()) return l;
    if (c == Coeff(-1)) return "-" + l;
    if (ps.size() > 1) cs = "(" + cs + ")";
    return cs + "*" + l;
}

std::string poly_str(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<std::string> ts;
    for (const auto& [e, c] : p.terms()) ts.push_back(term_str(e, c));
    return join_signed(ts);
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Scalar run() {
        skip();
        if (pos_ >= s_.size()) throw ScalarParseError("empty scalar", pos_);
        Scalar v = expr();
        skip();
        if (pos_ != s_.size()) throw ScalarParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return v;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'r' || c == 's' || c == 'L' || c == '(';
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (accept('*')) {
                v *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Scalar d = factor();
                if (d.is_zero()) throw ScalarParseError("division by zero", at);
                v = v / d;
            } else if (starts_primary()) {
                v *= factor();
            } else {
                return v;
            }
        }
    }

    Scalar factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Scalar b = primary();
        if (accept('^')) {
            skip();
            bool negx = false;
            if (accept('-'))
                negx = true;
            else
                accept('+');
            skip();
            std::size_t at = pos_;
            long e = integer();
            if (e > 100000) throw ScalarParseError("exponent too large", at);
            if (negx && b.is_zero()) throw ScalarParseError("division by zero", at);
            b = b.pow(static_cast<int>(negx ? -e : e));
        }
        return b;
    }

    long integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ScalarParseError("expected integer", pos_);
        return std::stol(s_.substr(start, pos_ - start));
    }

    Scalar primary() {
        skip();
        if (pos_ >= s_.size()) throw ScalarParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!accept(')')) throw ScalarParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Scalar(Rational(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (s_.compare(pos_, 5, "sqrt2") == 0) {
            pos_ += 5;
            return Scalar::sqrt2();
        }
        if (s_.compare(pos_, 2, "r2") == 0) {
            pos_ += 2;
            return Scalar::sqrt2();
        }
        if (c == 'i') {
            ++pos_;
            return Scalar::i();
        }
        if (c == 'L') {
            ++pos_;
            return Scalar::lambda_pow(1);
        }
        throw ScalarParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
};

}  // namespace

std::string to_string(const Coeff& c) {
    auto ps = coeff_parts(c);
    return ps.empty() ? "0" : join_signed(ps);
}

std::string Scalar::str() const {
    if (den_.is_one()) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

Scalar Scalar::parse(const std::string& text) { return Parser(text).run(); }

}  // namespace ncgcurv
