// Exact arithmetic in Q(i, sqrt2)(L), L a formal unit-modulus parameter.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncgcurv {

using Rational = mpq_class;

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ScalarParseError : std::runtime_error {
    std::size_t pos;
    ScalarParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at offset " + std::to_string(p)), pos(p) {}
};

// Gaussian rational re + im*i
struct Gauss {
    Rational re, im;
    Gauss() = default;
    Gauss(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();  // mpq_class(p, q) is not reduced
        im.canonicalize();
    }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool operator==(const Gauss& o) const { return re == o.re && im == o.im; }
    Gauss operator+(const Gauss& o) const { return {re + o.re, im + o.im}; }
    Gauss operator-(const Gauss& o) const { return {re - o.re, im - o.im}; }
    Gauss operator-() const { return {-re, -im}; }
    Gauss operator*(const Gauss& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Gauss conj() const { return {re, -im}; }
    Gauss inv() const;
};

// a + b*sqrt2 with a, b Gaussian rationals
class Coeff {
public:
    Gauss a, b;

    Coeff() = default;
    Coeff(long v) : a(Rational(v)) {}
    Coeff(Rational r) : a(std::move(r)) {}
    Coeff(Gauss x, Gauss y = {}) : a(std::move(x)), b(std::move(y)) {}

    static Coeff i() { return Coeff(Gauss(0, 1)); }
    static Coeff sqrt2() { return Coeff(Gauss(), Gauss(1)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_one() const { return a.re == 1 && sgn(a.im) == 0 && b.is_zero(); }
    bool operator==(const Coeff& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    Coeff operator+(const Coeff& o) const { return {a + o.a, b + o.b}; }
    Coeff operator-(const Coeff& o) const { return {a - o.a, b - o.b}; }
    Coeff operator-() const { return {-a, -b}; }
    Coeff operator*(const Coeff& o) const {
        Gauss two(2);
        return {a * o.a + two * (b * o.b), a * o.b + b * o.a};
    }
    Coeff& operator+=(const Coeff& o) { a = a + o.a; b = b + o.b; return *this; }
    Coeff inv() const;
    Coeff conj() const { return {a.conj(), b.conj()}; }
    std::complex<double> to_complex() const;
};

// sparse Laurent polynomial, terms sorted by exponent, no zero coefficients
class LaurentPoly {
public:
    using Term = std::pair<int, Coeff>;

    LaurentPoly() = default;
    explicit LaurentPoly(Coeff c, int e = 0);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second.is_one(); }
    bool is_monomial() const { return t_.size() == 1; }
    int min_exp() const { return t_.front().first; }
    int max_exp() const { return t_.back().first; }

    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
    bool operator!=(const LaurentPoly& o) const { return !(t_ == o.t_); }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scaled(const Coeff& c) const;
    LaurentPoly shifted(int k) const;
    LaurentPoly conj() const;  // coefficientwise conj, L -> 1/L
    Coeff at_one() const;
    std::complex<double> eval(std::complex<double> z) const;

    static LaurentPoly from_terms(std::vector<Term> t);  // sorts, merges, drops zeros

private:
    std::vector<Term> t_;
};

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : num_(Coeff(v)) { if (v == 0) num_ = LaurentPoly(); }
    Scalar(const Coeff& c) : num_(c) { if (c.is_zero()) num_ = LaurentPoly(); }
    Scalar(const Rational& r) : Scalar(Coeff(r)) {}

    static Scalar lambda_pow(int k);
    static Scalar i() { return Scalar(Coeff::i()); }
    static Scalar sqrt2() { return Scalar(Coeff::sqrt2()); }
    static Scalar rational(long p, long q) { return Scalar(Rational(p, q)); }
    // num/den, canonicalized
    static Scalar fraction(const LaurentPoly& num, const LaurentPoly& den);
    static Scalar parse(const std::string& text);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inv() const;
    Scalar conj() const;
    Scalar pow(int k) const;
    // substitute L = 1
    Scalar at_one() const;
    std::complex<double> eval(const Rational& q) const;
    std::complex<double> eval_at(std::complex<double> z) const;

    std::string str() const;

private:
    LaurentPoly num_;
    LaurentPoly den_{Coeff(1)};
};

std::string to_string(const Rational& r);
std::string to_string(const Coeff& c);
inline std::string to_string(const Scalar& s) { return s.str(); }

inline Scalar add(const Scalar& x, const Scalar& y) { return x + y; }
inline Scalar mul(const Scalar& x, const Scalar& y) { return x * y; }
inline Scalar neg(const Scalar& x) { return -x; }
inline Scalar inv(const Scalar& x) { return x.inv(); }
inline Scalar conj(const Scalar& x) { return x.conj(); }
inline std::complex<double> eval(const Scalar& x, const Rational& q) { return x.eval(q); }

// lambda = exp(2 pi i q)
std::complex<double> lambda_value(const Rational& q);

}  // namespace ncgcurv
