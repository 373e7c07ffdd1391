#include "ncgcurv/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ncgcurv {

Gauss Gauss::inv() const {
    Rational n = re * re + im * im;
    if (sgn(n) == 0) throw DivisionByZero("inverse of zero coefficient");
    return {re / n, -im / n};
}

Coeff Coeff::inv() const {
    // (a + b r2)^-1 = (a - b r2) / (a^2 - 2 b^2)
    Gauss n = a * a - Gauss(2) * (b * b);
    if (n.is_zero()) throw DivisionByZero("inverse of zero coefficient");
    Gauss ni = n.inv();
    return {a * ni, -(b * ni)};
}

std::complex<double> Coeff::to_complex() const {
    const double r2 = std::numbers::sqrt2;
    return {a.re.get_d() + r2 * b.re.get_d(), a.im.get_d() + r2 * b.im.get_d()};
}

// ---- LaurentPoly

LaurentPoly::LaurentPoly(Coeff c, int e) {
    if (!c.is_zero()) t_.emplace_back(e, std::move(c));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    LaurentPoly r;
    for (auto& [e, c] : t) {
        if (!r.t_.empty() && r.t_.back().first == e)
            r.t_.back().second += c;
        else
            r.t_.emplace_back(e, std::move(c));
    }
    std::erase_if(r.t_, [](const Term& x) { return x.second.is_zero(); });
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r;
    r.t_.reserve(t_.size() + o.t_.size());
    auto i = t_.begin(), j = o.t_.begin();
    while (i != t_.end() || j != o.t_.end()) {
        if (j == o.t_.end() || (i != t_.end() && i->first < j->first)) {
            r.t_.push_back(*i++);
        } else if (i == t_.end() || j->first < i->first) {
            r.t_.push_back(*j++);
        } else {
            Coeff c = i->second + j->second;
            if (!c.is_zero()) r.t_.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (o.t_.size() == 1) return scaled(o.t_[0].second).shifted(o.t_[0].first);
    if (t_.size() == 1) return o.scaled(t_[0].second).shifted(t_[0].first);
    std::vector<Term> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& x : t_)
        for (const auto& y : o.t_) acc.emplace_back(x.first + y.first, x.second * y.second);
    return from_terms(std::move(acc));
}

LaurentPoly LaurentPoly::scaled(const Coeff& c) const {
    if (c.is_zero()) return {};
    LaurentPoly r = *this;
    if (c.is_one()) return r;
    for (auto& t : r.t_) t.second = t.second * c;
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r = *this;
    for (auto& t : r.t_) t.first += k;
    return r;
}

LaurentPoly LaurentPoly::conj() const {
    LaurentPoly r;
    r.t_.reserve(t_.size());
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second.conj());
    return r;
}

Coeff LaurentPoly::at_one() const {
    Coeff s;
    for (const auto& t : t_) s += t.second;
    return s;
}

std::complex<double> LaurentPoly::eval(std::complex<double> z) const {
    std::complex<double> s = 0;
    for (const auto& t : t_) s += t.second.to_complex() * std::pow(z, t.first);
    return s;
}

// ---- dense polynomial helpers (index = exponent) for gcd

namespace {

using Dense = std::vector<Coeff>;

Dense to_dense(const LaurentPoly& p, int shift) {
    Dense d(p.max_exp() - shift + 1);
    for (const auto& [e, c] : p.terms()) d[e - shift] = c;
    return d;
}

LaurentPoly from_dense(const Dense& d) {
    std::vector<LaurentPoly::Term> t;
    for (std::size_t k = 0; k < d.size(); ++k)
        if (!d[k].is_zero()) t.emplace_back(static_cast<int>(k), d[k]);
    return LaurentPoly::from_terms(std::move(t));
}

void trim(Dense& d) {
    while (!d.empty() && d.back().is_zero()) d.pop_back();
}

// remainder of a by b (b nonzero, trimmed); returns quotient via q if given
Dense divmod(Dense a, const Dense& b, Dense* q) {
    trim(a);
    Coeff lead_inv = b.back().inv();
    if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Coeff());
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Coeff f = a.back() * lead_inv;
        if (q) (*q)[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

Dense gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense r = divmod(a, b, nullptr);
        a = std::move(b);
        b = std::move(r);
    }
    Coeff li = a.back().inv();
    for (auto& c : a) c = c * li;
    return a;
}

}  // namespace

// ---- Scalar

Scalar Scalar::lambda_pow(int k) {
    Scalar s;
    s.num_ = LaurentPoly(Coeff(1), k);
    return s;
}

Scalar Scalar::fraction(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    Scalar s;
    if (num.is_zero()) return s;
    if (den.is_monomial()) {
        const auto& [e, c] = den.terms()[0];
        s.num_ = num.scaled(c.inv()).shifted(-e);
        return s;
    }
    int kn = num.min_exp(), kd = den.min_exp();
    Dense p = to_dense(num, kn), q = to_dense(den, kd);
    Dense g = gcd(p, q);
    if (g.size() > 1) {
        Dense pq, qq;
        divmod(p, g, &pq);
        divmod(q, g, &qq);
        p = std::move(pq);
        q = std::move(qq);
    }
    Coeff c0inv = q[0].inv();
    for (auto& c : p) c = c * c0inv;
    for (auto& c : q) c = c * c0inv;
    s.num_ = from_dense(p).shifted(kn - kd);
    s.den_ = from_dense(q);
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        Scalar s;
        s.num_ = num_ + o.num_;
        return s;
    }
    if (den_ == o.den_) return fraction(num_ + o.num_, den_);
    return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.num_ = -num_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (den_.is_one() && o.den_.is_one()) {
        Scalar s;
        s.num_ = num_ * o.num_;
        return s;
    }
    return fraction(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    return fraction(den_, num_);
}

Scalar Scalar::conj() const {
    if (den_.is_one()) {
        Scalar s;
        s.num_ = num_.conj();
        return s;
    }
    return fraction(num_.conj(), den_.conj());
}

Scalar Scalar::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    Scalar r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Scalar Scalar::at_one() const {
    Coeff d = den_.at_one();
    if (d.is_zero()) throw PoleError("pole at L = 1");
    return Scalar(num_.at_one() * d.inv());
}

std::complex<double> lambda_value(const Rational& q) {
    // reduce q mod 1 exactly first so large numerators keep precision
    mpz_class n = q.get_num(), d = q.get_den();
    mpz_class r = n % d;
    if (r < 0) r += d;
    double t = 2.0 * std::numbers::pi * mpq_class(r, d).get_d();
    return std::polar(1.0, t);
}

std::complex<double> Scalar::eval_at(std::complex<double> z) const {
    std::complex<double> d = den_.eval(z);
    double scale = 0;
    for (const auto& t : den_.terms()) scale += std::abs(t.second.to_complex());
    if (std::abs(d) <= 1e-12 * scale) throw PoleError("pole at evaluation point");
    return num_.eval(z) / d;
}

std::complex<double> Scalar::eval(const Rational& q) const { return eval_at(lambda_value(q)); }

}  // namespace ncgcurv
