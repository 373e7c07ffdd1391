// Degrees, basis keys, algebra elements and right-standard tensors.
#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ncgcurv/scalar.hpp"

namespace ncgcurv {

struct Degree {
    int n1 = 0, n2 = 0;
    Degree operator+(const Degree& o) const { return {n1 + o.n1, n2 + o.n2}; }
    Degree operator-(const Degree& o) const { return {n1 - o.n1, n2 - o.n2}; }
    Degree operator-() const { return {-n1, -n2}; }
    Degree& operator+=(const Degree& o) { n1 += o.n1; n2 += o.n2; return *this; }
    auto operator<=>(const Degree&) const = default;
    bool is_zero() const { return n1 == 0 && n2 == 0; }
};

std::string to_string(const Degree& d);

// Laurent monomial U^a V^b, or table index a (b = 0), or the unit (0,0)
struct BasisKey {
    int a = 0, b = 0;
    auto operator<=>(const BasisKey&) const = default;
};

// finitely supported {key -> Scalar}, never stores zeros
class Element {
public:
    Element() = default;
    Element(BasisKey k, Scalar c) { add(k, std::move(c)); }
    static Element scalar(const Scalar& c, BasisKey unit = {}) { return Element(unit, c); }

    void add(BasisKey k, const Scalar& c);
    const std::map<BasisKey, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Scalar coeff(BasisKey k) const;
    bool operator==(const Element& o) const { return t_ == o.t_; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    Element& operator+=(const Element& o);

private:
    std::map<BasisKey, Scalar> t_;
};

// spinor legs are encoded above this offset
constexpr int kSpinorLeg = 1000;
inline int spinor_leg(int a) { return kSpinorLeg + a; }
inline bool is_spinor_leg(int l) { return l >= kSpinorLeg; }

struct TermKey {
    std::vector<int> legs;
    BasisKey key;
    auto operator<=>(const TermKey&) const = default;
};

// sum over terms  omega_{legs[0]} (x) ... (x) omega_{legs[k-1]} * c * e_key
class Tensor {
public:
    explicit Tensor(int rank = 0) : rank_(rank) {}
    static Tensor from_element(const Element& e);
    static Tensor basis(const std::vector<int>& legs, BasisKey key = {}, const Scalar& c = Scalar(1));

    int rank() const { return rank_; }
    const std::map<TermKey, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add(const std::vector<int>& legs, BasisKey key, const Scalar& c);
    void add(const TermKey& k, const Scalar& c);
    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor operator-() const;
    Tensor scaled(const Scalar& c) const;
    bool operator==(const Tensor& o) const { return rank_ == o.rank_ && t_ == o.t_; }
    bool operator!=(const Tensor& o) const { return !(*this == o); }

    // coefficient element at a given multi-index
    Element coefficient(const std::vector<int>& legs) const;
    Element as_element() const;  // rank 0 only
    // split legs after the first `n`: first-part multi-index -> remaining tensor
    std::map<std::vector<int>, Tensor> split_front(int n) const;

    // apply f to every scalar (e.g. L -> 1)
    template <class F>
    Tensor map_scalars(F f) const {
        Tensor r(rank_);
        for (const auto& [k, c] : t_) r.add(k, f(c));
        return r;
    }

private:
    int rank_;
    std::map<TermKey, Scalar> t_;
};

}  // namespace ncgcurv
