#include "ncgcurv/tensor.hpp"

#include <climits>
#include <stdexcept>

namespace ncgcurv {

std::string to_string(const Degree& d) { return "(" + std::to_string(d.n1) + "," + std::to_string(d.n2) + ")"; }

void Element::add(BasisKey k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

Scalar Element::coeff(BasisKey k) const {
    auto it = t_.find(k);
    return it == t_.end() ? Scalar() : it->second;
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::scaled(const Scalar& c) const {
    Element r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

Tensor Tensor::from_element(const Element& e) {
    Tensor t(0);
    for (const auto& [k, c] : e.terms()) t.add({}, k, c);
    return t;
}

Tensor Tensor::basis(const std::vector<int>& legs, BasisKey key, const Scalar& c) {
    Tensor t(static_cast<int>(legs.size()));
    t.add(legs, key, c);
    return t;
}

void Tensor::add(const TermKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(k.legs.size()) != rank_) throw std::logic_error("tensor rank mismatch");
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

void Tensor::add(const std::vector<int>& legs, BasisKey key, const Scalar& c) { add(TermKey{legs, key}, c); }

Tensor& Tensor::operator+=(const Tensor& o) {
    if (o.rank_ != rank_ && !o.is_zero()) throw std::logic_error("tensor rank mismatch in sum");
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    if (o.rank_ != rank_ && !o.is_zero()) throw std::logic_error("tensor rank mismatch in sum");
    for (const auto& [k, c] : o.t_) add(k, -c);
    return *this;
}

Tensor Tensor::operator+(const Tensor& o) const {
    Tensor r = *this;
    r += o;
    return r;
}

Tensor Tensor::operator-() const {
    Tensor r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const { return *this + (-o); }

Tensor Tensor::scaled(const Scalar& c) const {
    Tensor r(rank_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

Element Tensor::coefficient(const std::vector<int>& legs) const {
    Element e;
    auto it = t_.lower_bound(TermKey{legs, BasisKey{INT_MIN, INT_MIN}});
    for (; it != t_.end() && it->first.legs == legs; ++it) e.add(it->first.key, it->second);
    return e;
}

Element Tensor::as_element() const {
    if (rank_ != 0) throw std::logic_error("as_element on tensor of positive rank");
    Element e;
    for (const auto& [k, c] : t_) e.add(k.key, c);
    return e;
}

std::map<std::vector<int>, Tensor> Tensor::split_front(int n) const {
    std::map<std::vector<int>, Tensor> out;
    for (const auto& [k, c] : t_) {
        std::vector<int> head(k.legs.begin(), k.legs.begin() + n), tail(k.legs.begin() + n, k.legs.end());
        auto it = out.try_emplace(std::move(head), Tensor(rank_ - n)).first;
        it->second.add(std::move(tail), k.key, c);
    }
    return out;
}

}  // namespace ncgcurv
