#include "ncgcurv/forms.hpp"

#include <map>
#include <stdexcept>

namespace ncgcurv {

int deform_exponent(const std::vector<Degree>& f) {
    int e = 0, n1_after = 0;
    for (std::size_t p = f.size(); p-- > 0;) {
        e -= f[p].n2 * n1_after;
        n1_after += f[p].n1;
    }
    return e;
}

std::string describe(const Tensor& t, const AlgebraSpec& a) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : t.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        if (!k.legs.empty()) {
            out += "*w[";
            for (std::size_t i = 0; i < k.legs.size(); ++i) {
                if (i) out += ",";
                int l = k.legs[i];
                out += is_spinor_leg(l) ? "x" + std::to_string(l - kSpinorLeg) : std::to_string(l);
            }
            out += "]";
        }
        if (k.key != a.unit()) out += "*" + a.key_name(k.key);
    }
    return out;
}

std::string describe(const Element& e, const AlgebraSpec& a) { return describe(Tensor::from_element(e), a); }

Calculus::Calculus(GeometrySpec g, Mode mode) : Calculus(std::make_shared<const GeometrySpec>(std::move(g)), mode) {}

Calculus::Calculus(std::shared_ptr<const GeometrySpec> g, Mode mode) : g_(std::move(g)), mode_(mode) {
    for (const auto& t : g_->frame.d) dframe_.push_back(to_mode(t));
}

Degree Calculus::leg_degree(int leg) const {
    if (is_spinor_leg(leg)) return g_->dirac.degrees.at(leg - kSpinorLeg);
    return g_->frame.degrees.at(leg);
}

Degree Calculus::legs_degree(const std::vector<int>& legs) const {
    Degree d;
    for (int l : legs) d += leg_degree(l);
    return d;
}

Degree Calculus::term_degree(const TermKey& k) const { return legs_degree(k.legs) + algebra().degree(k.key); }

Scalar Calculus::theta(Degree s, Degree t) const {
    if (!deformed()) return Scalar(1);
    return Scalar::lambda_pow(theta_exponent(s, t));
}

Scalar Calculus::sigma_phase(Degree s, Degree t) const {
    if (!deformed()) return Scalar(1);
    int e = g_->braiding == Braiding::Theta ? theta_exponent(s, t) : s.n2 * t.n1 + t.n2 * s.n1;
    return Scalar::lambda_pow(e);
}

namespace {

Tensor deform_map(const Calculus& c, const Tensor& t, int sign) {
    Tensor r(t.rank());
    for (const auto& [k, s] : t.terms()) {
        std::vector<Degree> f;
        for (int l : k.legs) f.push_back(c.leg_degree(l));
        f.push_back(c.algebra().degree(k.key));
        int e = sign * deform_exponent(f);
        r.add(k, e ? s * Scalar::lambda_pow(e) : s);
    }
    return r;
}

}  // namespace

Tensor Calculus::to_mode(const Tensor& t) const { return deformed() ? deform_map(*this, t, 1) : t; }
Tensor Calculus::from_mode(const Tensor& t) const { return deformed() ? deform_map(*this, t, -1) : t; }

Tensor Calculus::frame(int j) const { return Tensor::basis({j}, algebra().unit()); }

Tensor Calculus::frame_dagger(int j) const {
    Tensor t(1);
    Degree d = g_->frame.degrees[j];
    Scalar ph = deformed() ? Scalar::lambda_pow(d.n1 * d.n2) : Scalar(1);
    for (int l = 0; l < n(); ++l)
        if (!g_->frame.star(l, j).is_zero()) t.add({l}, algebra().unit(), g_->frame.star(l, j) * ph);
    return t;
}

Tensor Calculus::spinor(int a, BasisKey key) const { return Tensor::basis({spinor_leg(a)}, key); }

Tensor Calculus::lmul(const Element& a, const Tensor& t) const {
    Tensor r(t.rank());
    for (const auto& [k, c] : t.terms()) {
        Degree dl = legs_degree(k.legs);
        for (const auto& [ka, ca] : a.terms()) {
            Scalar ph = theta(algebra().degree(ka), dl);
            Element prod = mul(Element(ka, ca * ph), Element(k.key, c));
            for (const auto& [kk, cc] : prod.terms()) r.add(k.legs, kk, cc);
        }
    }
    return r;
}

Tensor Calculus::rmul(const Tensor& t, const Element& b) const {
    Tensor r(t.rank());
    for (const auto& [k, c] : t.terms()) {
        Element prod = mul(Element(k.key, c), b);
        for (const auto& [kk, cc] : prod.terms()) r.add(k.legs, kk, cc);
    }
    return r;
}

Tensor Calculus::tensor(const Tensor& s, const Tensor& t) const {
    Tensor r(s.rank() + t.rank());
    for (const auto& [ks, cs] : s.terms()) {
        Degree de = algebra().degree(ks.key);
        for (const auto& [kt, ct] : t.terms()) {
            Scalar ph = theta(de, legs_degree(kt.legs));
            Element prod = mul(Element(ks.key, cs * ph), Element(kt.key, ct));
            std::vector<int> legs = ks.legs;
            legs.insert(legs.end(), kt.legs.begin(), kt.legs.end());
            for (const auto& [kk, cc] : prod.terms()) r.add(legs, kk, cc);
        }
    }
    return r;
}

Tensor Calculus::dagger(const Tensor& t) const {
    std::vector<Tensor> fd;
    for (int j = 0; j < n(); ++j) fd.push_back(frame_dagger(j));
    Tensor r(t.rank());
    for (const auto& [k, c] : t.terms()) {
        Tensor legs = Tensor::from_element(unit());
        for (auto it = k.legs.rbegin(); it != k.legs.rend(); ++it) {
            if (is_spinor_leg(*it)) throw std::invalid_argument("dagger of a spinor-valued tensor");
            legs = tensor(legs, fd[*it]);
        }
        r += lmul(star(Element(k.key, c)), legs);
    }
    return r;
}

Element Calculus::inner_right(const Tensor& s, const Tensor& t) const {
    if (s.rank() != t.rank()) throw std::invalid_argument("inner product rank mismatch");
    Element r;
    // orthonormal frame: only equal multi-indices pair
    std::map<std::vector<int>, Element> sc;
    for (const auto& [k, c] : s.terms()) sc[k.legs].add(k.key, c);
    std::map<std::vector<int>, Element> tc;
    for (const auto& [k, c] : t.terms()) tc[k.legs].add(k.key, c);
    for (const auto& [legs, a] : sc) {
        auto it = tc.find(legs);
        if (it == tc.end()) continue;
        r += mul(star(a), it->second);
    }
    return r;
}

Element Calculus::inner_left(const Tensor& s, const Tensor& t) const { return inner_right(dagger(s), dagger(t)); }

Tensor Calculus::line_element() const {
    Tensor g(2);
    for (int j = 0; j < n(); ++j) g += tensor(frame(j), frame_dagger(j));
    return g;
}

Element Calculus::g_pair(const Tensor& t) const { return -inner_right(line_element(), t); }

Element Calculus::e_beta() const { return -g_pair(line_element()); }

Tensor Calculus::sigma(const Tensor& t, int pos) const {
    Tensor r(t.rank());
    for (const auto& [k, c] : t.terms()) {
        TermKey nk = k;
        std::swap(nk.legs[pos], nk.legs[pos + 1]);
        r.add(nk, c * sigma_phase(leg_degree(k.legs[pos]), leg_degree(k.legs[pos + 1])));
    }
    return r;
}

Tensor Calculus::sigma_inv(const Tensor& t, int pos) const {
    Tensor r(t.rank());
    for (const auto& [k, c] : t.terms()) {
        TermKey nk = k;
        std::swap(nk.legs[pos], nk.legs[pos + 1]);
        r.add(nk, c * sigma_phase(leg_degree(k.legs[pos + 1]), leg_degree(k.legs[pos])).inv());
    }
    return r;
}

Tensor Calculus::psi(const Tensor& t, int pos) const { return (t + sigma(t, pos)).scaled(Scalar::rational(1, 2)); }

Tensor Calculus::anti(const Tensor& t, int pos) const { return (t - sigma(t, pos)).scaled(Scalar::rational(1, 2)); }

Tensor Calculus::d_key(BasisKey k) const { return to_mode(g_->derivation.apply(algebra(), k)); }

Tensor Calculus::d_element(const Element& a) const {
    Tensor r(1);
    for (const auto& [k, c] : a.terms()) r += d_key(k).scaled(c);
    return r;
}

Tensor Calculus::d_frame(int j) const { return dframe_.at(j); }

Tensor Calculus::exterior_d(const Tensor& rho) const {
    if (rho.rank() != 1) throw std::invalid_argument("exterior_d expects a one-form");
    Tensor r(2);
    for (const auto& [k, c] : rho.terms()) {
        int j = k.legs[0];
        Element a(k.key, c);
        r += rmul(dframe_[j], a);
        r -= anti(tensor(frame(j), d_element(a)));
    }
    return r;
}

Tensor Calculus::alpha_right(const Tensor& a, const Tensor& rho) const {
    int keep = a.rank() - rho.rank();
    if (keep < 0) throw std::invalid_argument("alpha_right rank mismatch");
    Tensor r(keep);
    // A = sum_I omega_I (x) eta_I with omega_I coefficient free
    for (const auto& [head, eta] : a.split_front(keep)) {
        Element c = inner_right(dagger(eta), rho);
        if (!c.is_zero()) r += rmul(Tensor::basis(head, algebra().unit()), c);
    }
    return r;
}

Tensor Calculus::alpha_left(const Tensor& a, const Tensor& rho) const {
    int k = rho.rank(), keep = a.rank() - k;
    if (keep < 0) throw std::invalid_argument("alpha_left rank mismatch");
    Tensor rd = dagger(rho);
    Tensor r(keep);
    for (const auto& [head, tail] : a.split_front(k)) {
        Element c = inner_right(rd, Tensor::basis(head, algebra().unit()));
        if (!c.is_zero()) r += lmul(c, tail);
    }
    return r;
}

std::vector<std::vector<std::vector<int>>> Calculus::degree_blocks(int rank) const {
    std::map<Degree, std::vector<std::vector<int>>> by;
    std::vector<int> idx(rank, 0);
    while (true) {
        by[legs_degree(idx)].push_back(idx);
        int p = rank - 1;
        while (p >= 0 && ++idx[p] == n()) idx[p--] = 0;
        if (p < 0) break;
    }
    std::vector<std::vector<std::vector<int>>> out;
    for (auto& [d, b] : by) out.push_back(std::move(b));
    return out;
}

Matrix Calculus::leg_matrix(const std::function<Tensor(const Tensor&)>& op,
                            const std::vector<std::vector<int>>& block) const {
    const int m = static_cast<int>(block.size());
    std::map<std::vector<int>, int> pos;
    for (int i = 0; i < m; ++i) pos[block[i]] = i;
    Matrix mat(m, m);
    BasisKey u = algebra().unit();
    for (int c = 0; c < m; ++c) {
        Tensor img = op(Tensor::basis(block[c], u));
        for (const auto& [k, s] : img.terms()) {
            auto it = pos.find(k.legs);
            if (it == pos.end() || k.key != u) throw std::logic_error("leg operator leaves its degree block");
            mat(it->second, c) = s;
        }
    }
    return mat;
}

Tensor Calculus::from_block(const std::vector<std::vector<int>>& block, const Matrix& column, BasisKey key) const {
    Tensor t(block.empty() ? 0 : static_cast<int>(block[0].size()));
    for (std::size_t i = 0; i < block.size(); ++i) t.add(block[i], key, column(static_cast<int>(i), 0));
    return t;
}

}  // namespace ncgcurv
