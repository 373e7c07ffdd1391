#include "ncgcurv/dirac.hpp"

#include <cmath>
#include <stdexcept>

#include "ncgcurv/sampling.hpp"

namespace ncgcurv {

DiracModule::DiracModule(const Calculus& c, Connection right) : c_(c), lc_(std::move(right)) {
    const auto& ds = c_.geom().dirac;
    if (ds.s == 0) throw std::invalid_argument("geometry has no spinor data");
    BasisKey u = c_.algebra().unit();
    for (int a = 0; a < ds.s; ++a) {
        Tensor t(2);
        for (int j = 0; j < c_.n(); ++j)
            for (int b = 0; b < ds.s; ++b)
                if (!ds.spin[j](b, a).is_zero()) t.add({j, spinor_leg(b)}, u, ds.spin[j](b, a));
        spin_.push_back(c_.to_mode(t));
    }
    Element eb = c_.e_beta();
    if (eb.terms().size() != 1 || eb.terms().begin()->first != u)
        throw std::invalid_argument("e^beta is not a nonzero constant");
    inv_ebeta_ = eb.coeff(u).inv();
}

Tensor DiracModule::clifford(const Tensor& t) const {
    if (t.rank() < 2) throw std::invalid_argument("clifford needs a form leg and a spinor leg");
    const auto& ds = c_.geom().dirac;
    Tensor r(t.rank() - 1);
    for (const auto& [k, s] : t.terms()) {
        int j = k.legs[k.legs.size() - 2], sl = k.legs.back();
        if (is_spinor_leg(j) || !is_spinor_leg(sl)) throw std::invalid_argument("clifford: bad leg layout");
        int a = sl - kSpinorLeg;
        Scalar ph = s;
        if (c_.deformed()) {
            int e = c_.leg_degree(j).n2 * c_.leg_degree(sl).n1;
            if (e) ph = ph * Scalar::lambda_pow(e);
        }
        std::vector<int> legs(k.legs.begin(), k.legs.end() - 2);
        legs.push_back(0);
        for (int b = 0; b < ds.s; ++b) {
            const Scalar& g = ds.gamma[j](b, a);
            if (g.is_zero()) continue;
            legs.back() = spinor_leg(b);
            r.add(legs, k.key, ph * g);
        }
    }
    return r;
}

Tensor DiracModule::m_apply(const Tensor& t, const Tensor& x) const { return clifford(clifford(c_.tensor(t, x))); }

std::map<BasisKey, Matrix> DiracModule::m_rep(const Tensor& t) const {
    // column a: image of x_a; products of gammas with the commutation phases written out
    const auto& ds = c_.geom().dirac;
    std::map<BasisKey, Matrix> out;
    for (const auto& [k, s] : t.terms()) {
        if (k.legs.size() != 2) throw std::invalid_argument("m_rep expects a two-tensor");
        int j = k.legs[0], l = k.legs[1];
        Degree dj = c_.leg_degree(j), dl = c_.leg_degree(l), de = c_.algebra().degree(k.key);
        auto [it, ins] = out.try_emplace(k.key, ds.s, ds.s);
        for (int a = 0; a < ds.s; ++a) {
            Degree xa = ds.degrees[a];
            int e = 0;
            if (c_.deformed()) e = theta_exponent(de, xa) + dl.n2 * xa.n1 + dj.n2 * (dl.n1 + xa.n1);
            Scalar ph = e ? s * Scalar::lambda_pow(e) : s;
            for (int b = 0; b < ds.s; ++b) {
                Scalar acc;
                for (int m = 0; m < ds.s; ++m) acc += ds.gamma[j](b, m) * ds.gamma[l](m, a);
                if (!acc.is_zero()) it->second(b, a) += ph * acc;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Tensor DiracModule::normalized_mg(const Tensor& x) const {
    return m_apply(c_.line_element(), x).scaled(inv_ebeta_);
}

Tensor DiracModule::spin_connection(const Tensor& x) const {
    if (x.rank() != 1) throw std::invalid_argument("spin_connection expects a spinor");
    Tensor r(2);
    for (const auto& [k, s] : x.terms()) {
        if (!is_spinor_leg(k.legs[0])) throw std::invalid_argument("spin_connection expects a spinor");
        int a = k.legs[0] - kSpinorLeg;
        // x_a e = Theta(x_a, e) e x_a, then left Leibniz
        Scalar ph = s * c_.theta(c_.leg_degree(k.legs[0]), c_.algebra().degree(k.key));
        Tensor part = c_.tensor(c_.d_key(k.key), c_.spinor(a, c_.algebra().unit()));
        part += c_.lmul(Element(k.key, Scalar(1)), spin_[a]);
        r += part.scaled(ph);
    }
    return r;
}

Tensor DiracModule::dirac(const Tensor& x) const { return clifford(spin_connection(x)); }

Tensor DiracModule::connection_sum(const Tensor& t) const {
    Tensor r(t.rank() + 1);
    for (const auto& [head, y] : t.split_front(1)) {
        Tensor w = c_.frame(head[0]);
        r += c_.tensor(apply(c_, lc_, w), y);
        r += c_.tensor(w, spin_connection(y));
    }
    return r;
}

Tensor DiracModule::laplacian(const Tensor& x) const {
    Tensor s = connection_sum(spin_connection(x));
    Tensor g = c_.line_element();
    BasisKey u = c_.algebra().unit();
    Tensor r(1);
    for (const auto& [head, tail] : s.split_front(2)) {
        Element w = c_.inner_right(g, Tensor::basis(head, u));
        if (!w.is_zero()) r += c_.lmul(w, tail);
    }
    return normalized_mg(r);
}

Tensor DiracModule::weitzenbock_residue(const Tensor& x) const { return dirac(dirac(x)) - laplacian(x); }

Tensor DiracModule::clifford_curvature(const Tensor& x) const {
    ConnectionMap grad = [this](const Tensor& y) { return spin_connection(y); };
    Tensor r = curvature_left(c_, grad, x);
    return clifford(clifford(c_.sigma(r, 0)));
}

namespace {

// left coefficients: x = sum_a l_a x_a
std::map<int, Element> left_coefficients(const Calculus& c, const Tensor& x) {
    std::map<int, Element> out;
    for (const auto& [k, s] : x.terms()) {
        if (k.legs.size() != 1 || !is_spinor_leg(k.legs[0])) throw std::invalid_argument("expected a spinor");
        out[k.legs[0] - kSpinorLeg].add(k.key, s * c.theta(c.leg_degree(k.legs[0]), c.algebra().degree(k.key)));
    }
    return out;
}

}  // namespace

Element DiracModule::inner(const Tensor& x, const Tensor& y) const {
    auto lx = left_coefficients(c_, x), ly = left_coefficients(c_, y);
    Element r;
    for (const auto& [a, e] : lx) {
        auto it = ly.find(a);
        if (it != ly.end()) r += c_.mul(e, c_.star(it->second));
    }
    return r;
}

Tensor DiracModule::partial_inner(const Tensor& t, const Tensor& y) const {
    int keep = t.rank() - 1;
    Tensor r(keep);
    BasisKey u = c_.algebra().unit();
    for (const auto& [head, z] : t.split_front(keep)) {
        Element e = inner(z, y);
        if (!e.is_zero()) r += c_.rmul(Tensor::basis(head, u), e);
    }
    return r;
}

Tensor DiracModule::pair_t2(const Tensor& s, const Tensor& t) const {
    Tensor r(2);
    auto ss = s.split_front(1), ts = t.split_front(1);
    for (const auto& [hj, x] : ss)
        for (const auto& [hk, y] : ts) {
            Element e = inner(x, y);
            if (!e.is_zero()) r += c_.tensor(c_.rmul(c_.frame(hj[0]), e), c_.frame_dagger(hk[0]));
        }
    return r;
}

Scalar DiracModule::phi(const Element& e) const {
    if (c_.geom().functional != "unit_coefficient")
        throw std::invalid_argument("unsupported functional: " + c_.geom().functional);
    return e.coeff(c_.algebra().unit());
}

Scalar DiracModule::divergence(const Tensor& x) const {
    Tensor v = partial_inner(spin_connection(x), x);
    return phi(c_.inner_left(apply(c_, lc_, v), c_.line_element()));
}

namespace {

bool scalar_zero(const ThetaContext& ctx, const Scalar& s) { return ctx.zero(s); }

std::vector<Tensor> spinor_probes(const Calculus& c, std::mt19937_64& rng, int samples) {
    std::vector<Tensor> out;
    for (int a = 0; a < c.spinor_rank(); ++a) out.push_back(c.spinor(a, c.algebra().unit()));
    for (int s = 0; s < samples; ++s) out.push_back(random_spinor(c, rng, 2));
    return out;
}

std::vector<Tensor> form_probes(const Calculus& c, std::mt19937_64& rng, int samples) {
    std::vector<Tensor> out;
    for (int j = 0; j < c.n(); ++j) out.push_back(c.frame(j));
    for (int s = 0; s < samples; ++s) out.push_back(random_tensor(c, 1, rng, 2));
    return out;
}

std::string pair_witness(std::size_t i, std::size_t j) {
    return "form probe " + std::to_string(i) + ", spinor probe " + std::to_string(j);
}

}  // namespace

std::vector<CheckResult> check_dirac_conditions(const DiracModule& dm, const ThetaContext& ctx, std::mt19937_64& rng,
                                                int samples) {
    const Calculus& c = dm.calculus();
    std::vector<CheckResult> out;
    auto xs = spinor_probes(c, rng, samples);
    auto rs = form_probes(c, rng, samples);

    {
        // (m o Psi)(rho (x) eta) = e^{-beta} m(G) <rho^dag|eta>
        CheckResult r = pass("dirac_condition_1");
        for (std::size_t i = 0; i < rs.size() && r.passed; ++i)
            for (std::size_t i2 = 0; i2 < rs.size() && r.passed; ++i2)
                for (std::size_t j = 0; j < xs.size() && r.passed; ++j) {
                    Tensor lhs = dm.m_apply(c.psi(c.tensor(rs[i], rs[i2])), xs[j]);
                    Tensor rhs = dm.normalized_mg(c.lmul(c.inner_right(c.dagger(rs[i]), rs[i2]), xs[j]));
                    if (!ctx.zero(lhs - rhs))
                        r = fail("dirac_condition_1", "form probes " + std::to_string(i) + "," + std::to_string(i2) +
                                                          ", spinor probe " + std::to_string(j));
                }
        out.push_back(r);
    }
    {
        CheckResult r = pass("dirac_condition_2");
        for (int s = 0; s < samples && r.passed; ++s) {
            Tensor rho = random_tensor(c, 1, rng, 2);
            Tensor x = random_spinor(c, rng, 2);
            Element a = random_element(c.algebra(), rng);
            Element b = random_element(c.algebra(), rng);
            Tensor t = c.tensor(rho, x);
            if (!ctx.zero(dm.clifford(c.tensor(c.rmul(rho, a), x)) - dm.clifford(c.tensor(rho, c.lmul(a, x)))))
                r = fail("dirac_condition_2", "balanced, sample " + std::to_string(s));
            else if (!ctx.zero(dm.clifford(c.lmul(b, t)) - c.lmul(b, dm.clifford(t))))
                r = fail("dirac_condition_2", "left linear, sample " + std::to_string(s));
            else if (!ctx.zero(dm.clifford(c.rmul(t, b)) - c.rmul(dm.clifford(t), b)))
                r = fail("dirac_condition_2", "right linear, sample " + std::to_string(s));
        }
        out.push_back(r);
    }
    {
        // c(omega^dag (x) .) is the adjoint of c(omega (x) .)
        CheckResult r = pass("clifford_star");
        BasisKey u = c.algebra().unit();
        for (int j = 0; j < c.n() && r.passed; ++j)
            for (int a = 0; a < c.spinor_rank() && r.passed; ++a)
                for (int b = 0; b < c.spinor_rank() && r.passed; ++b) {
                    Tensor xa = c.spinor(a, u), xb = c.spinor(b, u);
                    Element lhs = dm.inner(dm.clifford(c.tensor(c.frame(j), xa)), xb);
                    Element rhs = dm.inner(xa, dm.clifford(c.tensor(c.frame_dagger(j), xb)));
                    if (!ctx.zero(lhs - rhs))
                        r = fail("clifford_star", "frame " + std::to_string(j) + ", spinors " + std::to_string(a) +
                                                      "," + std::to_string(b));
                }
        out.push_back(r);
    }
    {
        CheckResult r = pass("dirac_condition_3");
        for (int s = 0; s < samples && r.passed; ++s) {
            Element b = random_element(c.algebra(), rng);
            Tensor x = random_spinor(c, rng, 2);
            Tensor lhs = dm.dirac(c.lmul(b, x)) - c.lmul(b, dm.dirac(x));
            Tensor rhs = dm.clifford(c.tensor(c.d_element(b), x));
            if (!ctx.zero(lhs - rhs)) r = fail("dirac_condition_3", "sample " + std::to_string(s));
        }
        out.push_back(r);
    }
    {
        // grad^X c = (1 (x) c)(sigma (x) 1)(grad^G (x) 1 + 1 (x) grad^X)
        CheckResult r = pass("dirac_condition_4");
        for (std::size_t i = 0; i < rs.size() && r.passed; ++i)
            for (std::size_t j = 0; j < xs.size() && r.passed; ++j) {
                Tensor t = c.tensor(rs[i], xs[j]);
                Tensor lhs = dm.spin_connection(dm.clifford(t));
                Tensor rhs = dm.clifford(c.sigma(dm.connection_sum(t), 0));
                if (!ctx.zero(lhs - rhs)) r = fail("dirac_condition_4", pair_witness(i, j));
            }
        out.push_back(r);
    }
    {
        CheckResult r = pass("dirac_symmetric");
        for (std::size_t i = 0; i < xs.size() && r.passed; ++i) {
            const Tensor& x = xs[i];
            const Tensor& y = xs[(i + 1) % xs.size()];
            Scalar d = dm.phi(dm.inner(dm.dirac(x), y)) - dm.phi(dm.inner(x, dm.dirac(y)));
            if (!scalar_zero(ctx, d)) r = fail("dirac_symmetric", "spinor probe " + std::to_string(i));
        }
        out.push_back(r);
    }
    {
        CheckResult r = pass("weitzenbock_match");
        for (std::size_t i = 0; i < xs.size() && r.passed; ++i)
            if (!ctx.zero(dm.weitzenbock_residue(xs[i]) - dm.clifford_curvature(xs[i])))
                r = fail("weitzenbock_match", "spinor probe " + std::to_string(i));
        out.push_back(r);
    }
    if (const auto& k = c.geom().oracle.residue) {
        CheckResult r = pass("weitzenbock_oracle", "residue " + to_string(*k) + " x");
        for (std::size_t i = 0; i < xs.size() && r.passed; ++i)
            if (!ctx.zero(dm.weitzenbock_residue(xs[i]) - xs[i].scaled(*k)))
                r = fail("weitzenbock_oracle", "spinor probe " + std::to_string(i));
        out.push_back(r);
    }
    return out;
}

CheckResult divergence_check(const DiracModule& dm, const Tensor& x, const std::vector<Rational>& thetas) {
    const Calculus& c = dm.calculus();
    Scalar div = dm.divergence(x);
    if (!div.is_zero()) return pass("divergence", "divergence term " + to_string(div) + " nonzero; nothing to compare");
    // integration by parts needs e^{-beta} m(G) = 1
    auto mg = dm.m_rep(c.line_element());
    Element eb = c.e_beta();
    BasisKey u = c.algebra().unit();
    if (mg.size() != 1 || !mg.count(u) || !mg.at(u).scaled(eb.coeff(u).inv()).is_identity())
        return pass("divergence", "e^{-beta} m(G) is not the identity; comparison skipped");
    Tensor gx = dm.spin_connection(x);
    Scalar lhs = dm.phi(dm.inner(dm.laplacian(x), x));
    Scalar rhs = dm.phi(c.inner_right(c.line_element(), dm.pair_t2(gx, gx)));
    if (!(lhs - rhs).is_zero()) return fail("divergence", "phi(<Lap x, x>) = " + to_string(lhs) + ", expected " + to_string(rhs));
    for (const auto& q : thetas) {
        auto v = lhs.eval(q);
        if (v.real() < -1e-10 || std::abs(v.imag()) > 1e-10)
            return fail("divergence", "theta = " + to_string(q), "phi(<Lap x, x>) not nonnegative");
    }
    return pass("divergence", "phi(<Lap x, x>) = " + to_string(lhs));
}

CheckResult adjoint_connection_check(const DiracModule& dm, std::mt19937_64& rng, int samples) {
    const Calculus& c = dm.calculus();
    Tensor g = c.line_element();
    for (int s = 0; s < samples; ++s) {
        Tensor x = random_spinor(c, rng, 2);
        Tensor y = random_spinor(c, rng, 2);
        Tensor gx = dm.spin_connection(x), gy = dm.spin_connection(y);
        Element lhs = c.inner_right(g, dm.pair_t2(gx, gy));
        Tensor t = dm.partial_inner(dm.connection_sum(gx), y) - apply(c, dm.levi_civita(), dm.partial_inner(gx, y));
        Element rhs = c.inner_left(t, g);
        if (lhs != rhs) return fail("adjoint_connection", "sample " + std::to_string(s));
    }
    return pass("adjoint_connection");
}

}  // namespace ncgcurv
