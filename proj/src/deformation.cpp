#include "ncgcurv/deformation.hpp"

#include <stdexcept>

#include "ncgcurv/sampling.hpp"

namespace ncgcurv {

namespace {

using PhaseFn = std::function<int(const Calculus&, const TermKey&)>;

Tensor with_phase(const Calculus& c, const Tensor& t, const PhaseFn& f) {
    Tensor r(t.rank());
    for (const auto& [k, s] : t.terms()) {
        int e = f(c, k);
        r.add(k, e ? s * Scalar::lambda_pow(e) : s);
    }
    return r;
}

Degree span_degree(const Calculus& c, const TermKey& k, std::size_t from, std::size_t to, bool with_key) {
    Degree d;
    for (std::size_t p = from; p < to; ++p) d += c.leg_degree(k.legs[p]);
    if (with_key) d += c.algebra().degree(k.key);
    return d;
}

// exponent identifying a classical element of a tensor power with deformed coordinates
int coords(const Calculus& c, const TermKey& k, std::size_t from, bool with_key) {
    std::vector<Degree> f;
    for (std::size_t p = from; p < k.legs.size(); ++p) f.push_back(c.leg_degree(k.legs[p]));
    if (with_key) f.push_back(c.algebra().degree(k.key));
    return deform_exponent(f);
}

int coords_front(const Calculus& c, const TermKey& k, std::size_t to) {
    std::vector<Degree> f;
    for (std::size_t p = 0; p < to; ++p) f.push_back(c.leg_degree(k.legs[p]));
    return deform_exponent(f);
}

int t_exponent(const Calculus& c, const TermKey& k, int split) {
    std::size_t s = static_cast<std::size_t>(split), n = k.legs.size();
    Degree x = span_degree(c, k, 0, s, false), y = span_degree(c, k, s, n, true);
    return -x.n2 * y.n1 + coords_front(c, k, s) + coords(c, k, s, true);
}

int h_exponent(const Calculus& c, const TermKey& k) {
    if (k.legs.size() < 3) throw std::invalid_argument("h_theta expects rank >= 3");
    Degree a = c.leg_degree(k.legs[0]), b = c.leg_degree(k.legs[1]);
    Degree z = span_degree(c, k, 2, k.legs.size(), true);
    return -a.n2 * (b.n1 + z.n1) - b.n2 * z.n1 + coords(c, k, 2, true);
}

void check_split(const Tensor& t, int split) {
    if (split < 0 || split > t.rank()) throw std::invalid_argument("t_theta split out of range");
}

}  // namespace

Tensor t_theta(const Calculus& c, const Tensor& t, int split) {
    check_split(t, split);
    return with_phase(c, t, [split](const Calculus& cc, const TermKey& k) { return t_exponent(cc, k, split); });
}

Tensor t_theta_inv(const Calculus& c, const Tensor& t, int split) {
    check_split(t, split);
    return with_phase(c, t, [split](const Calculus& cc, const TermKey& k) { return -t_exponent(cc, k, split); });
}

Tensor h_theta(const Calculus& c, const Tensor& t) {
    return with_phase(c, t, [](const Calculus& cc, const TermKey& k) { return h_exponent(cc, k); });
}

Tensor h_theta_inv(const Calculus& c, const Tensor& t) {
    return with_phase(c, t, [](const Calculus& cc, const TermKey& k) { return -h_exponent(cc, k); });
}

Tensor h_theta_left(const Calculus& c, const Tensor& t) {
    // T^{X(x)Y, Z}, the front pair left in its undeformed coordinates
    Tensor s = with_phase(c, t, [](const Calculus& cc, const TermKey& k) {
        Degree xy = span_degree(cc, k, 0, 2, false), z = span_degree(cc, k, 2, k.legs.size(), true);
        return -xy.n2 * z.n1 + coords(cc, k, 2, true);
    });
    // then T^{X,Y} (x) 1
    return with_phase(c, s, [](const Calculus& cc, const TermKey& k) {
        return -cc.leg_degree(k.legs[0]).n2 * cc.leg_degree(k.legs[1]).n1;
    });
}

Tensor h_theta_right(const Calculus& c, const Tensor& t) {
    // T^{X, Y(x)Z} with the tail undeformed
    Tensor s = with_phase(c, t, [](const Calculus& cc, const TermKey& k) {
        Degree x = cc.leg_degree(k.legs[0]), yz = span_degree(cc, k, 1, k.legs.size(), true);
        return -x.n2 * yz.n1;
    });
    // then 1 (x) T^{Y,Z}
    return with_phase(c, s, [](const Calculus& cc, const TermKey& k) {
        Degree y = cc.leg_degree(k.legs[1]), z = span_degree(cc, k, 2, k.legs.size(), true);
        return -y.n2 * z.n1 + coords(cc, k, 2, true);
    });
}

Connection deform_connection(const Calculus& deformed, const Connection& classical) {
    if (classical.mode != Mode::Classical) throw std::invalid_argument("deform_connection expects a classical connection");
    Connection r = classical;
    r.a = h_theta(deformed, classical.a);
    r.mode = Mode::Deformed;
    return r;
}

namespace {

struct Suite {
    const ThetaContext& ctx;
    std::vector<CheckResult> out;

    // first failing witness wins
    void run(const std::string& name, const std::function<std::string()>& body, std::string detail = {}) {
        try {
            std::string w = body();
            out.push_back(w.empty() ? pass(name, std::move(detail)) : fail(name, w));
        } catch (const std::exception& e) {
            out.push_back(fail(name, std::string("error: ") + e.what()));
        }
    }
};

std::string idx(const char* what, std::size_t i) { return std::string(what) + " " + std::to_string(i); }

// sum over the last two legs: A _<eta (x) tau|G>
Tensor contract_last_two(const Calculus& c, const Tensor& t) {
    Tensor g = c.line_element();
    Tensor r(t.rank() - 2);
    BasisKey u = c.algebra().unit();
    std::map<std::vector<int>, Tensor> groups;
    for (const auto& [k, s] : t.terms()) {
        std::vector<int> head(k.legs.begin(), k.legs.end() - 2), tail(k.legs.end() - 2, k.legs.end());
        auto [it, ins] = groups.try_emplace(head, 2);
        it->second.add(tail, k.key, s);
    }
    for (const auto& [head, tail] : groups) r += c.rmul(Tensor::basis(head, u), c.inner_left(tail, g));
    return r;
}

// all frame multi-indices of the given rank with total leg degree zero
std::vector<std::vector<int>> balanced_indices(const Calculus& c, int rank) {
    std::vector<std::vector<int>> out;
    std::vector<int> ix(rank, 0);
    while (true) {
        if (c.legs_degree(ix).is_zero()) out.push_back(ix);
        int p = rank - 1;
        while (p >= 0 && ++ix[p] == c.n()) ix[p--] = 0;
        if (p < 0) break;
    }
    return out;
}

}  // namespace

std::vector<CheckResult> verify_theta_theorems(const GeometrySpec& spec, const ThetaContext& ctx,
                                               const ThetaOptions& opt) {
    auto g = std::make_shared<const GeometrySpec>(spec);
    Calculus cl(g, Mode::Classical), df(g, Mode::Deformed);
    std::mt19937_64 rng(opt.seed);
    const int ns = opt.samples;
    Suite s{ctx, {}};
    auto zero = [&](const auto& x) { return ctx.zero(x); };

    // classical data, drawn once and shared by the checks
    std::vector<Tensor> one, two, three;
    for (int j = 0; j < cl.n(); ++j) one.push_back(cl.frame(j));
    for (int i = 0; i < ns; ++i) {
        one.push_back(random_tensor(cl, 1, rng, 2));
        two.push_back(random_tensor(cl, 2, rng, 2));
        three.push_back(random_tensor(cl, 3, rng, 2));
    }

    s.run("theta_cocycle_laws", [&]() -> std::string {
        for (int i = 0; i < 4 * ns; ++i) {
            Degree a = random_degree(rng), b = random_degree(rng), e = random_degree(rng);
            if (theta_cocycle(a + b, e) != theta_cocycle(a, e) * theta_cocycle(b, e)) return idx("additivity, sample", i);
            if (!(theta_cocycle(a, e) * theta_cocycle(e, a)).is_one()) return idx("antisymmetry, sample", i);
            if (!theta_cocycle(a, a).is_one()) return idx("diagonal, sample", i);
        }
        return {};
    });

    s.run("tensor_map_isometry", [&]() -> std::string {
        for (std::size_t i = 0; i < two.size(); ++i) {
            // homogeneous pieces: one term each
            for (const auto& [k1, c1] : two[i].terms())
                for (const auto& [k2, c2] : two[(i + 1) % two.size()].terms()) {
                    Tensor a(2), b(2);
                    a.add(k1, c1);
                    b.add(k2.legs == k1.legs ? k2 : TermKey{k1.legs, k2.key}, c2);
                    Degree da = cl.term_degree(k1), db = cl.term_degree(b.terms().begin()->first);
                    Scalar ph = Scalar::lambda_pow((da.n1 - db.n1) * da.n2);
                    Element lhs = df.inner_right(t_theta(df, a), t_theta(df, b));
                    Element rhs = cl.inner_right(a, b).scaled(ph);
                    if (!zero(lhs - rhs)) return idx("pair", i);
                    if (!zero(t_theta_inv(df, t_theta(df, a)) - a)) return idx("inverse, pair", i);
                }
        }
        for (std::size_t i = 0; i < two.size(); ++i)
            for (int split = 0; split <= 2; ++split)
                if (!zero(t_theta(df, two[i], split) - df.to_mode(two[i]))) return idx("split independence, sample", i);
        return {};
    });

    s.run("triple_map_coherence", [&]() -> std::string {
        for (std::size_t i = 0; i < three.size(); ++i) {
            Tensor h = h_theta(df, three[i]);
            if (!zero(h - h_theta_left(df, three[i]))) return idx("(T(x)1)T, sample", i);
            if (!zero(h - h_theta_right(df, three[i]))) return idx("(1(x)T)T, sample", i);
            if (!zero(h_theta_inv(df, h) - three[i])) return idx("inverse, sample", i);
        }
        return {};
    });

    s.run("exterior_derivative_naturality", [&]() -> std::string {
        for (std::size_t i = 0; i < one.size(); ++i)
            if (!zero(df.exterior_d(t_theta(df, one[i], 0)) - t_theta(df, cl.exterior_d(one[i]))))
                return idx("d_theta(T rho) != T(d rho), probe", i);
        for (std::size_t i = 0; i < two.size(); ++i) {
            Tensor t = t_theta(df, two[i]);
            if (!zero(df.sigma(t) - t_theta(df, cl.sigma(two[i])))) return idx("sigma_theta != T sigma T^-1, sample", i);
            if (!zero(df.psi(t) - t_theta(df, cl.psi(two[i])))) return idx("Psi_theta != T Psi T^-1, sample", i);
        }
        for (int j = 0; j < cl.n(); ++j)
            for (int k = 0; k < cl.n(); ++k) {
                Tensor b = Tensor::basis({j, k}, cl.algebra().unit());
                if (!zero(df.sigma(t_theta(df, b)) - t_theta(df, cl.sigma(b))))
                    return "sigma_theta on frame pair (" + std::to_string(j) + "," + std::to_string(k) + ")";
            }
        return {};
    });

    s.run("adjoint_naturality", [&]() -> std::string {
        // dag_theta = T o dag_{2,theta} o T^{-1}, dag_{2,theta}(t) = lambda^{n1 n2(t)} t^dag
        for (std::size_t i = 0; i < two.size(); ++i) {
            Tensor d2(2);
            for (const auto& [k, v] : two[i].terms()) {
                Tensor term(2);
                term.add(k, v);
                Degree d = cl.term_degree(k);
                d2 += cl.dagger(term).scaled(Scalar::lambda_pow(d.n1 * d.n2));
            }
            if (!zero(df.dagger(t_theta(df, two[i])) - t_theta(df, d2))) return idx("sample", i);
        }
        return {};
    });

    LeviCivitaSolution scl = solve_levi_civita(cl, nullptr, opt.seed, ns);
    LeviCivitaSolution sdf = solve_levi_civita(df, nullptr, opt.seed, ns);
    Connection def = deform_connection(df, scl.connection);
    Connection lcl = conjugate(cl, scl.connection), ldf = conjugate(df, def);

    s.run("deformed_levi_civita_uniqueness", [&]() -> std::string {
        if (!zero(sdf.connection.a - def.a)) return "solved deformed A differs from the deformed classical A";
        return {};
    });

    auto conn_checks = check_connection(df, def, ctx, rng, ns);
    auto find = [&](const std::string& n) -> const CheckResult& {
        for (const auto& r : conn_checks)
            if (r.name == n) return r;
        throw std::logic_error("missing check " + n);
    };

    s.run("deformed_hermitian", [&]() -> std::string {
        if (!zero(df.line_element() - t_theta(df, cl.line_element()))) return "G_theta != T(G)";
        const auto& h = find("hermitian");
        return h.passed ? std::string() : "hermitian: " + h.witness;
    });

    s.run("deformed_torsion_free", [&]() -> std::string {
        for (const char* n : {"torsion_free_right", "torsion_free_left", "sigma_bimodule", "leibniz_right", "leibniz_left"}) {
            const auto& r = find(n);
            if (!r.passed) return std::string(n) + ": " + r.witness;
        }
        for (std::size_t i = 0; i < one.size(); ++i)
            if (!zero(apply(df, def, t_theta(df, one[i], 0)) - t_theta(df, apply(cl, scl.connection, one[i]))))
                return idx("grad_theta != T grad, probe", i);
        return {};
    });

    s.run("curvature_naturality", [&]() -> std::string {
        for (std::size_t i = 0; i < one.size(); ++i) {
            Tensor rho = t_theta(df, one[i], 0);
            if (!zero(curvature(df, ldf, rho) - h_theta(df, curvature(cl, lcl, one[i]))))
                return idx("left curvature, probe", i);
            if (!zero(curvature(df, def, rho) - h_theta(df, curvature(cl, scl.connection, one[i]))))
                return idx("right curvature, probe", i);
        }
        return {};
    });

    Tensor rt_cl = curvature_tensor(cl, lcl), rt_df = curvature_tensor(df, ldf);
    Tensor ric_cl = ricci(cl, Chirality::Left, rt_cl), ric_df = ricci(df, Chirality::Left, rt_df);
    Tensor rr_cl = curvature_tensor(cl, scl.connection), rr_df = curvature_tensor(df, def);
    Tensor rric_cl = ricci(cl, Chirality::Right, rr_cl), rric_df = ricci(df, Chirality::Right, rr_df);

    s.run("ricci_naturality", [&]() -> std::string {
        if (!zero(ric_df - t_theta(df, ric_cl))) return "left Ricci";
        if (!zero(rric_df - t_theta(df, rric_cl))) return "right Ricci";
        return {};
    });

    s.run("scalar_curvature_invariance", [&]() -> std::string {
        Element r0 = scalar_curvature(cl, Chirality::Left, ric_cl), r1 = scalar_curvature(df, Chirality::Left, ric_df);
        if (!zero(r0 - r1)) return "left: " + to_string(r1.coeff(df.algebra().unit())) + " vs " +
                                   to_string(r0.coeff(cl.algebra().unit()));
        Element q0 = scalar_curvature(cl, Chirality::Right, rric_cl), q1 = scalar_curvature(df, Chirality::Right, rric_df);
        if (!zero(q0 - q1)) return "right scalar curvature";
        return {};
    });

    s.run("contraction_four", [&]() -> std::string {
        BasisKey u = cl.algebra().unit();
        auto quads = balanced_indices(cl, 4);
        for (std::size_t i = 0; i < quads.size(); ++i) {
            const auto& q = quads[i];
            Tensor front = Tensor::basis({q[0], q[1], q[2]}, u);
            Tensor tau = Tensor::basis({q[3]}, u);
            Tensor lhs = contract_last_two(df, df.tensor(h_theta(df, front), t_theta(df, tau, 0)));
            Element pairing = cl.inner_left(Tensor::basis({q[2], q[3]}, u), cl.line_element());
            // deformed and classical adjoints of tau differ by lambda^{n1 n2(tau)}
            Degree dt = cl.leg_degree(q[3]);
            Tensor rhs = df.rmul(t_theta(df, Tensor::basis({q[0], q[1]}, u)), pairing)
                             .scaled(Scalar::lambda_pow(-dt.n1 * dt.n2));
            if (!zero(lhs - rhs)) return idx("frame quadruple", i);
        }
        return {};
    });

    std::optional<DiracModule> dcl, ddf;
    if (g->dirac.s > 0) {
        dcl.emplace(cl, scl.connection);
        ddf.emplace(df, def);
    }
    std::vector<Tensor> xs, fx, ffx;
    if (dcl) {
        for (int a = 0; a < cl.spinor_rank(); ++a) xs.push_back(cl.spinor(a, cl.algebra().unit()));
        for (int i = 0; i < ns; ++i) {
            xs.push_back(random_spinor(cl, rng, 2));
            fx.push_back(random_spinor(cl, rng, 2, 1));
            ffx.push_back(random_spinor(cl, rng, 2, 2));
        }
    }
    auto dirac_check = [&](const std::string& name, const std::function<std::string()>& body) {
        if (!dcl) {
            s.out.push_back(pass(name, "no spinor data"));
            return;
        }
        s.run(name, body);
    };

    dirac_check("contraction_three", [&]() -> std::string {
        Tensor g0 = cl.line_element(), g1 = df.line_element();
        BasisKey u = cl.algebra().unit();
        for (std::size_t i = 0; i < ffx.size(); ++i) {
            Tensor lhs(1), rhs(1);
            for (const auto& [head, tail] : h_theta(df, ffx[i]).split_front(2))
                lhs += df.lmul(df.inner_right(g1, Tensor::basis(head, u)), tail);
            for (const auto& [head, tail] : ffx[i].split_front(2))
                rhs += cl.lmul(cl.inner_right(g0, Tensor::basis(head, u)), tail);
            if (!zero(lhs - df.to_mode(rhs))) return idx("sample", i);
        }
        return {};
    });

    dirac_check("clifford_maps_naturality_1", [&]() -> std::string {
        // m_theta(T t) x = lambda^{n2(t) n1(x)} m(t) x on homogeneous pieces; plain equality for degree-zero t
        for (std::size_t i = 0; i < two.size(); ++i)
            for (const auto& [kt, ct] : two[i].terms())
                for (std::size_t j = 0; j < xs.size(); ++j)
                    for (const auto& [kx, cx] : xs[j].terms()) {
                        Tensor t(2), x(1);
                        t.add(kt, ct);
                        x.add(kx, cx);
                        Degree dt = cl.term_degree(kt), dx = cl.term_degree(kx);
                        Tensor lhs = ddf->m_apply(t_theta(df, t), df.to_mode(x));
                        Tensor rhs = df.to_mode(dcl->m_apply(t, x)).scaled(Scalar::lambda_pow(dt.n2 * dx.n1));
                        if (!zero(lhs - rhs)) return idx("two-tensor", i) + ", " + idx("spinor", j);
                    }
        Tensor g0 = cl.line_element();
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (!zero(ddf->m_apply(t_theta(df, g0), df.to_mode(xs[j])) - df.to_mode(dcl->m_apply(g0, xs[j]))))
                return idx("G, spinor", j);
        return {};
    });
    dirac_check("clifford_maps_naturality_2", [&]() -> std::string {
        for (std::size_t i = 0; i < two.size(); ++i)
            if (!zero(df.g_pair(t_theta(df, two[i])) - cl.g_pair(two[i]))) return idx("sample", i);
        return {};
    });
    dirac_check("clifford_maps_naturality_3", [&]() -> std::string {
        for (std::size_t i = 0; i < fx.size(); ++i)
            if (!zero(ddf->clifford(t_theta(df, fx[i])) - df.to_mode(dcl->clifford(fx[i])))) return idx("sample", i);
        return {};
    });
    dirac_check("clifford_maps_naturality_4", [&]() -> std::string {
        for (std::size_t i = 0; i < ffx.size(); ++i)
            if (!zero(ddf->clifford(h_theta(df, ffx[i])) - t_theta(df, dcl->clifford(ffx[i])))) return idx("sample", i);
        return {};
    });
    dirac_check("clifford_maps_naturality_5", [&]() -> std::string {
        for (std::size_t i = 0; i < ffx.size(); ++i)
            if (!zero(df.sigma(h_theta(df, ffx[i]), 0) - h_theta(df, cl.sigma(ffx[i], 0)))) return idx("sample", i);
        return {};
    });

    dirac_check("deformed_clifford_connection", [&]() -> std::string {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!zero(ddf->spin_connection(df.to_mode(xs[i])) - t_theta(df, dcl->spin_connection(xs[i]))))
                return idx("spin connection != T grad, spinor", i);
        std::mt19937_64 r2(opt.seed + 1);
        for (const auto& c : check_dirac_conditions(*ddf, ctx, r2, ns))
            if (c.name == "dirac_condition_4" && !c.passed) return "condition 4: " + c.witness;
        return {};
    });

    dirac_check("deformed_dirac_triple", [&]() -> std::string {
        if (ddf->m_rep(df.line_element()) != dcl->m_rep(cl.line_element())) return "m(G_theta) != m(G)";
        if (!zero(df.e_beta() - cl.e_beta())) return "e^beta_theta != e^beta";
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!zero(ddf->dirac(df.to_mode(xs[i])) - df.to_mode(dcl->dirac(xs[i])))) return idx("D_theta != D, spinor", i);
        std::mt19937_64 r2(opt.seed + 2);
        for (const auto& c : check_dirac_conditions(*ddf, ctx, r2, ns))
            if (!c.passed) return c.name + ": " + c.witness;
        return {};
    });

    dirac_check("laplacian_invariance", [&]() -> std::string {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!zero(ddf->laplacian(df.to_mode(xs[i])) - df.to_mode(dcl->laplacian(xs[i])))) return idx("spinor", i);
        return {};
    });

    dirac_check("clifford_curvature_invariance", [&]() -> std::string {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Tensor x = df.to_mode(xs[i]);
            Tensor w = df.to_mode(dcl->clifford_curvature(xs[i]));
            if (!zero(ddf->clifford_curvature(x) - w)) return idx("curvature term, spinor", i);
            if (!zero(ddf->weitzenbock_residue(x) - w)) return idx("residue, spinor", i);
        }
        return {};
    });

    dirac_check("connection_sum_naturality", [&]() -> std::string {
        for (std::size_t i = 0; i < fx.size(); ++i)
            if (!zero(ddf->connection_sum(t_theta(df, fx[i])) - h_theta(df, dcl->connection_sum(fx[i]))))
                return idx("sample", i);
        return {};
    });

    return s.out;
}

}  // namespace ncgcurv
