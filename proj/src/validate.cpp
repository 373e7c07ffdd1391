#include <random>
#include <sstream>

#include "ncgcurv/forms.hpp"
#include "ncgcurv/geometry.hpp"
#include "ncgcurv/sampling.hpp"

namespace ncgcurv {

namespace {

std::string deg(Degree d) { return to_string(d); }

CheckResult shapes(const GeometrySpec& g) {
    const char* nm = "shapes";
    if (g.frame.n <= 0) return fail(nm, "frame size " + std::to_string(g.frame.n));
    if (static_cast<int>(g.frame.degrees.size()) != g.frame.n) return fail(nm, "frame degrees length");
    if (g.frame.star.rows() != g.frame.n || g.frame.star.cols() != g.frame.n) return fail(nm, "star matrix shape");
    if (static_cast<int>(g.frame.d.size()) != g.frame.n) return fail(nm, "frame differential count");
    for (int j = 0; j < g.frame.n; ++j)
        if (g.frame.d[j].rank() != 2) return fail(nm, "d(omega_" + std::to_string(j) + ") is not a two-form");
    if (g.connection_offset.rank() != 3) return fail(nm, "connection_offset must be rank 3");
    if (g.frame.gram.rows() != 0 && (g.frame.gram.rows() != g.frame.n || g.frame.gram.cols() != g.frame.n))
        return fail(nm, "gram shape");
    if (g.derivation.kind == Derivation::Kind::Linear && static_cast<int>(g.derivation.linear.size()) != g.frame.n)
        return fail(nm, "linear derivation needs one pair per frame element");
    const auto& a = g.algebra;
    if (a.kind == AlgebraKind::UserTable) {
        int m = static_cast<int>(a.names.size());
        if (m == 0 || static_cast<int>(a.degrees.size()) != m || static_cast<int>(a.stars.size()) != m)
            return fail(nm, "algebra table sizes");
        if (a.unit_index < 0 || a.unit_index >= m) return fail(nm, "unit index");
    }
    if (g.dirac.s > 0) {
        if (static_cast<int>(g.dirac.degrees.size()) != g.dirac.s) return fail(nm, "spinor degrees length");
        if (static_cast<int>(g.dirac.gamma.size()) != g.frame.n || static_cast<int>(g.dirac.spin.size()) != g.frame.n)
            return fail(nm, "one gamma and one spin matrix per frame element");
        for (const auto* ms : {&g.dirac.gamma, &g.dirac.spin})
            for (const auto& m : *ms)
                if (m.rows() != g.dirac.s || m.cols() != g.dirac.s) return fail(nm, "spinor matrix shape");
    }
    return pass(nm);
}

CheckResult algebra_degrees(const AlgebraSpec& a) {
    const char* nm = "algebra_degrees";
    if (a.kind != AlgebraKind::UserTable) return pass(nm);
    if (a.degrees[a.unit_index] != Degree{}) return fail(nm, "unit has degree " + deg(a.degrees[a.unit_index]));
    for (const auto& [lr, res] : a.products)
        for (const auto& [k, s] : res)
            if (!s.is_zero() && a.degrees[k] != a.degrees[lr.first] + a.degrees[lr.second])
                return fail(nm, a.names[lr.first] + "*" + a.names[lr.second] + " -> " + a.names[k]);
    for (std::size_t i = 0; i < a.stars.size(); ++i)
        if (a.degrees[a.stars[i].first] != -a.degrees[i]) return fail(nm, "star of " + a.names[i]);
    return pass(nm);
}

// Tensor terms must all carry total degree `want`
std::optional<std::string> off_degree(const Calculus& c, const Tensor& t, Degree want) {
    for (const auto& [k, s] : t.terms())
        if (c.term_degree(k) != want) return "term of degree " + deg(c.term_degree(k)) + ", expected " + deg(want);
    return std::nullopt;
}

CheckResult frame_differential_degrees(const Calculus& c) {
    const char* nm = "frame_differential_degrees";
    const auto& g = c.geom();
    for (int j = 0; j < g.frame.n; ++j)
        if (auto w = off_degree(c, g.frame.d[j], g.frame.degrees[j]))
            return fail(nm, "frame index " + std::to_string(j) + ": " + *w);
    return pass(nm);
}

CheckResult derivation_degrees(const Calculus& c, std::mt19937_64& rng) {
    const char* nm = "derivation_degrees";
    const auto& g = c.geom();
    std::vector<BasisKey> keys = g.algebra.sample_keys();
    for (const auto* tab : {&g.derivation.table, &g.derivation.overrides})
        for (const auto& [k, t] : *tab) keys.push_back(k);
    for (int i = 0; i < 20; ++i) keys.push_back(random_key(g.algebra, rng));
    for (BasisKey k : keys) {
        Tensor t;
        try {
            t = g.derivation.apply(g.algebra, k);
        } catch (const std::exception& e) {
            return fail(nm, "d(" + g.algebra.key_name(k) + "): " + e.what());
        }
        if (auto w = off_degree(c, t, g.algebra.degree(k))) return fail(nm, "d(" + g.algebra.key_name(k) + "): " + *w);
    }
    return pass(nm);
}

CheckResult star_degrees(const GeometrySpec& g) {
    const char* nm = "star_degrees";
    for (int j = 0; j < g.frame.n; ++j)
        for (int k = 0; k < g.frame.n; ++k)
            if (!g.frame.star(k, j).is_zero() && g.frame.degrees[k] != -g.frame.degrees[j])
                return fail(nm, "S(" + std::to_string(k) + "," + std::to_string(j) + ") links degrees " +
                                    deg(g.frame.degrees[k]) + " and " + deg(g.frame.degrees[j]));
    return pass(nm);
}

CheckResult star_involution(const GeometrySpec& g) {
    const char* nm = "star_involution";
    Matrix p = g.frame.star * g.frame.star.conjugate();
    if (!p.is_identity()) return fail(nm, "S conj(S) is not the identity");
    return pass(nm);
}

CheckResult orthonormal(const GeometrySpec& g) {
    const char* nm = "orthonormal_frame";
    if (g.frame.gram.rows() != 0 && !g.frame.gram.is_identity())
        return fail(nm, "declared Gram matrix is not the identity; only orthonormal frames are supported");
    return pass(nm);
}

// rho = sum_j omega_j <omega_j, rho>
CheckResult frame_identity(const Calculus& c, std::mt19937_64& rng, int samples) {
    const char* nm = "frame_identity";
    for (int i = 0; i < samples; ++i) {
        Tensor rho = random_tensor(c, 1, rng);
        Tensor back(1);
        for (int j = 0; j < c.n(); ++j) back += c.rmul(c.frame(j), c.inner_right(c.frame(j), rho));
        if (back != rho) return fail(nm, "rho = " + describe(rho, c.algebra()));
    }
    return pass(nm);
}

CheckResult dagger_involution(const Calculus& c, std::mt19937_64& rng, int samples) {
    const char* nm = "dagger_involution";
    for (int i = 0; i < samples; ++i) {
        Tensor t = random_tensor(c, 1 + i % 2, rng);
        if (c.dagger(c.dagger(t)) != t) return fail(nm, to_string(c.mode()) + std::string(" t = ") + describe(t, c.algebra()));
    }
    return pass(nm);
}

CheckResult frame_differential_image(const Calculus& c) {
    const char* nm = "frame_differential_image";
    for (int j = 0; j < c.n(); ++j) {
        Tensor dw = c.d_frame(j);
        if (c.anti(dw, 0) != dw)
            return fail(nm, "frame index " + std::to_string(j) + " (" + to_string(c.mode()) +
                                "): d(omega) is not in the image of 1 - Psi");
    }
    return pass(nm);
}

CheckResult clifford_balanced(const GeometrySpec& g) {
    const char* nm = "clifford_balanced";
    if (g.dirac.s == 0) return pass(nm, "no spinor data");
    const auto& xd = g.dirac.degrees;
    for (int j = 0; j < g.frame.n; ++j)
        for (int a = 0; a < g.dirac.s; ++a)
            for (int b = 0; b < g.dirac.s; ++b) {
                if (!g.dirac.gamma[j](b, a).is_zero() && xd[b] != xd[a] + g.frame.degrees[j])
                    return fail(nm, "gamma_" + std::to_string(j) + "(" + std::to_string(b) + "," + std::to_string(a) +
                                        ") does not preserve degree");
                if (!g.dirac.spin[j](b, a).is_zero() && xd[b] + g.frame.degrees[j] != xd[a])
                    return fail(nm, "spin_" + std::to_string(j) + "(" + std::to_string(b) + "," + std::to_string(a) +
                                        ") does not preserve degree");
            }
    return pass(nm);
}

CheckResult functional_normalised(const GeometrySpec& g) {
    if (g.functional != "unit_coefficient") return fail("functional", "unknown functional '" + g.functional + "'");
    return pass("functional", "phi(1) = 1");
}

}  // namespace

std::vector<CheckResult> validate_geometry(const GeometrySpec& g, std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(shapes(g));
    if (!out.back().passed) return out;
    out.push_back(algebra_degrees(g.algebra));
    out.push_back(star_degrees(g));
    out.push_back(star_involution(g));
    out.push_back(orthonormal(g));
    out.push_back(clifford_balanced(g));
    out.push_back(functional_normalised(g));

    std::mt19937_64 rng(seed);
    Calculus cl(g, Mode::Classical), df(g, Mode::Deformed);
    out.push_back(frame_differential_degrees(cl));
    out.push_back(derivation_degrees(cl, rng));
    if (!all_passed(out)) return out;

    out.push_back(check_leibniz(g.algebra, g.derivation, 40, rng));
    out.push_back(frame_identity(cl, rng, 20));
    for (const Calculus* c : {&cl, &df}) {
        for (auto r : {dagger_involution(*c, rng, 20), frame_differential_image(*c)}) {
            r.name += std::string("_") + to_string(c->mode());
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace ncgcurv
