#include "support.hpp"

using namespace ncgcurv;
using namespace ncgcurv::test;

namespace {
Tensor w(std::vector<int> legs, Scalar c = Scalar(1), BasisKey k = {}) { return Tensor::basis(legs, k, c); }
}  // namespace

TEST_CASE("Grassmann connection") {
    Calculus t(builtin_torus(), Mode::Classical);
    CHECK(grassmann_right(t, w({0})).is_zero());
    CHECK(grassmann_right(t, w({0}, Scalar(1), {1, 0})) == w({0, 0}, Scalar::i(), {1, 0}));
    Connection v{Chirality::Right, Tensor(3), Mode::Classical};
    auto r = rng(30);
    for (int k = 0; k < 20; ++k) {
        Tensor rho = random_tensor(t, 1, r);
        CHECK(apply(t, conjugate(t, v), rho) == grassmann_left(t, rho));
    }
}

TEST_CASE("torus: A = 0 in both modes") {
    for (Mode m : {Mode::Classical, Mode::Deformed}) {
        Calculus c(builtin_torus(), m);
        auto sol = solve_levi_civita(c);
        CHECK(sol.connection.a.is_zero());
        CHECK(sol.concordance.concordant);
        CHECK(sol.concordance.difference.is_zero());
        CHECK(all_passed(sol.postconditions));
    }
}

TEST_CASE("sphere: Levi-Civita data") {
    Calculus c(builtin_sphere3(), Mode::Classical);
    auto sol = solve_levi_civita(c);
    CHECK(all_passed(sol.postconditions));
    for (const auto& [k, v] : sol.connection.a.terms()) {
        CHECK(k.key == BasisKey{});
        CHECK(v.is_laurent());
        CHECK(v.num().is_monomial());
        CHECK(v.num().min_exp() == 0);  // constant
    }
    // e3 is Killing: grad(e3) is antisymmetric, equal to -d(e3)
    Tensor g3 = apply(c, sol.connection, w({2}));
    CHECK(g3 == w({0, 1}, Scalar::i()) - w({1, 0}, Scalar::i()));
    CHECK(g3 == -c.exterior_d(w({2})));
}

TEST_CASE("postconditions hold on every builtin and mode") {
    for (const auto& n : builtin_names())
        for (Mode m : {Mode::Classical, Mode::Deformed}) {
            Calculus c(*builtin(n), m);
            auto sol = solve_levi_civita(c, nullptr, 3, 8);
            CAPTURE(n);
            CAPTURE(to_string(m));
            for (const auto& r : sol.postconditions) {
                CAPTURE(r.name);
                CAPTURE(r.witness);
                CHECK(r.passed);
            }
            CHECK(sol.concordance.difference.is_zero());
            CHECK(sol.concordance.direct_sum);
        }
}

TEST_CASE("connection Leibniz rules and conjugation [property]") {
    auto r = rng(31);
    for (const auto& n : builtin_names())
        for (Mode m : {Mode::Classical, Mode::Deformed}) {
            Calculus c(*builtin(n), m);
            Connection right = solve_levi_civita(c).connection;
            Connection left = conjugate(c, right);
            Connection back = conjugate(c, left);
            CHECK(back.a == right.a);
            CHECK(back.chirality == Chirality::Right);
            for (int k = 0; k < kCases; ++k) {
                Tensor rho = random_tensor(c, 1, r, 2);
                Element a = random_element(c.algebra(), r);
                // right: grad(rho a) = grad(rho) a + rho (x) da
                CHECK(apply(c, right, c.rmul(rho, a)) ==
                      c.rmul(apply(c, right, rho), a) + c.tensor(rho, c.d_element(a)));
                // left: grad(a rho) = da (x) rho + a grad(rho)
                CHECK(apply(c, left, c.lmul(a, rho)) ==
                      c.tensor(c.d_element(a), rho) + c.lmul(a, apply(c, left, rho)));
                // left = -dagger o right o dagger
                CHECK(apply(c, left, rho) == -c.dagger(apply(c, right, c.dagger(rho))));
                // torsion: (1 - Psi) grad = -d on the right, +d on the left
                CHECK(c.anti(apply(c, right, rho), 0) == -c.exterior_d(rho));
                CHECK(c.anti(apply(c, left, rho), 0) == c.exterior_d(rho));
                // sigma-bimodule
                CHECK(c.sigma(apply(c, right, rho), 0) == apply(c, left, rho));
            }
        }
}

TEST_CASE("deformed solve equals the deformed classical solve") {
    for (const auto& n : builtin_names()) {
        auto g = *builtin(n);
        Calculus cl(g, Mode::Classical), df(g, Mode::Deformed);
        Connection direct = solve_levi_civita(df).connection;
        Connection deformed = deform_connection(df, solve_levi_civita(cl).connection);
        CHECK(direct.a == deformed.a);
        // lambda -> 1 recovers the classical connection
        Tensor spec = direct.a.map_scalars([](const Scalar& s) { return s.at_one(); });
        CHECK(spec == solve_levi_civita(cl).connection.a);
    }
}

TEST_CASE("uniqueness: extra Im(Pi) components break a postcondition") {
    auto r = rng(32);
    for (const auto& n : {"torus", "sphere3"}) {
        Calculus c(*builtin(n), Mode::Classical);
        auto blocks = projection_blocks(c);
        for (int k = 0; k < 20; ++k) {
            Tensor extra = random_tensor(c, 3, r, 3);
            if (apply_block_operator(c, blocks, extra, &ProjectionBlock::pi).is_zero()) continue;
            auto sol = solve_levi_civita(c, &extra);
            CHECK_FALSE(all_passed(sol.postconditions));
        }
    }
}

TEST_CASE("frame independence: the real frame of the sphere") {
    auto g = builtin_sphere3();
    Calculus cx(g, Mode::Classical), cr(builtin_sphere3_real(), Mode::Classical);
    const Matrix& R = *g.oracle.real_frame;  // omega_j = sum_k e_k R_kj
    Connection ax = solve_levi_civita(cx).connection, ar = solve_levi_civita(cr).connection;
    auto r = rng(33);
    for (int k = 0; k < 30; ++k) {
        Tensor rho = random_tensor(cx, 1, r, 2);
        CHECK(transform_frame_legs(apply(cx, ax, rho), R) == apply(cr, ar, transform_frame_legs(rho, R)));
    }
    CHECK(transform_frame_legs(cx.line_element(), R) == cr.line_element());
    CHECK(transform_frame_legs(w_tensor(cx).w, R) == w_tensor(cr).w);
}
