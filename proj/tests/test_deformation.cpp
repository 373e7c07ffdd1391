#include "support.hpp"

using namespace ncgcurv;
using namespace ncgcurv::test;

namespace {
Tensor w(std::vector<int> legs, Scalar c = Scalar(1), BasisKey k = {}) { return Tensor::basis(legs, k, c); }

// exponent of the triple map written out from the degrees of the three factors
int h_exponent(Degree a, Degree b, Degree c) { return -a.n2 * (b.n1 + c.n1) - b.n2 * c.n1; }

void all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs) {
        CAPTURE(r.name);
        CAPTURE(r.witness);
        CHECK(r.passed);
    }
}
}  // namespace

TEST_CASE("comparison map examples") {
    Calculus df(builtin_sphere3(), Mode::Deformed);
    CHECK(t_theta(df, w({2, 2})) == w({2, 2}));
    CHECK(t_theta(df, w({0, 1})) == w({0, 1}, Scalar::lambda_pow(-1)));
    CHECK(h_theta(df, w({2, 2, 2})) == w({2, 2, 2}));
    CHECK(h_theta(df, w({0, 1, 0})) == w({0, 1, 0}, Scalar::lambda_pow(-1)));
}

TEST_CASE("triple map phase and coherence [property]") {
    Calculus df(builtin_sphere3(), Mode::Deformed);
    auto r = rng(60);
    std::uniform_int_distribution<int> leg(0, 2);
    for (int k = 0; k < kCases; ++k) {
        std::vector<int> legs{leg(r), leg(r), leg(r)};
        Tensor t = w(legs, random_scalar(r));
        int e = h_exponent(df.leg_degree(legs[0]), df.leg_degree(legs[1]), df.leg_degree(legs[2]));
        CHECK(h_theta(df, t) == t.scaled(Scalar::lambda_pow(e)));
        Tensor x = random_tensor(df, 3, r);
        CHECK(h_theta_left(df, x) == h_theta(df, x));
        CHECK(h_theta_right(df, x) == h_theta(df, x));
        CHECK(h_theta_inv(df, h_theta(df, x)) == x);
    }
}

TEST_CASE("comparison map preserves inner products [property]") {
    // <T s | T t>_theta = L^{(n1(s) - n1(t)) n2(s)} <s|t> on homogeneous pairs
    Calculus cl(builtin_sphere3(), Mode::Classical), df(builtin_sphere3(), Mode::Deformed);
    auto r = rng(61);
    std::uniform_int_distribution<int> leg(0, 2);
    int nontrivial = 0;
    for (int k = 0; k < kCases; ++k) {
        std::vector<int> legs{leg(r), leg(r)};
        Tensor s = w(legs, random_scalar(r)), t = w(legs, random_scalar(r));
        Degree ds = cl.legs_degree(legs), dt = cl.legs_degree(legs);
        Element lhs = df.inner_right(t_theta(df, s), t_theta(df, t));
        Element rhs = cl.inner_right(s, t).scaled(Scalar::lambda_pow((ds.n1 - dt.n1) * ds.n2));
        CHECK(lhs == rhs);
        nontrivial += !(t_theta(df, s) == s);
        CHECK(t_theta_inv(df, t_theta(df, s)) == s);
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("sigma and Psi are conjugated by T [property]") {
    auto g = builtin_sphere3();
    Calculus cl(g, Mode::Classical), df(g, Mode::Deformed);
    auto r = rng(62);
    for (int k = 0; k < kCases; ++k) {
        Tensor t = random_tensor(cl, 2, r);
        CHECK(df.sigma(t_theta(df, t), 0) == t_theta(df, cl.sigma(t, 0)));
        CHECK(df.psi(t_theta(df, t), 0) == t_theta(df, cl.psi(t, 0)));
        Tensor rho = random_tensor(cl, 1, r);
        CHECK(df.exterior_d(t_theta(df, rho, 0)) == t_theta(df, cl.exterior_d(rho)));
    }
}

TEST_CASE("deformed connection: Leibniz and lambda -> 1 [property]") {
    for (const auto& n : builtin_names()) {
        auto g = *builtin(n);
        Calculus cl(g, Mode::Classical), df(g, Mode::Deformed);
        Connection c0 = solve_levi_civita(cl).connection;
        Connection c1 = deform_connection(df, c0);
        CHECK(c1.mode == Mode::Deformed);
        CHECK(c1.a.map_scalars([](const Scalar& s) { return s.at_one(); }) == c0.a);
        auto r = rng(63);
        for (int k = 0; k < kCases / 2; ++k) {
            Tensor x = random_tensor(df, 1, r, 2);
            Element b = random_element(df.algebra(), r);
            CHECK(apply(df, c1, df.rmul(x, b)) == df.rmul(apply(df, c1, x), b) + df.tensor(x, df.d_element(b)));
            // grad_theta(T x) = T grad(x)
            Tensor y = random_tensor(cl, 1, r, 2);
            CHECK(apply(df, c1, df.to_mode(y)) == df.to_mode(apply(cl, c0, y)));
        }
    }
}

TEST_CASE("deformed Grassmann connection on the torus") {
    Calculus cl(builtin_torus(), Mode::Classical), df(builtin_torus(), Mode::Deformed);
    Connection v{Chirality::Right, Tensor(3), Mode::Classical};
    CHECK(deform_connection(df, v).a.is_zero());
}

TEST_CASE("identity suite, symbolic lambda") {
    for (const auto& n : builtin_names()) {
        CAPTURE(n);
        all_pass(verify_theta_theorems(*builtin(n), ThetaContext::exact(), {7, 6}));
    }
}

TEST_CASE("identity suite, numeric theta") {
    for (const auto& q : {Rational(1, 5), Rational(2, 7)}) {
        CAPTURE(to_string(q));
        all_pass(verify_theta_theorems(builtin_sphere3(), ThetaContext::numeric(q), {3, 4}));
    }
}

TEST_CASE("identity suite names") {
    auto rs = verify_theta_theorems(builtin_torus(), ThetaContext::exact(), {1, 2});
    std::vector<std::string> names;
    for (const auto& r : rs) names.push_back(r.name);
    for (const char* want : {"theta_cocycle_laws", "tensor_map_isometry", "triple_map_coherence",
                             "exterior_derivative_naturality", "deformed_levi_civita_uniqueness",
                             "curvature_naturality", "ricci_naturality", "scalar_curvature_invariance",
                             "laplacian_invariance", "clifford_curvature_invariance"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("flipped braiding phase is caught by the derivative naturality check") {
    auto g = builtin_sphere3();
    g.braiding = Braiding::Flipped;
    auto rs = verify_theta_theorems(g, ThetaContext::exact(), {1, 4});
    bool caught = false;
    for (const auto& r : rs)
        if (r.name == "exterior_derivative_naturality") {
            caught = !r.passed && !r.witness.empty();
            CAPTURE(r.witness);
        }
    CHECK(caught);
}
