#include "support.hpp"

using namespace ncgcurv;
using namespace ncgcurv::test;

TEST_CASE("scalar examples") {
    Scalar L = Scalar::lambda_pow(1);
    CHECK(Scalar::lambda_pow(2) * (Scalar::rational(1, 2) * Scalar::lambda_pow(-1)) == Scalar::rational(1, 2) * L);
    CHECK((Scalar(1) + L).inv() == Scalar::fraction(LaurentPoly(Coeff(1)), LaurentPoly(Coeff(1)) + LaurentPoly(Coeff(1), 1)));
    CHECK(Scalar::sqrt2() * L + Scalar::sqrt2() * L == Scalar(2) * Scalar::sqrt2() * L);
    CHECK((Scalar::i() * Scalar::lambda_pow(3)).conj() == -Scalar::i() * Scalar::lambda_pow(-3));
    // conj(1/(1+L)) = L/(L+1)
    CHECK((Scalar(1) + L).inv().conj() == L / (L + Scalar(1)));
    CHECK(close(Scalar::lambda_pow(2).eval(Rational(1, 4)), -1.0, 1e-12));
    CHECK(close(Scalar(3).eval(Rational(2, 7)), 3.0, 1e-12));
    CHECK(close((L + L.inv()).eval(Rational(1, 8)), std::sqrt(2.0), 1e-12));
}

TEST_CASE("scalar canonical form") {
    Scalar L = Scalar::lambda_pow(1);
    Scalar x = (L * L - Scalar(1)) / (L - Scalar(1));
    CHECK(x == L + Scalar(1));
    CHECK(x.is_laurent());
    CHECK((x - x).is_zero());
    CHECK(Scalar::rational(2, 4) == Scalar::rational(1, 2));
    CHECK(Scalar::sqrt2() * Scalar::sqrt2() == Scalar(2));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
}

TEST_CASE("scalar token grammar") {
    CHECK(S("1/2*L") == Scalar::rational(1, 2) * Scalar::lambda_pow(1));
    CHECK(S("2*r2*L") == Scalar(2) * Scalar::sqrt2() * Scalar::lambda_pow(1));
    CHECK(S("-i*L^-3") == -Scalar::i() * Scalar::lambda_pow(-3));
    CHECK(S("(1)/(1+L)") == (Scalar(1) + Scalar::lambda_pow(1)).inv());
    CHECK(S("0").is_zero());
    CHECK_THROWS_AS(S("1+"), ScalarParseError);
    CHECK_THROWS_AS(S("L^"), ScalarParseError);
    CHECK_THROWS(S("1/(1-1)"));
    for (const char* t : {"0", "1", "-1", "1/2*L", "2*r2*L", "-i*L^-3", "(1)/(1+L)", "3/2", "i*r2"}) CHECK(S(t).str() == S(S(t).str()).str());
}

TEST_CASE("scalar print/parse round trip [property]") {
    auto r = rng(1);
    for (int k = 0; k < kCases; ++k) {
        Scalar x = random_scalar(r);
        if (k % 3 == 0) x = x / (random_scalar(r) + Scalar(5));
        CAPTURE(x.str());
        CHECK(Scalar::parse(x.str()) == x);
    }
}

TEST_CASE("field axioms against numeric evaluation [property]") {
    auto r = rng(2);
    for (int k = 0; k < kCases; ++k) {
        Scalar x = random_scalar(r), y = random_scalar(r), z = random_scalar(r);
        CAPTURE(x.str());
        CAPTURE(y.str());
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        CHECK((x - x).is_zero());
        if (!x.is_zero()) CHECK(x * x.inv() == Scalar(1));
        // independent oracle: complex arithmetic at a point of the unit circle
        auto p = probe_point(r);
        auto ex = x.eval_at(p), ey = y.eval_at(p);
        CHECK(close((x * y).eval_at(p), ex * ey, 1e-8 * (1 + std::abs(ex * ey))));
        CHECK(close((x + y).eval_at(p), ex + ey, 1e-8 * (1 + std::abs(ex + ey))));
        if (!y.is_zero() && std::abs(ey) > 1e-6) CHECK(close((x / y).eval_at(p), ex / ey, 1e-6 * (1 + std::abs(ex / ey))));
    }
}

TEST_CASE("conjugation [property]") {
    auto r = rng(3);
    for (int k = 0; k < kCases; ++k) {
        Scalar x = random_scalar(r), y = random_scalar(r);
        if (k % 2) x = x / (y + Scalar(7));
        CHECK(x.conj().conj() == x);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
        Rational q(static_cast<long>(k % 11) + 1, 13);
        CHECK(close(x.conj().eval(q), std::conj(x.eval(q)), 1e-8 * (1 + std::abs(x.eval(q)))));
    }
}

TEST_CASE("lambda has modulus one and eval is a homomorphism [property]") {
    auto r = rng(4);
    for (int k = 0; k < kCases; ++k) {
        Rational q(static_cast<long>(k) + 1, 101);
        CHECK(std::abs(std::abs(Scalar::lambda_pow(1).eval(q)) - 1.0) < 1e-12);
        Scalar x = random_scalar(r), y = random_scalar(r);
        auto ex = x.eval(q), ey = y.eval(q);
        CHECK(close((x * y).eval(q), ex * ey, 1e-8 * (1 + std::abs(ex * ey))));
    }
}

TEST_CASE("specialising L = 1") {
    CHECK(S("1/2*L+1/2*L^-1").at_one() == Scalar(1));
    CHECK(S("(L)/(1+L)").at_one() == Scalar::rational(1, 2));
}

TEST_CASE("pole at the evaluation point") { CHECK_THROWS_AS(S("(1)/(1+L)").eval(Rational(1, 2)), PoleError); }
