#include "ncgcurv/sampling.hpp"

namespace ncgcurv {

Scalar random_scalar(std::mt19937_64& rng, bool with_lambda) {
    std::uniform_int_distribution<int> small(-4, 4), den(1, 4), ex(-2, 2), coin(0, 3);
    auto rat = [&] { return Rational(small(rng), den(rng)); };
    // draws sequenced explicitly so a seed means the same thing on every compiler
    Rational re = rat();
    Rational im = coin(rng) == 0 ? rat() : Rational(0);
    Rational r2 = coin(rng) == 0 ? rat() : Rational(0);
    Coeff c(Gauss(re, im), Gauss(r2));
    if (c.is_zero()) c = Coeff(1);
    Scalar s(c);
    if (with_lambda && coin(rng) == 0) s *= Scalar::lambda_pow(ex(rng));
    return s;
}

Degree random_degree(std::mt19937_64& rng, int radius) {
    std::uniform_int_distribution<int> d(-radius, radius);
    int a = d(rng);
    return {a, d(rng)};
}

BasisKey random_key(const AlgebraSpec& spec, std::mt19937_64& rng) {
    auto keys = spec.sample_keys(2);
    std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
    return keys[pick(rng)];
}

Element random_element(const AlgebraSpec& spec, std::mt19937_64& rng, int terms) {
    Element e;
    for (int i = 0; i < terms; ++i) {
        BasisKey k = random_key(spec, rng);
        e.add(k, random_scalar(rng));
    }
    if (e.is_zero()) e.add(spec.unit(), Scalar(1));
    return e;
}

Tensor random_tensor(const Calculus& c, int rank, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<int> leg(0, c.n() - 1);
    Tensor t(rank);
    for (int i = 0; i < terms; ++i) {
        std::vector<int> legs(rank);
        for (auto& l : legs) l = leg(rng);
        BasisKey k = random_key(c.algebra(), rng);
        t.add(legs, k, random_scalar(rng));
    }
    return t;
}

Tensor random_spinor(const Calculus& c, std::mt19937_64& rng, int terms, int forms) {
    std::uniform_int_distribution<int> leg(0, c.n() - 1), sp(0, c.spinor_rank() - 1);
    Tensor t(forms + 1);
    for (int i = 0; i < terms; ++i) {
        std::vector<int> legs(forms);
        for (auto& l : legs) l = leg(rng);
        legs.push_back(spinor_leg(sp(rng)));
        BasisKey k = random_key(c.algebra(), rng);
        t.add(legs, k, random_scalar(rng));
    }
    return t;
}

}  // namespace ncgcurv
