// Z^2-graded *-algebras by structure constants, deformed product/star, derivation data.
#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ncgcurv/check.hpp"
#include "ncgcurv/tensor.hpp"

namespace ncgcurv {

enum class Mode { Classical, Deformed };
const char* to_string(Mode m);

enum class AlgebraKind { TrivialConstants, LaurentMonomials, UserTable };

// exponent of Theta(s,t) = L^{n2(s)n1(t) - n2(t)n1(s)}
inline int theta_exponent(Degree s, Degree t) { return s.n2 * t.n1 - t.n2 * s.n1; }
Scalar theta_cocycle(Degree s, Degree t);
// exponent of the deformed-product twist S*T = L^{n2(S)n1(T)} ST
inline int twist_exponent(Degree s, Degree t) { return s.n2 * t.n1; }

using KeyTerms = std::vector<std::pair<BasisKey, Scalar>>;

class AlgebraSpec {
public:
    AlgebraKind kind = AlgebraKind::TrivialConstants;

    // UserTable data, indexed by BasisKey::a
    std::vector<std::string> names;
    std::vector<Degree> degrees;
    int unit_index = 0;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> products;
    std::vector<std::pair<int, Scalar>> stars;  // e_a^* = s e_b

    static AlgebraSpec constants();
    static AlgebraSpec laurent();

    bool operator==(const AlgebraSpec& o) const;

    Degree degree(BasisKey k) const;
    BasisKey unit() const;
    bool valid(BasisKey k) const;
    KeyTerms product(BasisKey x, BasisKey y) const;   // classical
    std::pair<BasisKey, Scalar> star(BasisKey k) const;  // classical
    std::string key_name(BasisKey k) const;
    std::optional<BasisKey> parse_key(const std::string& s) const;
    // keys used for random samples; Laurent keys in the box |m|,|n| <= radius
    std::vector<BasisKey> sample_keys(int radius = 2) const;
};

Element alg_mul(const AlgebraSpec& spec, const Element& a, const Element& b, Mode mode);
Element alg_star(const AlgebraSpec& spec, const Element& a, Mode mode);
Element alg_unit(const AlgebraSpec& spec);

// derivation [D, .] on basis keys, output one-forms in right-standard frame coordinates
struct Derivation {
    enum class Kind { Zero, Linear, Table };
    Kind kind = Kind::Zero;
    // Linear: d(U^m V^n) = sum_j omega_j (alpha_j m + beta_j n) U^m V^n
    std::vector<std::pair<Scalar, Scalar>> linear;
    std::map<BasisKey, Tensor> table;
    // explicit replacements, consulted first
    std::map<BasisKey, Tensor> overrides;

    Tensor apply(const AlgebraSpec& spec, BasisKey k) const;
    bool operator==(const Derivation& o) const {
        return kind == o.kind && linear == o.linear && table == o.table && overrides == o.overrides;
    }
};

// d(ab) = d(a)b + a d(b) on random basis pairs, classical coordinates
CheckResult check_leibniz(const AlgebraSpec& spec, const Derivation& d, int samples, std::mt19937_64& rng);

}  // namespace ncgcurv
