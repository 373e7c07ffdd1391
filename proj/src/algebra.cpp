#include "ncgcurv/algebra.hpp"

#include <regex>
#include <stdexcept>

namespace ncgcurv {

const char* to_string(Mode m) { return m == Mode::Classical ? "classical" : "deformed"; }

Scalar theta_cocycle(Degree s, Degree t) { return Scalar::lambda_pow(theta_exponent(s, t)); }

bool all_passed(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return false;
    return true;
}

bool ThetaContext::zero(const Scalar& s) const {
    if (symbolic) return s.is_zero();
    return std::abs(s.eval(q)) <= tol;
}

bool ThetaContext::zero(const Element& e) const {
    for (const auto& [k, c] : e.terms())
        if (!zero(c)) return false;
    return true;
}

bool ThetaContext::zero(const Tensor& t) const {
    for (const auto& [k, c] : t.terms())
        if (!zero(c)) return false;
    return true;
}

std::string ThetaContext::describe() const { return symbolic ? "symbolic" : "numeric:" + q.get_str(); }

// ---- AlgebraSpec

AlgebraSpec AlgebraSpec::constants() { return {}; }

AlgebraSpec AlgebraSpec::laurent() {
    AlgebraSpec s;
    s.kind = AlgebraKind::LaurentMonomials;
    return s;
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
    return kind == o.kind && names == o.names && degrees == o.degrees && unit_index == o.unit_index &&
           products == o.products && stars == o.stars;
}

Degree AlgebraSpec::degree(BasisKey k) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants: return {};
        case AlgebraKind::LaurentMonomials: return {k.a, k.b};
        case AlgebraKind::UserTable: return degrees.at(k.a);
    }
    return {};
}

BasisKey AlgebraSpec::unit() const { return kind == AlgebraKind::UserTable ? BasisKey{unit_index, 0} : BasisKey{}; }

bool AlgebraSpec::valid(BasisKey k) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants: return k == BasisKey{};
        case AlgebraKind::LaurentMonomials: return true;
        case AlgebraKind::UserTable: return k.b == 0 && k.a >= 0 && k.a < static_cast<int>(names.size());
    }
    return false;
}

KeyTerms AlgebraSpec::product(BasisKey x, BasisKey y) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants: return {{BasisKey{}, Scalar(1)}};
        case AlgebraKind::LaurentMonomials: return {{BasisKey{x.a + y.a, x.b + y.b}, Scalar(1)}};
        case AlgebraKind::UserTable: {
            KeyTerms out;
            if (x.a == unit_index) return {{y, Scalar(1)}};
            if (y.a == unit_index) return {{x, Scalar(1)}};
            auto it = products.find({x.a, y.a});
            if (it == products.end()) return out;
            for (const auto& [k, c] : it->second) out.emplace_back(BasisKey{k, 0}, c);
            return out;
        }
    }
    return {};
}

std::pair<BasisKey, Scalar> AlgebraSpec::star(BasisKey k) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants: return {BasisKey{}, Scalar(1)};
        case AlgebraKind::LaurentMonomials: return {BasisKey{-k.a, -k.b}, Scalar(1)};
        case AlgebraKind::UserTable: {
            const auto& [b, c] = stars.at(k.a);
            return {BasisKey{b, 0}, c};
        }
    }
    return {};
}

std::string AlgebraSpec::key_name(BasisKey k) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants: return "1";
        case AlgebraKind::LaurentMonomials: {
            if (k.a == 0 && k.b == 0) return "1";
            std::string s;
            if (k.a) s = "U^" + std::to_string(k.a);
            if (k.b) s += (s.empty() ? "" : "*") + std::string("V^") + std::to_string(k.b);
            return s;
        }
        case AlgebraKind::UserTable: return names.at(k.a);
    }
    return "?";
}

std::optional<BasisKey> AlgebraSpec::parse_key(const std::string& s) const {
    switch (kind) {
        case AlgebraKind::TrivialConstants:
            if (s == "1") return BasisKey{};
            return std::nullopt;
        case AlgebraKind::LaurentMonomials: {
            if (s == "1") return BasisKey{};
            static const std::regex re(R"(^\s*(?:U(?:\^(-?\d+))?)?\s*\*?\s*(?:V(?:\^(-?\d+))?)?\s*$)");
            std::smatch m;
            if (!std::regex_match(s, m, re) || s.find_first_of("UV") == std::string::npos) return std::nullopt;
            BasisKey k;
            bool has_u = s.find('U') != std::string::npos, has_v = s.find('V') != std::string::npos;
            if (has_u) k.a = m[1].matched ? std::stoi(m[1].str()) : 1;
            if (has_v) k.b = m[2].matched ? std::stoi(m[2].str()) : 1;
            return k;
        }
        case AlgebraKind::UserTable:
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == s) return BasisKey{static_cast<int>(i), 0};
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<BasisKey> AlgebraSpec::sample_keys(int radius) const {
    std::vector<BasisKey> ks;
    switch (kind) {
        case AlgebraKind::TrivialConstants: ks.push_back({}); break;
        case AlgebraKind::LaurentMonomials:
            for (int m = -radius; m <= radius; ++m)
                for (int n = -radius; n <= radius; ++n) ks.push_back({m, n});
            break;
        case AlgebraKind::UserTable:
            for (std::size_t i = 0; i < names.size(); ++i) ks.push_back({static_cast<int>(i), 0});
            break;
    }
    return ks;
}

Element alg_unit(const AlgebraSpec& spec) { return Element(spec.unit(), Scalar(1)); }

Element alg_mul(const AlgebraSpec& spec, const Element& a, const Element& b, Mode mode) {
    Element r;
    for (const auto& [ka, ca] : a.terms()) {
        Degree da = spec.degree(ka);
        for (const auto& [kb, cb] : b.terms()) {
            Scalar c = ca * cb;
            if (mode == Mode::Deformed) {
                int e = twist_exponent(da, spec.degree(kb));
                if (e) c *= Scalar::lambda_pow(e);
            }
            for (const auto& [k, s] : spec.product(ka, kb)) r.add(k, c * s);
        }
    }
    return r;
}

Element alg_star(const AlgebraSpec& spec, const Element& a, Mode mode) {
    Element r;
    for (const auto& [k, c] : a.terms()) {
        auto [ks, s] = spec.star(k);
        Scalar v = c.conj() * s;
        if (mode == Mode::Deformed) {
            Degree d = spec.degree(k);
            if (int e = d.n1 * d.n2; e != 0) v *= Scalar::lambda_pow(e);
        }
        r.add(ks, v);
    }
    return r;
}

// ---- Derivation

Tensor Derivation::apply(const AlgebraSpec& spec, BasisKey k) const {
    if (auto it = overrides.find(k); it != overrides.end()) return it->second;
    Tensor t(1);
    switch (kind) {
        case Kind::Zero: break;
        case Kind::Linear: {
            Degree d = spec.degree(k);
            for (std::size_t j = 0; j < linear.size(); ++j) {
                Scalar c = linear[j].first * Scalar(d.n1) + linear[j].second * Scalar(d.n2);
                t.add({static_cast<int>(j)}, k, c);
            }
            break;
        }
        case Kind::Table:
            if (auto it = table.find(k); it != table.end()) t = it->second;
            break;
    }
    return t;
}

namespace {

// one-form (right-standard) times algebra element on the right, classical
Tensor rmul_classical(const AlgebraSpec& spec, const Tensor& w, BasisKey b) {
    Tensor r(1);
    for (const auto& [tk, c] : w.terms())
        for (const auto& [k, s] : spec.product(tk.key, b)) r.add(tk.legs, k, c * s);
    return r;
}

Tensor lmul_classical(const AlgebraSpec& spec, BasisKey a, const Tensor& w) {
    Tensor r(1);
    for (const auto& [tk, c] : w.terms())
        for (const auto& [k, s] : spec.product(a, tk.key)) r.add(tk.legs, k, c * s);
    return r;
}

}  // namespace

CheckResult check_leibniz(const AlgebraSpec& spec, const Derivation& d, int samples, std::mt19937_64& rng) {
    const std::string name = "derivation_leibniz";
    auto keys = spec.sample_keys(2);
    Tensor du = d.apply(spec, spec.unit());
    if (!du.is_zero()) return fail(name, "d(" + spec.key_name(spec.unit()) + ") != 0");
    // the torus-style corruption lives on small keys, so always include every pair of
    // generators before the random ones
    std::vector<std::pair<BasisKey, BasisKey>> pairs;
    if (spec.kind == AlgebraKind::LaurentMonomials) {
        std::vector<BasisKey> gens{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (auto x : gens)
            for (auto y : gens) pairs.emplace_back(x, y);
    }
    std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
    for (int s = 0; s < samples; ++s) pairs.emplace_back(keys[pick(rng)], keys[pick(rng)]);
    for (const auto& [x, y] : pairs) {
        Tensor lhs(1);
        for (const auto& [k, c] : spec.product(x, y)) lhs += d.apply(spec, k).scaled(c);
        Tensor rhs = rmul_classical(spec, d.apply(spec, x), y) + lmul_classical(spec, x, d.apply(spec, y));
        if (lhs != rhs) return fail(name, "(" + spec.key_name(x) + "," + spec.key_name(y) + ")");
    }
    return pass(name, std::to_string(pairs.size()) + " basis pairs");
}

}  // namespace ncgcurv
