#include "ncgcurv/levi_civita.hpp"

#include <map>

#include "ncgcurv/sampling.hpp"

namespace ncgcurv {

const char* to_string(Chirality c) { return c == Chirality::Right ? "right" : "left"; }

Tensor grassmann_right(const Calculus& c, const Tensor& rho) {
    Tensor r(2);
    for (const auto& [k, s] : rho.terms()) r += c.tensor(c.frame(k.legs[0]), c.d_element(Element(k.key, s)));
    return r;
}

Tensor grassmann_left(const Calculus& c, const Tensor& rho) {
    Tensor r(2);
    for (int j = 0; j < c.n(); ++j) {
        Tensor fd = c.frame_dagger(j);
        Element b = c.inner_left(rho, fd);
        if (!b.is_zero()) r += c.tensor(c.d_element(b), fd);
    }
    return r;
}

Tensor apply(const Calculus& c, const Connection& conn, const Tensor& rho) {
    if (conn.chirality == Chirality::Right) return grassmann_right(c, rho) + c.alpha_right(conn.a, rho);
    return grassmann_left(c, rho) - c.alpha_left(conn.a, rho);
}

Connection conjugate(const Calculus& c, const Connection& conn) {
    Connection r = conn;
    r.chirality = conn.chirality == Chirality::Right ? Chirality::Left : Chirality::Right;
    r.a = c.dagger(conn.a);
    return r;
}

WTensors w_tensor(const Calculus& c) {
    WTensors w;
    for (int j = 0; j < c.n(); ++j) {
        w.w += c.tensor(c.d_frame(j), c.frame_dagger(j));
        w.wdag += c.tensor(c.frame(j), c.exterior_d(c.frame_dagger(j)));
    }
    return w;
}

std::vector<ProjectionBlock> projection_blocks(const Calculus& c) {
    std::vector<ProjectionBlock> out;
    for (auto& idx : c.degree_blocks(3)) {
        ProjectionBlock b;
        b.indices = idx;
        b.p = c.leg_matrix([&](const Tensor& t) { return c.psi(t, 0); }, idx);
        b.q = c.leg_matrix([&](const Tensor& t) { return c.psi(t, 1); }, idx);
        int m = static_cast<int>(idx.size());
        Matrix id = Matrix::identity(m);
        Matrix k = kernel(id.scaled(Scalar(2)) - b.p - b.q);
        b.pi_rank = k.cols();
        b.pi = projector_onto(k);
        b.direct_sum = b.pi_rank + rank(hcat(id - b.p, id - b.q)) == m;
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

// coefficient vectors of t, one per algebra key, restricted to a block
std::map<BasisKey, Matrix> block_columns(const Tensor& t, const ProjectionBlock& b) {
    std::map<std::vector<int>, int> pos;
    for (std::size_t i = 0; i < b.indices.size(); ++i) pos[b.indices[i]] = static_cast<int>(i);
    std::map<BasisKey, Matrix> cols;
    for (const auto& [k, s] : t.terms()) {
        auto it = pos.find(k.legs);
        if (it == pos.end()) continue;
        auto [ci, ins] = cols.try_emplace(k.key, static_cast<int>(b.indices.size()), 1);
        ci->second(it->second, 0) = s;
    }
    return cols;
}

std::string block_name(const Calculus& c, const ProjectionBlock& b) {
    return "degree " + to_string(c.legs_degree(b.indices.front()));
}

}  // namespace

Tensor apply_block_operator(const Calculus& c, const std::vector<ProjectionBlock>& blocks, const Tensor& t,
                            Matrix ProjectionBlock::*which) {
    Tensor r(3);
    for (const auto& b : blocks)
        for (const auto& [key, col] : block_columns(t, b)) r += c.from_block(b.indices, b.*which * col, key);
    return r;
}

Concordance concordance_check(const Calculus& c) {
    Concordance res;
    WTensors w = w_tensor(c);
    auto blocks = projection_blocks(c);
    for (const auto& b : blocks) {
        res.pi_dimension += b.pi_rank;
        res.direct_sum = res.direct_sum && b.direct_sum;
        auto wc = block_columns(w.w, b), wd = block_columns(w.wdag, b);
        if (wc.empty() && wd.empty()) continue;  // untouched by W
        int m = static_cast<int>(b.indices.size());
        Matrix id = Matrix::identity(m);
        Matrix m1 = id + b.pi - b.p * b.q, m2 = id + b.pi - b.q * b.p;
        std::map<BasisKey, bool> keys;
        for (auto& [k, v] : wc) keys[k] = true;
        for (auto& [k, v] : wd) keys[k] = true;
        for (const auto& [key, unused] : keys) {
            Matrix x = wc.count(key) ? wc.at(key) : Matrix(m, 1);
            Matrix y = wd.count(key) ? wd.at(key) : Matrix(m, 1);
            auto l = solve(m1, x + b.p * y);
            auto r = solve(m2, y + b.q * x);
            if (!l || !r) {
                res.singular_blocks.push_back(block_name(c, b));
                continue;
            }
            res.lhs += c.from_block(b.indices, *l, key);
            res.rhs += c.from_block(b.indices, *r, key);
        }
    }
    res.difference = res.lhs - res.rhs;
    res.concordant = res.singular_blocks.empty() && res.difference.is_zero();
    return res;
}

LeviCivitaSolution solve_levi_civita(const Calculus& c, const Tensor* extra_pi, std::uint64_t seed, int samples) {
    LeviCivitaSolution sol;
    sol.concordance = concordance_check(c);
    if (!sol.concordance.singular_blocks.empty())
        throw SingularBlock("singular block in the Levi-Civita solve: " + sol.concordance.singular_blocks.front());
    sol.connection.mode = c.mode();
    sol.connection.a = -sol.concordance.lhs;
    if (extra_pi && !extra_pi->is_zero()) {
        auto blocks = projection_blocks(c);
        sol.connection.a += apply_block_operator(c, blocks, *extra_pi, &ProjectionBlock::pi);
    }
    if (!c.geom().connection_offset.is_zero()) sol.connection.a += c.to_mode(c.geom().connection_offset);
    std::mt19937_64 rng(seed);
    sol.postconditions = check_connection(c, sol.connection, ThetaContext::exact(), rng, samples);
    return sol;
}

std::vector<CheckResult> check_connection(const Calculus& c, const Connection& right, const ThetaContext& ctx,
                                          std::mt19937_64& rng, int samples) {
    std::vector<CheckResult> out;
    Connection left = conjugate(c, right);

    // test one-forms: the frame, its adjoints, then random ones
    std::vector<Tensor> probes;
    for (int j = 0; j < c.n(); ++j) {
        probes.push_back(c.frame(j));
        probes.push_back(c.frame_dagger(j));
    }
    for (int s = 0; s < samples; ++s) probes.push_back(random_tensor(c, 1, rng, 2));
    auto witness = [](std::size_t i) { return "probe " + std::to_string(i); };

    {
        Tensor h(3);
        for (int j = 0; j < c.n(); ++j) {
            h += c.tensor(apply(c, right, c.frame(j)), c.frame_dagger(j));
            h += c.tensor(c.frame(j), apply(c, left, c.frame_dagger(j)));
        }
        out.push_back(ctx.zero(h) ? pass("hermitian") : fail("hermitian", "sum over frame", h.is_zero() ? "" : "nonzero"));
    }
    {
        CheckResult r = pass("torsion_free_right");
        for (std::size_t i = 0; i < probes.size() && r.passed; ++i)
            if (!ctx.zero(c.anti(apply(c, right, probes[i])) + c.exterior_d(probes[i])))
                r = fail("torsion_free_right", witness(i));
        out.push_back(r);
    }
    {
        CheckResult r = pass("torsion_free_left");
        for (std::size_t i = 0; i < probes.size() && r.passed; ++i)
            if (!ctx.zero(c.anti(apply(c, left, probes[i])) - c.exterior_d(probes[i])))
                r = fail("torsion_free_left", witness(i));
        out.push_back(r);
    }
    {
        CheckResult r = pass("sigma_bimodule");
        for (std::size_t i = 0; i < probes.size() && r.passed; ++i)
            if (!ctx.zero(c.sigma(apply(c, right, probes[i])) - apply(c, left, probes[i])))
                r = fail("sigma_bimodule", witness(i));
        out.push_back(r);
    }
    {
        CheckResult r = pass("leibniz_right"), l = pass("leibniz_left");
        for (int s = 0; s < samples; ++s) {
            Tensor rho = random_tensor(c, 1, rng, 2);
            Element a = random_element(c.algebra(), rng);
            Tensor res = apply(c, right, c.rmul(rho, a)) - c.rmul(apply(c, right, rho), a) -
                         c.tensor(rho, c.d_element(a));
            if (r.passed && !ctx.zero(res)) r = fail("leibniz_right", "sample " + std::to_string(s));
            Tensor resl = apply(c, left, c.lmul(a, rho)) - c.lmul(a, apply(c, left, rho)) -
                          c.tensor(c.d_element(a), rho);
            if (l.passed && !ctx.zero(resl)) l = fail("leibniz_left", "sample " + std::to_string(s));
        }
        out.push_back(r);
        out.push_back(l);
    }
    {
        // conjugate is -dag o grad o dag, and conjugating twice gives back the connection
        CheckResult r = pass("conjugate_connection");
        for (std::size_t i = 0; i < probes.size() && r.passed; ++i) {
            Tensor lhs = apply(c, left, probes[i]);
            Tensor rhs = -c.dagger(apply(c, right, c.dagger(probes[i])));
            if (!ctx.zero(lhs - rhs)) r = fail("conjugate_connection", witness(i));
        }
        Connection back = conjugate(c, left);
        if (r.passed && back.a != right.a) r = fail("conjugate_connection", "conjugate twice");
        out.push_back(r);
    }
    return out;
}

}  // namespace ncgcurv
