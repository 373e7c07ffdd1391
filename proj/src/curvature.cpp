#include "ncgcurv/curvature.hpp"

namespace ncgcurv {

Tensor curvature_right(const Calculus& c, const ConnectionMap& grad, const Tensor& x) {
    Tensor g = grad(x);
    Tensor s(3);
    for (const auto& [head, y] : g.split_front(1)) {
        s += c.tensor(grad(c.frame(head[0])), y);
        s += c.tensor(c.frame(head[0]), c.exterior_d(y));
    }
    return c.anti(s, 1);
}

Tensor curvature_left(const Calculus& c, const ConnectionMap& grad, const Tensor& x) {
    Tensor g = grad(x);
    Tensor s(g.rank() + 1);
    for (const auto& [head, y] : g.split_front(1)) {
        s += c.tensor(c.frame(head[0]), grad(y));
        s -= c.tensor(c.d_frame(head[0]), y);
    }
    return c.anti(s, 0);
}

Tensor curvature(const Calculus& c, const Connection& conn, const Tensor& x) {
    ConnectionMap g = [&](const Tensor& t) { return apply(c, conn, t); };
    return conn.chirality == Chirality::Right ? curvature_right(c, g, x) : curvature_left(c, g, x);
}

Tensor curvature_tensor(const Calculus& c, const Connection& conn) {
    Tensor r(4);
    for (int j = 0; j < c.n(); ++j) {
        if (conn.chirality == Chirality::Right)
            r += c.tensor(curvature(c, conn, c.frame(j)), c.frame_dagger(j));
        else
            r += c.tensor(c.frame(j), curvature(c, conn, c.frame_dagger(j)));
    }
    return r;
}

Tensor ricci(const Calculus& c, Chirality ch, const Tensor& rt) {
    Tensor g = c.line_element();
    Tensor ric(2);
    BasisKey u = c.algebra().unit();
    if (ch == Chirality::Right) {
        for (const auto& [head, tail] : rt.split_front(2)) ric += c.rmul(Tensor::basis(head, u), c.inner_left(tail, g));
    } else {
        for (const auto& [head, tail] : rt.split_front(2)) ric += c.lmul(c.inner_right(g, Tensor::basis(head, u)), tail);
    }
    return ric.scaled(Scalar(-2));
}

Element scalar_curvature(const Calculus& c, Chirality ch, const Tensor& ric) {
    Tensor g = c.line_element();
    return ch == Chirality::Right ? c.inner_right(g, ric) : c.inner_left(ric, g);
}

std::optional<Matrix> metric_matrix(const Calculus& c) {
    Matrix m(c.n(), c.n());
    BasisKey u = c.algebra().unit();
    for (int a = 0; a < c.n(); ++a)
        for (int b = 0; b < c.n(); ++b) {
            Element e = c.g_pair(Tensor::basis({a, b}, u));
            for (const auto& [k, s] : e.terms())
                if (k != u) return std::nullopt;
            m(a, b) = e.coeff(u);
        }
    return m;
}

namespace {

std::optional<std::map<std::array<int, 4>, Scalar>> constant_coeffs(const Calculus& c, const Tensor& rt) {
    std::map<std::array<int, 4>, Scalar> out;
    for (const auto& [k, s] : rt.terms()) {
        if (k.key != c.algebra().unit()) return std::nullopt;
        out[{k.legs[0], k.legs[1], k.legs[2], k.legs[3]}] = s;
    }
    return out;
}

RiemannTable table_from(const std::map<std::array<int, 4>, Scalar>& cs) {
    RiemannTable t;
    for (const auto& [i, s] : cs) t[{i[1], i[2], i[0], i[3]}] = s * Scalar(-2);
    return t;
}

}  // namespace

std::optional<Scalar> scalar_curvature_bruteforce(const Calculus& c, const Tensor& rt) {
    auto g = metric_matrix(c);
    auto cs = constant_coeffs(c, rt);
    if (!g || !cs) return std::nullopt;
    Scalar r;
    for (const auto& [i, s] : *cs) r += s * (*g)(i[0], i[1]) * (*g)(i[2], i[3]);
    return r * Scalar(-2);
}

std::optional<RiemannTable> riemann_table(const Calculus& c, const Tensor& rt) {
    auto cs = constant_coeffs(c, rt);
    if (!cs) return std::nullopt;
    return table_from(*cs);
}

std::optional<RiemannTable> riemann_table_real(const Calculus& c, const Tensor& rt) {
    if (!c.geom().oracle.real_frame) return std::nullopt;
    auto cs = constant_coeffs(c, transform_frame_legs(c.from_mode(rt), *c.geom().oracle.real_frame));
    if (!cs) return std::nullopt;
    return table_from(*cs);
}

RiemannTable constant_curvature_table(int n) {
    RiemannTable t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    int v = (i == k && j == l) - (i == l && j == k);
                    if (v) t[{i, j, k, l}] = Scalar(v);
                }
    return t;
}

}  // namespace ncgcurv
