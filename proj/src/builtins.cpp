#include "ncgcurv/geometry.hpp"

namespace ncgcurv {

namespace {

Matrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    int r = static_cast<int>(rows.size()), c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const char* s : row) m(i, j++) = Scalar::parse(s);
        ++i;
    }
    return m;
}

Tensor two(std::initializer_list<std::tuple<int, int, const char*>> terms) {
    Tensor t(2);
    for (const auto& [a, b, s] : terms) t.add({a, b}, BasisKey{}, Scalar::parse(s));
    return t;
}

}  // namespace

GeometrySpec builtin_torus() {
    GeometrySpec g;
    g.name = "torus";
    g.dimension = 2;
    g.algebra = AlgebraSpec::laurent();
    g.derivation.kind = Derivation::Kind::Linear;
    g.derivation.linear = {{Scalar::i(), Scalar(0)}, {Scalar(0), Scalar::i()}};

    g.frame.n = 2;
    g.frame.degrees = {{}, {}};
    g.frame.star = Matrix::identity(2).scaled(Scalar(-1));
    g.frame.d = {Tensor(2), Tensor(2)};

    g.dirac.s = 2;
    g.dirac.degrees = {{}, {}};
    // c(omega_j) = -i sigma_j
    g.dirac.gamma = {mat({{"0", "-i"}, {"-i", "0"}}), mat({{"0", "-1"}, {"1", "0"}})};
    g.dirac.spin = {Matrix(2, 2), Matrix(2, 2)};

    g.oracle.r = Scalar(0);
    g.oracle.ricci_factor = Scalar(0);
    g.oracle.residue = Scalar(0);
    return g;
}

// f+ = (e1 + i e2)/r2, f- = (e1 - i e2)/r2, e3, with de^a = -eps_abc e^b (x) e^c
GeometrySpec builtin_sphere3() {
    GeometrySpec g;
    g.name = "sphere3";
    g.dimension = 3;
    g.algebra = AlgebraSpec::constants();
    g.derivation.kind = Derivation::Kind::Zero;

    g.frame.n = 3;
    g.frame.degrees = {{1, -1}, {-1, 1}, {0, 0}};
    g.frame.star = mat({{"0", "-1", "0"}, {"-1", "0", "0"}, {"0", "0", "-1"}});
    g.frame.d = {
        two({{0, 2, "i"}, {2, 0, "-i"}}),
        two({{1, 2, "-i"}, {2, 1, "i"}}),
        two({{0, 1, "-i"}, {1, 0, "i"}}),
    };

    g.dirac.s = 2;
    g.dirac.degrees = {{1, -1}, {0, 0}};
    Matrix cp = mat({{"0", "-i*r2"}, {"0", "0"}});
    Matrix cm = mat({{"0", "0"}, {"-i*r2", "0"}});
    Matrix c3 = mat({{"-i", "0"}, {"0", "i"}});
    g.dirac.gamma = {cp, cm, c3};
    Scalar h = Scalar::rational(1, 2);
    g.dirac.spin = {cm.scaled(h), cp.scaled(h), c3.scaled(h)};

    g.oracle.r = Scalar(6);
    g.oracle.ricci_factor = Scalar(2);
    g.oracle.residue = Scalar::rational(3, 2);
    g.oracle.real_frame = mat({{"1/2*r2", "1/2*r2", "0"}, {"1/2*i*r2", "-1/2*i*r2", "0"}, {"0", "0", "1"}});
    return g;
}

GeometrySpec builtin_sphere3_real() {
    GeometrySpec c = builtin_sphere3();
    Matrix u = *inverse(*c.oracle.real_frame);
    GeometrySpec g = rotate_frame(c, u, {{}, {}, {}}, "sphere3_real");
    g.dirac.degrees = {{}, {}};
    return g;
}

std::vector<std::string> builtin_names() { return {"torus", "sphere3", "sphere3_real"}; }

std::optional<GeometrySpec> builtin(const std::string& name) {
    if (name == "torus") return builtin_torus();
    if (name == "sphere3") return builtin_sphere3();
    if (name == "sphere3_real") return builtin_sphere3_real();
    return std::nullopt;
}

Tensor transform_frame_legs(const Tensor& t, const Matrix& m) {
    Tensor out(t.rank());
    for (const auto& [tk, c] : t.terms()) {
        // expand one leg at a time
        std::vector<std::pair<std::vector<int>, Scalar>> partial{{{}, c}};
        for (int leg : tk.legs) {
            std::vector<std::pair<std::vector<int>, Scalar>> next;
            for (auto& [legs, s] : partial) {
                if (is_spinor_leg(leg)) {
                    auto l = legs;
                    l.push_back(leg);
                    next.emplace_back(std::move(l), s);
                    continue;
                }
                for (int k = 0; k < m.rows(); ++k) {
                    if (m(k, leg).is_zero()) continue;
                    auto l = legs;
                    l.push_back(k);
                    next.emplace_back(std::move(l), s * m(k, leg));
                }
            }
            partial = std::move(next);
        }
        for (auto& [legs, s] : partial) out.add(legs, tk.key, s);
    }
    return out;
}

GeometrySpec rotate_frame(const GeometrySpec& g, const Matrix& u, const std::vector<Degree>& new_degrees,
                          const std::string& new_name) {
    auto ui = inverse(u);
    if (!ui) throw std::invalid_argument("rotate_frame: singular matrix");
    const int n = g.frame.n;
    GeometrySpec r = g;
    r.name = new_name;
    r.frame.degrees = new_degrees;
    r.frame.star = *ui * g.frame.star * u.conjugate();
    for (int j = 0; j < n; ++j) {
        Tensor dj(2);
        for (int k = 0; k < n; ++k)
            if (!u(k, j).is_zero()) dj += g.frame.d[k].scaled(u(k, j));
        r.frame.d[j] = transform_frame_legs(dj, *ui);
    }
    if (g.frame.gram.rows() != 0) r.frame.gram = u.adjoint() * g.frame.gram * u;

    auto one_forms = [&](const Tensor& t) { return transform_frame_legs(t, *ui); };
    if (g.derivation.kind == Derivation::Kind::Linear) {
        for (int m = 0; m < n; ++m) {
            Scalar a, b;
            for (int j = 0; j < n; ++j) {
                a += (*ui)(m, j) * g.derivation.linear[j].first;
                b += (*ui)(m, j) * g.derivation.linear[j].second;
            }
            r.derivation.linear[m] = {a, b};
        }
    }
    for (auto& [k, t] : r.derivation.table) t = one_forms(t);
    for (auto& [k, t] : r.derivation.overrides) t = one_forms(t);

    for (int j = 0; j < n; ++j) {
        Matrix gj(g.dirac.s, g.dirac.s), sj(g.dirac.s, g.dirac.s);
        for (int k = 0; k < n; ++k) {
            if (!u(k, j).is_zero()) gj = gj + g.dirac.gamma[k].scaled(u(k, j));
            if (!(*ui)(j, k).is_zero()) sj = sj + g.dirac.spin[k].scaled((*ui)(j, k));
        }
        r.dirac.gamma[j] = gj;
        r.dirac.spin[j] = sj;
    }
    if (g.oracle.real_frame) r.oracle.real_frame = *g.oracle.real_frame * u;
    return r;
}

}  // namespace ncgcurv
