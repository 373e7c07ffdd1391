#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "ncgcurv/geometry.hpp"

namespace ncgcurv {

GeometryValidationError::GeometryValidationError(std::vector<CheckResult> f)
    : std::runtime_error([&] {
          std::string m = "geometry failed validation:";
          for (const auto& r : f) m += " " + r.name + (r.witness.empty() ? "" : " [" + r.witness + "]") + ";";
          return m;
      }()),
      failures(std::move(f)) {}

namespace {

// ---- writing

void emit_degree(YAML::Emitter& e, Degree d) { e << YAML::Flow << YAML::BeginSeq << d.n1 << d.n2 << YAML::EndSeq; }

void emit_degrees(YAML::Emitter& e, const std::vector<Degree>& ds) {
    e << YAML::Flow << YAML::BeginSeq;
    for (auto d : ds) emit_degree(e, d);
    e << YAML::EndSeq;
}

void emit_matrix(YAML::Emitter& e, const Matrix& m) {
    e << YAML::BeginSeq;
    for (int i = 0; i < m.rows(); ++i) {
        e << YAML::Flow << YAML::BeginSeq;
        for (int j = 0; j < m.cols(); ++j) e << YAML::DoubleQuoted << m(i, j).str();
        e << YAML::EndSeq;
    }
    e << YAML::EndSeq;
}

void emit_terms(YAML::Emitter& e, const AlgebraSpec& a, const Tensor& t) {
    e << YAML::BeginSeq;
    for (const auto& [k, s] : t.terms()) {
        e << YAML::Flow << YAML::BeginMap;
        e << YAML::Key << "legs" << YAML::Value << YAML::Flow << k.legs;
        e << YAML::Key << "key" << YAML::Value << YAML::DoubleQuoted << a.key_name(k.key);
        e << YAML::Key << "coeff" << YAML::Value << YAML::DoubleQuoted << s.str();
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;
}

void emit_key_table(YAML::Emitter& e, const AlgebraSpec& a, const std::map<BasisKey, Tensor>& table) {
    e << YAML::BeginSeq;
    for (const auto& [k, t] : table) {
        e << YAML::BeginMap;
        e << YAML::Key << "key" << YAML::Value << YAML::DoubleQuoted << a.key_name(k);
        e << YAML::Key << "terms" << YAML::Value;
        emit_terms(e, a, t);
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;
}

const char* kind_name(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::TrivialConstants: return "constants";
        case AlgebraKind::LaurentMonomials: return "laurent";
        case AlgebraKind::UserTable: return "table";
    }
    return "?";
}

const char* kind_name(Derivation::Kind k) {
    switch (k) {
        case Derivation::Kind::Zero: return "zero";
        case Derivation::Kind::Linear: return "linear";
        case Derivation::Kind::Table: return "table";
    }
    return "?";
}

// ---- reading

[[noreturn]] void fail_at(const YAML::Node& n, const std::string& msg) {
    auto m = n.Mark();
    throw GeometryParseError(msg, m.line + 1, m.column + 1);
}

YAML::Node need(const YAML::Node& parent, const char* key, const std::string& where) {
    YAML::Node n = parent[key];
    if (!n) fail_at(parent, "missing '" + std::string(key) + "' in " + where);
    return n;
}

template <class T>
T as(const YAML::Node& n, const std::string& what) {
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail_at(n, "expected " + what);
    }
}

Scalar scalar_at(const YAML::Node& n) {
    if (!n.IsScalar()) fail_at(n, "expected a scalar token string");
    try {
        return Scalar::parse(n.Scalar());
    } catch (const std::exception& e) {
        fail_at(n, std::string("bad scalar: ") + e.what());
    }
}

Degree degree_at(const YAML::Node& n) {
    if (!n.IsSequence() || n.size() != 2) fail_at(n, "expected a degree [n1, n2]");
    return {as<int>(n[0], "an integer"), as<int>(n[1], "an integer")};
}

std::vector<Degree> degrees_at(const YAML::Node& n) {
    if (!n.IsSequence()) fail_at(n, "expected a list of degrees");
    std::vector<Degree> out;
    for (const auto& d : n) out.push_back(degree_at(d));
    return out;
}

Matrix matrix_at(const YAML::Node& n, int rows, int cols) {
    if (!n.IsSequence() || static_cast<int>(n.size()) != rows)
        fail_at(n, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const YAML::Node r = n[i];
        if (!r.IsSequence() || static_cast<int>(r.size()) != cols)
            fail_at(r, "matrix row must have " + std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j) m(i, j) = scalar_at(r[j]);
    }
    return m;
}

BasisKey key_at(const AlgebraSpec& a, const YAML::Node& n) {
    if (!n.IsScalar()) fail_at(n, "expected an algebra basis name");
    auto k = a.parse_key(n.Scalar());
    if (!k) fail_at(n, "unknown algebra basis element '" + n.Scalar() + "'");
    return *k;
}

Tensor terms_at(const AlgebraSpec& a, const YAML::Node& n, int rank, int frame_size) {
    if (!n.IsSequence()) fail_at(n, "expected a list of terms");
    Tensor t(rank);
    for (const auto& term : n) {
        if (!term.IsMap()) fail_at(term, "expected a term {legs, key, coeff}");
        YAML::Node legs = need(term, "legs", "term");
        if (!legs.IsSequence() || static_cast<int>(legs.size()) != rank)
            fail_at(legs, "expected " + std::to_string(rank) + " frame indices");
        std::vector<int> ls;
        for (const auto& l : legs) {
            int v = as<int>(l, "a frame index");
            if (v < 0 || v >= frame_size) fail_at(l, "frame index " + std::to_string(v) + " out of range");
            ls.push_back(v);
        }
        BasisKey k = term["key"] ? key_at(a, term["key"]) : a.unit();
        t.add(ls, k, scalar_at(need(term, "coeff", "term")));
    }
    return t;
}

std::map<BasisKey, Tensor> key_table_at(const AlgebraSpec& a, const YAML::Node& n, int frame_size) {
    if (!n.IsSequence()) fail_at(n, "expected a list of {key, terms}");
    std::map<BasisKey, Tensor> out;
    for (const auto& e : n) {
        BasisKey k = key_at(a, need(e, "key", "derivation entry"));
        if (out.count(k)) fail_at(e, "duplicate derivation entry");
        out[k] = terms_at(a, need(e, "terms", "derivation entry"), 1, frame_size);
    }
    return out;
}

AlgebraSpec algebra_at(const YAML::Node& n) {
    std::string kind = as<std::string>(need(n, "kind", "algebra"), "an algebra kind");
    if (kind == "constants") return AlgebraSpec::constants();
    if (kind == "laurent") return AlgebraSpec::laurent();
    if (kind != "table") fail_at(n["kind"], "algebra kind must be constants, laurent or table");
    AlgebraSpec a;
    a.kind = AlgebraKind::UserTable;
    YAML::Node basis = need(n, "basis", "algebra");
    if (!basis.IsSequence() || basis.size() == 0) fail_at(basis, "basis must be a nonempty list");
    for (const auto& b : basis) {
        a.names.push_back(as<std::string>(need(b, "name", "basis element"), "a name"));
        a.degrees.push_back(degree_at(need(b, "degree", "basis element")));
    }
    for (std::size_t i = 0; i < a.names.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (a.names[i] == a.names[j]) fail_at(basis[i], "duplicate basis name '" + a.names[i] + "'");
    a.unit_index = static_cast<int>(key_at(a, need(n, "unit", "algebra")).a);
    if (YAML::Node ps = n["products"]) {
        for (const auto& p : ps) {
            int l = key_at(a, need(p, "left", "product")).a, r = key_at(a, need(p, "right", "product")).a;
            std::vector<std::pair<int, Scalar>> res;
            for (const auto& t : need(p, "result", "product")) {
                if (!t.IsSequence() || t.size() != 2) fail_at(t, "product result entries are [name, coeff]");
                res.emplace_back(key_at(a, t[0]).a, scalar_at(t[1]));
            }
            if (a.products.count({l, r})) fail_at(p, "duplicate product entry");
            a.products[{l, r}] = res;
        }
    }
    YAML::Node st = need(n, "star", "algebra");
    if (!st.IsSequence() || st.size() != a.names.size()) fail_at(st, "star needs one entry per basis element");
    for (const auto& s : st) {
        if (!s.IsSequence() || s.size() != 2) fail_at(s, "star entries are [name, coeff]");
        a.stars.emplace_back(key_at(a, s[0]).a, scalar_at(s[1]));
    }
    return a;
}

}  // namespace

std::string serialize_geometry(const GeometrySpec& g) {
    const AlgebraSpec& a = g.algebra;
    YAML::Emitter e;
    e << YAML::BeginMap;

    e << YAML::Key << "meta" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << g.name;
    e << YAML::Key << "dimension" << YAML::Value << g.dimension;
    e << YAML::Key << "braiding" << YAML::Value << (g.braiding == Braiding::Theta ? "theta" : "theta_flipped");
    const Oracle& o = g.oracle;
    if (o.r || o.ricci_factor || o.residue || o.real_frame) {
        e << YAML::Key << "oracle" << YAML::Value << YAML::BeginMap;
        if (o.r) e << YAML::Key << "r" << YAML::Value << YAML::DoubleQuoted << o.r->str();
        if (o.ricci_factor) e << YAML::Key << "ricci_factor" << YAML::Value << YAML::DoubleQuoted << o.ricci_factor->str();
        if (o.residue) e << YAML::Key << "residue" << YAML::Value << YAML::DoubleQuoted << o.residue->str();
        if (o.real_frame) {
            e << YAML::Key << "real_frame" << YAML::Value;
            emit_matrix(e, *o.real_frame);
        }
        e << YAML::EndMap;
    }
    e << YAML::EndMap;

    e << YAML::Key << "algebra" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "kind" << YAML::Value << kind_name(a.kind);
    if (a.kind == AlgebraKind::UserTable) {
        e << YAML::Key << "basis" << YAML::Value << YAML::BeginSeq;
        for (std::size_t i = 0; i < a.names.size(); ++i) {
            e << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << a.names[i]
              << YAML::Key << "degree" << YAML::Value;
            emit_degree(e, a.degrees[i]);
            e << YAML::EndMap;
        }
        e << YAML::EndSeq;
        e << YAML::Key << "unit" << YAML::Value << YAML::DoubleQuoted << a.names.at(a.unit_index);
        e << YAML::Key << "products" << YAML::Value << YAML::BeginSeq;
        for (const auto& [lr, res] : a.products) {
            e << YAML::Flow << YAML::BeginMap;
            e << YAML::Key << "left" << YAML::Value << YAML::DoubleQuoted << a.names[lr.first];
            e << YAML::Key << "right" << YAML::Value << YAML::DoubleQuoted << a.names[lr.second];
            e << YAML::Key << "result" << YAML::Value << YAML::BeginSeq;
            for (const auto& [k, s] : res)
                e << YAML::BeginSeq << YAML::DoubleQuoted << a.names[k] << YAML::DoubleQuoted << s.str() << YAML::EndSeq;
            e << YAML::EndSeq << YAML::EndMap;
        }
        e << YAML::EndSeq;
        e << YAML::Key << "star" << YAML::Value << YAML::BeginSeq;
        for (const auto& [k, s] : a.stars)
            e << YAML::Flow << YAML::BeginSeq << YAML::DoubleQuoted << a.names[k] << YAML::DoubleQuoted << s.str()
              << YAML::EndSeq;
        e << YAML::EndSeq;
    }
    e << YAML::EndMap;

    e << YAML::Key << "frame" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "size" << YAML::Value << g.frame.n;
    e << YAML::Key << "degrees" << YAML::Value;
    emit_degrees(e, g.frame.degrees);
    e << YAML::Key << "star" << YAML::Value;
    emit_matrix(e, g.frame.star);
    if (g.frame.gram.rows() != 0) {
        e << YAML::Key << "gram" << YAML::Value;
        emit_matrix(e, g.frame.gram);
    }
    e << YAML::EndMap;

    e << YAML::Key << "differential" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "frame" << YAML::Value << YAML::BeginSeq;
    for (int j = 0; j < g.frame.n; ++j) {
        e << YAML::BeginMap << YAML::Key << "index" << YAML::Value << j << YAML::Key << "terms" << YAML::Value;
        emit_terms(e, a, g.frame.d[j]);
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;
    const Derivation& d = g.derivation;
    e << YAML::Key << "derivation" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "kind" << YAML::Value << kind_name(d.kind);
    if (d.kind == Derivation::Kind::Linear) {
        e << YAML::Key << "linear" << YAML::Value << YAML::BeginSeq;
        for (const auto& [al, be] : d.linear)
            e << YAML::Flow << YAML::BeginSeq << YAML::DoubleQuoted << al.str() << YAML::DoubleQuoted << be.str()
              << YAML::EndSeq;
        e << YAML::EndSeq;
    }
    if (d.kind == Derivation::Kind::Table) {
        e << YAML::Key << "table" << YAML::Value;
        emit_key_table(e, a, d.table);
    }
    if (!d.overrides.empty()) {
        e << YAML::Key << "overrides" << YAML::Value;
        emit_key_table(e, a, d.overrides);
    }
    e << YAML::EndMap;
    e << YAML::EndMap;

    if (g.dirac.s > 0) {
        e << YAML::Key << "clifford" << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "size" << YAML::Value << g.dirac.s;
        e << YAML::Key << "degrees" << YAML::Value;
        emit_degrees(e, g.dirac.degrees);
        e << YAML::Key << "gamma" << YAML::Value << YAML::BeginSeq;
        for (const auto& m : g.dirac.gamma) emit_matrix(e, m);
        e << YAML::EndSeq << YAML::EndMap;
        e << YAML::Key << "spin_connection" << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "gamma" << YAML::Value << YAML::BeginSeq;
        for (const auto& m : g.dirac.spin) emit_matrix(e, m);
        e << YAML::EndSeq << YAML::EndMap;
    }

    if (!g.connection_offset.is_zero()) {
        e << YAML::Key << "connection_offset" << YAML::Value << YAML::BeginMap << YAML::Key << "terms" << YAML::Value;
        emit_terms(e, a, g.connection_offset);
        e << YAML::EndMap;
    }

    e << YAML::Key << "functional" << YAML::Value << g.functional;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

GeometrySpec parse_geometry(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& ex) {
        throw GeometryParseError(ex.msg, ex.mark.line + 1, ex.mark.column + 1);
    }
    if (!root.IsMap()) throw GeometryParseError("top level must be a mapping", 1, 1);

    GeometrySpec g;
    YAML::Node meta = need(root, "meta", "document");
    g.name = as<std::string>(need(meta, "name", "meta"), "a name");
    g.dimension = as<int>(need(meta, "dimension", "meta"), "an integer dimension");
    if (YAML::Node b = meta["braiding"]) {
        std::string s = as<std::string>(b, "a braiding name");
        if (s == "theta") g.braiding = Braiding::Theta;
        else if (s == "theta_flipped") g.braiding = Braiding::Flipped;
        else fail_at(b, "braiding must be theta or theta_flipped");
    }
    if (YAML::Node o = meta["oracle"]) {
        if (o["r"]) g.oracle.r = scalar_at(o["r"]);
        if (o["ricci_factor"]) g.oracle.ricci_factor = scalar_at(o["ricci_factor"]);
        if (o["residue"]) g.oracle.residue = scalar_at(o["residue"]);
        // size checked once the frame is known
    }

    g.algebra = algebra_at(need(root, "algebra", "document"));

    YAML::Node fr = need(root, "frame", "document");
    g.frame.n = as<int>(need(fr, "size", "frame"), "a frame size");
    if (g.frame.n <= 0) fail_at(fr["size"], "frame size must be positive");
    g.frame.degrees = degrees_at(need(fr, "degrees", "frame"));
    if (static_cast<int>(g.frame.degrees.size()) != g.frame.n) fail_at(fr["degrees"], "one degree per frame element");
    g.frame.star = matrix_at(need(fr, "star", "frame"), g.frame.n, g.frame.n);
    if (fr["gram"]) g.frame.gram = matrix_at(fr["gram"], g.frame.n, g.frame.n);
    if (YAML::Node o = meta["oracle"]; o && o["real_frame"])
        g.oracle.real_frame = matrix_at(o["real_frame"], g.frame.n, g.frame.n);

    YAML::Node df = need(root, "differential", "document");
    YAML::Node dfr = need(df, "frame", "differential");
    if (!dfr.IsSequence()) fail_at(dfr, "expected one entry per frame element");
    g.frame.d.assign(g.frame.n, Tensor(2));
    std::vector<bool> seen(g.frame.n, false);
    for (const auto& entry : dfr) {
        YAML::Node ix = need(entry, "index", "differential entry");
        int j = as<int>(ix, "a frame index");
        if (j < 0 || j >= g.frame.n) fail_at(ix, "frame index " + std::to_string(j) + " out of range");
        if (seen[j]) fail_at(ix, "duplicate differential for frame index " + std::to_string(j));
        seen[j] = true;
        g.frame.d[j] = terms_at(g.algebra, need(entry, "terms", "differential entry"), 2, g.frame.n);
    }
    YAML::Node dv = need(df, "derivation", "differential");
    std::string kind = as<std::string>(need(dv, "kind", "derivation"), "a derivation kind");
    if (kind == "zero") g.derivation.kind = Derivation::Kind::Zero;
    else if (kind == "linear") {
        g.derivation.kind = Derivation::Kind::Linear;
        YAML::Node lin = need(dv, "linear", "derivation");
        if (!lin.IsSequence() || static_cast<int>(lin.size()) != g.frame.n)
            fail_at(lin, "linear derivation needs one [alpha, beta] per frame element");
        for (const auto& p : lin) {
            if (!p.IsSequence() || p.size() != 2) fail_at(p, "expected [alpha, beta]");
            g.derivation.linear.emplace_back(scalar_at(p[0]), scalar_at(p[1]));
        }
    } else if (kind == "table") {
        g.derivation.kind = Derivation::Kind::Table;
        g.derivation.table = key_table_at(g.algebra, need(dv, "table", "derivation"), g.frame.n);
    } else
        fail_at(dv["kind"], "derivation kind must be zero, linear or table");
    if (YAML::Node ov = dv["overrides"]) g.derivation.overrides = key_table_at(g.algebra, ov, g.frame.n);

    if (YAML::Node cl = root["clifford"]) {
        g.dirac.s = as<int>(need(cl, "size", "clifford"), "a spinor rank");
        if (g.dirac.s <= 0) fail_at(cl["size"], "spinor rank must be positive");
        g.dirac.degrees = degrees_at(need(cl, "degrees", "clifford"));
        if (static_cast<int>(g.dirac.degrees.size()) != g.dirac.s) fail_at(cl["degrees"], "one degree per spinor basis element");
        YAML::Node gm = need(cl, "gamma", "clifford");
        if (!gm.IsSequence() || static_cast<int>(gm.size()) != g.frame.n) fail_at(gm, "one gamma matrix per frame element");
        for (const auto& m : gm) g.dirac.gamma.push_back(matrix_at(m, g.dirac.s, g.dirac.s));
        YAML::Node sp = need(need(root, "spin_connection", "document (clifford given)"), "gamma", "spin_connection");
        if (!sp.IsSequence() || static_cast<int>(sp.size()) != g.frame.n)
            fail_at(sp, "one spin connection matrix per frame element");
        for (const auto& m : sp) g.dirac.spin.push_back(matrix_at(m, g.dirac.s, g.dirac.s));
    } else if (root["spin_connection"]) {
        fail_at(root["spin_connection"], "spin_connection given without clifford");
    }

    if (YAML::Node off = root["connection_offset"])
        g.connection_offset = terms_at(g.algebra, need(off, "terms", "connection_offset"), 3, g.frame.n);

    if (YAML::Node f = root["functional"]) g.functional = as<std::string>(f, "a functional name");
    return g;
}

GeometrySpec load_geometry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open geometry file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    GeometrySpec g = parse_geometry(ss.str());
    std::vector<CheckResult> bad;
    for (auto& r : validate_geometry(g))
        if (!r.passed) bad.push_back(std::move(r));
    if (!bad.empty()) throw GeometryValidationError(std::move(bad));
    return g;
}

GeometrySpec resolve_geometry(const std::string& name_or_path) {
    if (auto b = builtin(name_or_path)) return *b;
    return load_geometry(name_or_path);
}

}  // namespace ncgcurv
