#include "ncgcurv/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include "ncgcurv/deformation.hpp"
#include "ncgcurv/report.hpp"

namespace ncgcurv::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string geometry = "torus";
    std::string theta;
    bool symbolic = false;
    bool classical = false;
    std::string json;
    std::uint64_t seed = 1;
    std::string pi_component;
    bool timing = false;
    int samples = 6;
};

struct Setup {
    GeometrySpec g;
    Mode mode = Mode::Deformed;
    ThetaContext ctx;
    std::string theta = "symbolic";
};

struct Section {
    std::vector<CheckResult> checks;
    Json objects = Json::object();
};

Rational parse_theta(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw InputError("--theta expects p/q, got '" + s + "'");
    q.canonicalize();
    return q;
}

GeometrySpec read_geometry(const std::string& name_or_path) {
    if (auto b = builtin(name_or_path)) return *b;
    std::ifstream in(name_or_path);
    if (!in) throw InputError("unknown geometry '" + name_or_path + "' (not a builtin, no such file)");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_geometry(ss.str());
    } catch (const GeometryParseError& e) {
        throw InputError(name_or_path + ": " + e.what());
    }
}

Setup make_setup(const Options& o) {
    Setup s;
    s.g = read_geometry(o.geometry);
    if (!o.theta.empty() && (o.symbolic || o.classical))
        throw InputError("--theta cannot be combined with --symbolic or --classical");
    if (o.symbolic && o.classical) throw InputError("--symbolic and --classical are exclusive");
    if (o.classical) {
        s.mode = Mode::Classical;
        s.theta = "classical";
    } else if (!o.theta.empty()) {
        s.ctx = ThetaContext::numeric(parse_theta(o.theta));
        s.theta = to_string(s.ctx.q);
    }
    return s;
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

// constant elements print as a single token, others as {basis: token}
Json value_json(const Element& e, const AlgebraSpec& a) {
    if (e.is_zero()) return "0";
    if (e.terms().size() == 1 && e.terms().begin()->first == a.unit()) return e.terms().begin()->second.str();
    return element_json(e, a);
}

Tensor pi_direction(const Calculus& c, const Scalar& s) {
    auto blocks = projection_blocks(c);
    for (const auto& b : blocks)
        for (const auto& idx : b.indices) {
            Tensor img = apply_block_operator(c, blocks, Tensor::basis(idx, c.algebra().unit()), &ProjectionBlock::pi);
            if (!img.is_zero()) return img.scaled(s);
        }
    throw InputError("--pi-component: the projection Pi is zero for this geometry");
}

LeviCivitaSolution solve(const Calculus& c, const Options& o) {
    if (o.pi_component.empty()) return solve_levi_civita(c, nullptr, o.seed, o.samples);
    Scalar s;
    try {
        s = Scalar::parse(o.pi_component);
    } catch (const std::exception& e) {
        throw InputError(std::string("--pi-component: ") + e.what());
    }
    Tensor extra = pi_direction(c, s);
    return solve_levi_civita(c, &extra, o.seed, o.samples);
}

Section connection_section(const Setup& st, const Options& o) {
    Section r;
    Calculus c(st.g, st.mode);
    auto sol = solve(c, o);
    const auto& cc = sol.concordance;
    if (st.ctx.symbolic) {
        r.checks = sol.postconditions;
    } else {
        std::mt19937_64 rng(o.seed);
        r.checks = check_connection(c, sol.connection, st.ctx, rng, o.samples);
    }
    if (cc.difference.is_zero() && cc.direct_sum)
        r.checks.push_back(pass("concordance"));
    else
        r.checks.push_back(fail("concordance", cc.direct_sum ? "difference tensor nonzero" : "direct sum fails",
                                describe(cc.difference, c.algebra())));
    r.objects["A"] = tensor_json(sol.connection.a, c.algebra());
    r.objects["concordance"] = {{"concordant", cc.concordant},
                                {"direct_sum", cc.direct_sum},
                                {"pi_dimension", cc.pi_dimension},
                                {"difference", tensor_json(cc.difference, c.algebra())}};
    return r;
}

Section curvature_section(const Setup& st, const Options& o) {
    Section r;
    Calculus c(st.g, st.mode);
    auto sol = solve(c, o);
    Connection left = conjugate(c, sol.connection);
    Tensor rr = curvature_tensor(c, sol.connection), rl = curvature_tensor(c, left);
    r.objects["R_right"] = tensor_json(rr, c.algebra());
    r.objects["R_left"] = tensor_json(rl, c.algebra());
    const auto& orc = st.g.oracle;
    if (orc.real_frame && orc.ricci_factor && st.mode == Mode::Classical) {
        auto table = riemann_table_real(c, rr);
        const char* nm = "constant_curvature_table";
        if (!table) {
            r.checks.push_back(fail(nm, "curvature coefficients are not constant"));
        } else {
            Scalar k = *orc.ricci_factor * Scalar(Rational(1, st.g.dimension - 1));
            RiemannTable want = constant_curvature_table(st.g.frame.n);
            CheckResult res = pass(nm, "R_ijkl = K (d_ik d_jl - d_il d_jk), K = " + k.str());
            for (const auto& [ix, v] : want)
                if (auto it = table->find(ix); (it == table->end() ? Scalar() : it->second) != v * k) {
                    res = fail(nm, "R_" + std::to_string(ix[0]) + std::to_string(ix[1]) + std::to_string(ix[2]) +
                                       std::to_string(ix[3]));
                    break;
                }
            for (const auto& [ix, v] : *table)
                if (res.passed && !want.count(ix) && !v.is_zero()) res = fail(nm, "unexpected nonzero entry");
            r.checks.push_back(res);
            Json t = Json::array();
            for (const auto& [ix, v] : *table)
                t.push_back({{"index", Json::array({ix[0], ix[1], ix[2], ix[3]})}, {"value", v.str()}});
            r.objects["riemann_real_frame"] = t;
        }
    }
    return r;
}

Section ricci_section(const Setup& st, const Options& o) {
    Section r;
    Calculus c(st.g, st.mode);
    auto sol = solve(c, o);
    Connection left = conjugate(c, sol.connection);
    Tensor g = c.line_element();
    for (auto [ch, conn] : {std::pair{Chirality::Right, &sol.connection}, std::pair{Chirality::Left, &left}}) {
        Tensor ric = ricci(c, ch, curvature_tensor(c, *conn));
        std::string tag = to_string(ch);
        r.objects["Ric_" + tag] = tensor_json(ric, c.algebra());
        if (auto f = st.g.oracle.ricci_factor) {
            Tensor diff = ric - g.scaled(*f);
            r.checks.push_back(st.ctx.zero(diff) ? pass("ricci_oracle_" + tag, "Ric = " + f->str() + " G")
                                                 : fail("ricci_oracle_" + tag, describe(diff, c.algebra())));
        }
    }
    return r;
}

Section scalar_section(const Setup& st, const Options& o) {
    Section r;
    Calculus c(st.g, st.mode);
    auto sol = solve(c, o);
    Connection left = conjugate(c, sol.connection);
    Tensor rr = curvature_tensor(c, sol.connection);
    Element r_right = scalar_curvature(c, Chirality::Right, ricci(c, Chirality::Right, rr));
    Element r_left = scalar_curvature(c, Chirality::Left, ricci(c, Chirality::Left, curvature_tensor(c, left)));
    r.objects["r"] = value_json(r_right, c.algebra());
    r.objects["r_left"] = value_json(r_left, c.algebra());
    if (!st.ctx.symbolic) {
        Scalar v = r_right.coeff(c.algebra().unit());
        r.objects["r_at_theta"] = complex_json(v.eval(st.ctx.q));
    }
    r.checks.push_back(st.ctx.zero(r_right - r_left) ? pass("scalar_curvature_chirality")
                                                     : fail("scalar_curvature_chirality", "left and right r differ"));
    if (auto want = st.g.oracle.r) {
        Element d = r_right - Element::scalar(*want, c.algebra().unit());
        r.checks.push_back(st.ctx.zero(d) ? pass("scalar_curvature_oracle", "r = " + want->str())
                                          : fail("scalar_curvature_oracle", "r = " + describe(r_right, c.algebra())));
    }
    if (auto bf = scalar_curvature_bruteforce(c, rr)) {
        Element d = r_right - Element::scalar(*bf, c.algebra().unit());
        r.checks.push_back(st.ctx.zero(d) ? pass("scalar_curvature_bruteforce")
                                          : fail("scalar_curvature_bruteforce", "metric-matrix contraction gives " + bf->str()));
    }
    return r;
}

Section weitzenbock_section(const Setup& st, const Options& o) {
    Section r;
    Calculus c(st.g, st.mode);
    auto sol = solve(c, o);
    DiracModule dm(c, sol.connection);
    std::mt19937_64 rng(o.seed);
    r.checks = check_dirac_conditions(dm, st.ctx, rng, o.samples);
    // residue on the spinor basis; report the factor when it acts as a scalar
    std::optional<Scalar> factor;
    bool scalar_action = true;
    Json per = Json::array();
    for (int a = 0; a < c.spinor_rank(); ++a) {
        Tensor x = c.spinor(a, c.algebra().unit());
        Tensor res = dm.weitzenbock_residue(x);
        per.push_back(tensor_json(res, c.algebra()));
        Element coef = res.coefficient({spinor_leg(a)});
        Scalar f = coef.coeff(c.algebra().unit());
        if (res != x.scaled(f) || (factor && *factor != f)) scalar_action = false;
        factor = f;
    }
    r.objects["residue"] = scalar_action && factor ? Json(factor->str()) : Json(per);
    auto mg = dm.m_rep(c.line_element());
    Json mgj = Json::object();
    for (const auto& [k, m] : mg) mgj[c.algebra().key_name(k)] = matrix_json(m);
    r.objects["m_G"] = mgj;
    r.objects["e_beta"] = value_json(c.e_beta(), c.algebra());
    return r;
}

Section deform_section(const Setup& st, const Options& o) {
    if (st.mode == Mode::Classical) throw InputError("deform-verify compares both modes; drop --classical");
    Section r;
    r.checks = verify_theta_theorems(st.g, st.ctx, {o.seed, o.samples});
    return r;
}

Section validate_section(const Setup& st, const Options& o) {
    Section r;
    r.checks = validate_geometry(st.g, o.seed);
    r.objects["name"] = st.g.name;
    r.objects["dimension"] = st.g.dimension;
    r.objects["frame_size"] = st.g.frame.n;
    r.objects["spinor_rank"] = st.g.dirac.s;
    return r;
}

using SectionFn = Section (*)(const Setup&, const Options&);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Report run_command(const std::string& cmd, const Options& o) {
    Report rep;
    rep.command = cmd;
    rep.seed = o.seed;
    if (cmd == "list") {
        Json gs = Json::array();
        for (const auto& n : builtin_names()) {
            auto g = *builtin(n);
            gs.push_back({{"name", n}, {"dimension", g.dimension}, {"frame_size", g.frame.n}, {"spinor_rank", g.dirac.s}});
        }
        rep.objects["geometries"] = gs;
        return rep;
    }

    Setup st = make_setup(o);
    rep.geometry = st.g.name;
    rep.theta = st.theta;

    auto t0 = std::chrono::steady_clock::now();
    Section val = validate_section(st, o);
    if (cmd == "validate" || !all_passed(val.checks)) {
        rep.checks = std::move(val.checks);
        rep.objects = std::move(val.objects);
        if (o.timing) rep.timing["validate"] = seconds_since(t0);
        return rep;
    }

    static const std::vector<std::pair<std::string, SectionFn>> sections = {
        {"connection", connection_section}, {"curvature", curvature_section}, {"ricci", ricci_section},
        {"scalar", scalar_section},         {"weitzenbock", weitzenbock_section}, {"deform-verify", deform_section},
    };

    if (cmd != "check-all") {
        for (const auto& [name, fn] : sections)
            if (name == cmd) {
                if (name == "weitzenbock" && st.g.dirac.s == 0)
                    throw InputError("geometry '" + st.g.name + "' has no spinor data");
                auto t1 = std::chrono::steady_clock::now();
                Section s = fn(st, o);
                rep.checks = std::move(s.checks);
                rep.objects = std::move(s.objects);
                if (o.timing) rep.timing[cmd] = seconds_since(t1);
                return rep;
            }
        throw InputError("unknown command '" + cmd + "'");
    }

    // check-all: independent sections run concurrently, assembled in a fixed order
    std::vector<std::string> names = {"validate"};
    std::vector<std::future<std::pair<Section, double>>> jobs;
    for (const auto& [name, fn] : sections) {
        if (name == "weitzenbock" && st.g.dirac.s == 0) continue;
        if (name == "deform-verify" && st.mode == Mode::Classical) continue;
        names.push_back(name);
        jobs.push_back(std::async(std::launch::async, [&st, &o, fn = fn] {
            auto t1 = std::chrono::steady_clock::now();
            Section s = fn(st, o);
            return std::pair{std::move(s), seconds_since(t1)};
        }));
    }
    std::vector<std::pair<Section, double>> done;
    done.emplace_back(std::move(val), seconds_since(t0));
    for (auto& j : jobs) done.push_back(j.get());
    for (std::size_t i = 0; i < done.size(); ++i) {
        auto& [s, secs] = done[i];
        for (auto& c : s.checks) {
            c.name = names[i] + "/" + c.name;
            rep.checks.push_back(std::move(c));
        }
        for (auto& [k, v] : s.objects.items()) rep.objects[k] = v;
        if (o.timing) rep.timing[names[i]] = secs;
    }
    if (st.g.dirac.s == 0) rep.objects["weitzenbock"] = "skipped: no spinor data";
    return rep;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Levi-Civita connections, curvature and Dirac operators on frame-presented noncommutative geometries"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"list", "list builtin geometries"},
        {"validate", "check the structural invariants of a geometry"},
        {"connection", "solve for the Levi-Civita connection and check it"},
        {"curvature", "Riemann curvature of the Levi-Civita connection"},
        {"ricci", "Ricci tensors"},
        {"scalar", "scalar curvature"},
        {"weitzenbock", "Dirac operator, spectral-triple conditions and the Weitzenbock residue"},
        {"deform-verify", "naturality of every construction under the theta deformation"},
        {"check-all", "everything above"},
    };
    for (const auto& [name, help] : cmds) {
        CLI::App* s = app.add_subcommand(name, help);
        if (name == "list") {
            s->add_option("--json", o.json, "write the JSON report here ('-' for stdout)");
            continue;
        }
        s->add_option("-g,--geometry", o.geometry, "builtin name or geometry file")->capture_default_str();
        s->add_option("--theta", o.theta, "numeric mode at lambda = exp(2 pi i p/q)");
        s->add_flag("--symbolic", o.symbolic, "formal lambda (default)");
        s->add_flag("--classical", o.classical, "undeformed calculus");
        s->add_option("--json", o.json, "write the JSON report here ('-' for stdout)");
        s->add_option("--seed", o.seed, "seed for randomized samples")->capture_default_str();
        s->add_option("--samples", o.samples, "random samples per check")->capture_default_str()->check(CLI::Range(1, 1000));
        s->add_option("--pi-component", o.pi_component, "add this multiple of a fixed Im(Pi) direction to A");
        s->add_flag("--timing", o.timing, "record wall-clock times");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    Report rep;
    try {
        rep = run_command(cmd, o);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // solver refusals on user data (singular blocks, nonconstant e^beta, ...)
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (o.json == "-") {
        out << rep.to_json().dump(2) << "\n";
    } else {
        out << rep.to_text();
        if (!o.json.empty()) {
            std::ofstream f(o.json);
            if (!f) {
                err << "error: cannot write " << o.json << "\n";
                return 2;
            }
            f << rep.to_json().dump(2) << "\n";
        }
    }
    return rep.passed() ? 0 : 1;
}

}  // namespace ncgcurv::cli
