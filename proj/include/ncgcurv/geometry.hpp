// Frame-presented geometries: data, built-ins, file format, frame changes.
#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncgcurv/algebra.hpp"
#include "ncgcurv/linalg.hpp"

namespace ncgcurv {

struct FrameSpec {
    int n = 0;
    std::vector<Degree> degrees;
    Matrix star;             // omega_j^dag = sum_k omega_k S_kj
    std::vector<Tensor> d;   // d(omega_j), rank 2
    Matrix gram;             // declared Gram matrix; empty means identity
    bool operator==(const FrameSpec& o) const {
        return n == o.n && degrees == o.degrees && star == o.star && d == o.d && gram == o.gram;
    }
};

struct DiracSpec {
    int s = 0;
    std::vector<Degree> degrees;
    std::vector<Matrix> gamma;  // c(omega_j)
    std::vector<Matrix> spin;   // grad(x_a) = sum_j omega_j (x) sum_b x_b (Gamma_j)_ba
    bool operator==(const DiracSpec& o) const {
        return s == o.s && degrees == o.degrees && gamma == o.gamma && spin == o.spin;
    }
};

struct Oracle {
    std::optional<Scalar> r;             // expected scalar curvature
    std::optional<Scalar> ricci_factor;  // Ric = f G
    std::optional<Scalar> residue;       // Weitzenbock residue = f x
    std::optional<Matrix> real_frame;    // omega_j = sum_k e_k R_kj, e real orthonormal
    bool operator==(const Oracle& o) const {
        return r == o.r && ricci_factor == o.ricci_factor && residue == o.residue && real_frame == o.real_frame;
    }
};

// the braiding phase; Flipped is a deliberately wrong variant used by sabotage fixtures
enum class Braiding { Theta, Flipped };

struct GeometrySpec {
    std::string name;
    int dimension = 0;
    AlgebraSpec algebra;
    Derivation derivation;
    FrameSpec frame;
    DiracSpec dirac;
    std::string functional = "unit_coefficient";
    Braiding braiding = Braiding::Theta;
    Oracle oracle;
    // added to the solved Levi-Civita form A (classical coordinates); nonzero only in diagnostic fixtures
    Tensor connection_offset{3};

    bool operator==(const GeometrySpec& o) const {
        return name == o.name && dimension == o.dimension && algebra == o.algebra && derivation == o.derivation &&
               frame == o.frame && dirac == o.dirac && functional == o.functional && braiding == o.braiding &&
               oracle == o.oracle && connection_offset == o.connection_offset;
    }
};

GeometrySpec builtin_torus();
GeometrySpec builtin_sphere3();
// the same round 3-sphere in the real frame e1,e2,e3, all degrees zero (classical oracle)
GeometrySpec builtin_sphere3_real();
std::vector<std::string> builtin_names();
std::optional<GeometrySpec> builtin(const std::string& name);

// c'_K = sum_J prod_p M(k_p, j_p) c_J on frame legs; spinor legs untouched
Tensor transform_frame_legs(const Tensor& t, const Matrix& m);

// new frame omega'_j = sum_k omega_k U_kj (U invertible, constant)
GeometrySpec rotate_frame(const GeometrySpec& g, const Matrix& u, const std::vector<Degree>& new_degrees,
                          const std::string& new_name);

// ---- file format

struct GeometryParseError : std::runtime_error {
    int line, column;
    GeometryParseError(const std::string& msg, int l, int c)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

struct GeometryValidationError : std::runtime_error {
    std::vector<CheckResult> failures;
    explicit GeometryValidationError(std::vector<CheckResult> f);
};

std::string serialize_geometry(const GeometrySpec& g);
// parse only, no validation
GeometrySpec parse_geometry(const std::string& text);
// parse + full validation; throws GeometryValidationError listing violated invariants
GeometrySpec load_geometry(const std::string& path);
// builtin name or file path
GeometrySpec resolve_geometry(const std::string& name_or_path);

// structural invariants of a geometry
std::vector<CheckResult> validate_geometry(const GeometrySpec& g, std::uint64_t seed = 1);

}  // namespace ncgcurv
