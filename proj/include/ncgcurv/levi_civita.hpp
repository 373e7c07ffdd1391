// Grassmann connections, W tensors, concordance, the Levi-Civita solve and its checks.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncgcurv/forms.hpp"

namespace ncgcurv {

enum class Chirality { Right, Left };
const char* to_string(Chirality c);

// right: grad = grad^v + alpha_right(A); left: grad = grad^v - alpha_left(A)
struct Connection {
    Chirality chirality = Chirality::Right;
    Tensor a{3};
    Mode mode = Mode::Classical;
};

Tensor grassmann_right(const Calculus& c, const Tensor& rho);
Tensor grassmann_left(const Calculus& c, const Tensor& rho);
Tensor apply(const Calculus& c, const Connection& conn, const Tensor& rho);
// flips chirality, A -> A^dag
Connection conjugate(const Calculus& c, const Connection& conn);

struct WTensors {
    Tensor w{3};         // sum_j d(omega_j) (x) omega_j^dag
    Tensor wdag{3};      // sum_j omega_j (x) d(omega_j^dag)
};
WTensors w_tensor(const Calculus& c);

// per total-degree block matrices for P = Psi (x) 1, Q = 1 (x) Psi and Pi
struct ProjectionBlock {
    std::vector<std::vector<int>> indices;
    Matrix p, q, pi;
    int pi_rank = 0;
    bool direct_sum = true;  // dim(Im Pi) + rank[1-P | 1-Q] == block size
};
std::vector<ProjectionBlock> projection_blocks(const Calculus& c);
Tensor apply_block_operator(const Calculus& c, const std::vector<ProjectionBlock>& blocks, const Tensor& t,
                            Matrix ProjectionBlock::*which);

struct SingularBlock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Concordance {
    Tensor lhs{3}, rhs{3}, difference{3};
    bool concordant = false;
    bool direct_sum = true;
    int pi_dimension = 0;
    std::vector<std::string> singular_blocks;
};
Concordance concordance_check(const Calculus& c);

struct LeviCivitaSolution {
    Connection connection;
    Concordance concordance;
    std::vector<CheckResult> postconditions;
};
// A = -(1 + Pi - PQ)^{-1}(W + P W^dag); extra_pi (projected by Pi) is added when given
LeviCivitaSolution solve_levi_civita(const Calculus& c, const Tensor* extra_pi = nullptr,
                                     std::uint64_t seed = 1, int samples = 8);

// Hermitian, torsion-free, sigma-bimodule, plus Leibniz and conjugation checks
std::vector<CheckResult> check_connection(const Calculus& c, const Connection& right, const ThetaContext& ctx,
                                          std::mt19937_64& rng, int samples);

}  // namespace ncgcurv
