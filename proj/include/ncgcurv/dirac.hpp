// Clifford action, spin connection, Dirac operator, connection Laplacian, Weitzenbock residue.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "ncgcurv/curvature.hpp"

namespace ncgcurv {

// spinors are tensors whose last leg is a spinor leg; x = sum x_a * (c e)
class DiracModule {
public:
    // right: the Levi-Civita connection of the same calculus
    DiracModule(const Calculus& c, Connection right);

    const Calculus& calculus() const { return c_; }
    const Connection& levi_civita() const { return lc_; }

    // c on the last form leg and the spinor leg
    Tensor clifford(const Tensor& t) const;
    // c o (1 (x) c)(t (x) x) for a two-tensor t
    Tensor m_apply(const Tensor& t, const Tensor& x) const;
    // matrix-valued element: key -> s x s matrix, computed from gamma products directly
    std::map<BasisKey, Matrix> m_rep(const Tensor& t) const;
    // e^{-beta} m(G) as an operator on spinors (e^beta constant)
    Tensor normalized_mg(const Tensor& x) const;

    Tensor spin_connection(const Tensor& x) const;  // left, X -> Omega^1 (x) X
    Tensor dirac(const Tensor& x) const;            // c o grad
    // grad^G (x) 1 + 1 (x) grad^X on Omega^1 (x) X
    Tensor connection_sum(const Tensor& t) const;
    Tensor laplacian(const Tensor& x) const;
    Tensor weitzenbock_residue(const Tensor& x) const;  // D^2 x - Laplacian x
    // c o (m sigma (x) 1)(R(x)), from the curvature of the spin connection
    Tensor clifford_curvature(const Tensor& x) const;

    // left inner product _B<x|y> of spinors, and its Omega^1 / T^2 valued partial forms
    Element inner(const Tensor& x, const Tensor& y) const;
    Tensor partial_inner(const Tensor& t, const Tensor& y) const;  // t = forms (x) spinor
    // T^2-valued pairing of Omega^1 (x) X with itself: rho _B<x|y> (x) eta^dag
    Tensor pair_t2(const Tensor& s, const Tensor& t) const;
    Scalar phi(const Element& e) const;

    // divergence term phi(_B< grad^G(omega_(0) _B<x_(1)|x>) | G >)
    Scalar divergence(const Tensor& x) const;

private:
    Calculus c_;
    std::vector<Tensor> spin_;
    Connection lc_;
    Scalar inv_ebeta_;
};

// the four conditions, Clifford-star compatibility, symmetry of D, Weitzenbock match, Laplacian tests
std::vector<CheckResult> check_dirac_conditions(const DiracModule& dm, const ThetaContext& ctx, std::mt19937_64& rng,
                                                int samples);
// divergence condition and positivity of phi(<Lap x, x>) at the given theta values
CheckResult divergence_check(const DiracModule& dm, const Tensor& x, const std::vector<Rational>& thetas);
CheckResult adjoint_connection_check(const DiracModule& dm, std::mt19937_64& rng, int samples);

}  // namespace ncgcurv
