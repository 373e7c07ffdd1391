// Tensor powers of the one-form module in one mode (classical or deformed).
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ncgcurv/geometry.hpp"

namespace ncgcurv {

// exponent of the map classical -> deformed coordinates for a factor sequence
// (legs..., key): -sum_{p<q} n2(f_p) n1(f_q)
int deform_exponent(const std::vector<Degree>& factors);

// "(c)*w[0,1]*U^1" style listing for witnesses; spinor legs print as x<a>
std::string describe(const Tensor& t, const AlgebraSpec& a);
std::string describe(const Element& e, const AlgebraSpec& a);

class Calculus {
public:
    Calculus(GeometrySpec g, Mode mode);
    Calculus(std::shared_ptr<const GeometrySpec> g, Mode mode);

    const GeometrySpec& geom() const { return *g_; }
    std::shared_ptr<const GeometrySpec> geom_ptr() const { return g_; }
    const AlgebraSpec& algebra() const { return g_->algebra; }
    Mode mode() const { return mode_; }
    bool deformed() const { return mode_ == Mode::Deformed; }
    int n() const { return g_->frame.n; }
    int spinor_rank() const { return g_->dirac.s; }

    Degree leg_degree(int leg) const;
    Degree legs_degree(const std::vector<int>& legs) const;
    Degree term_degree(const TermKey& k) const;
    // Theta(s,t) in deformed mode, 1 classically
    Scalar theta(Degree s, Degree t) const;
    // phase used by sigma; differs from theta only for the flipped braiding
    Scalar sigma_phase(Degree s, Degree t) const;

    // classical coordinates -> this mode's coordinates (T / H maps); identity classically
    Tensor to_mode(const Tensor& classical) const;
    Tensor from_mode(const Tensor& t) const;

    Element mul(const Element& a, const Element& b) const { return alg_mul(algebra(), a, b, mode_); }
    Element star(const Element& a) const { return alg_star(algebra(), a, mode_); }
    Element unit() const { return alg_unit(algebra()); }

    Tensor frame(int j) const;
    Tensor frame_dagger(int j) const;  // omega_j^dag in this mode
    Tensor spinor(int a, BasisKey key = {}) const;

    Tensor lmul(const Element& a, const Tensor& t) const;
    Tensor rmul(const Tensor& t, const Element& b) const;
    Tensor tensor(const Tensor& s, const Tensor& t) const;
    Tensor dagger(const Tensor& t) const;

    Element inner_right(const Tensor& s, const Tensor& t) const;
    Element inner_left(const Tensor& s, const Tensor& t) const;

    Tensor line_element() const;
    Element g_pair(const Tensor& t) const;
    Element e_beta() const;

    Tensor sigma(const Tensor& t, int pos = 0) const;
    Tensor sigma_inv(const Tensor& t, int pos = 0) const;
    Tensor psi(const Tensor& t, int pos = 0) const;
    Tensor anti(const Tensor& t, int pos = 0) const;  // 1 - psi

    Tensor d_key(BasisKey k) const;
    Tensor d_element(const Element& a) const;
    Tensor d_frame(int j) const;
    Tensor exterior_d(const Tensor& rho) const;

    // A of rank n+k acting on rank-k rho
    Tensor alpha_right(const Tensor& a, const Tensor& rho) const;
    Tensor alpha_left(const Tensor& a, const Tensor& rho) const;

    // every frame multi-index of the given rank, grouped by total leg degree
    std::vector<std::vector<std::vector<int>>> degree_blocks(int rank) const;
    // matrix of a right-linear leg operator on a block of constant multi-indices
    Matrix leg_matrix(const std::function<Tensor(const Tensor&)>& op,
                      const std::vector<std::vector<int>>& block) const;
    Tensor from_block(const std::vector<std::vector<int>>& block, const Matrix& column, BasisKey key) const;

private:
    std::shared_ptr<const GeometrySpec> g_;
    Mode mode_;
    std::vector<Tensor> dframe_;
};

}  // namespace ncgcurv
