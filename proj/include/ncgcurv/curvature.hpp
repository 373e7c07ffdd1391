// Riemann curvature via the frame, Ricci and scalar curvature by contraction with G.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "ncgcurv/levi_civita.hpp"

namespace ncgcurv {

using ConnectionMap = std::function<Tensor(const Tensor&)>;

// 1 (x) (1-Psi) o (grad (x) 1 + 1 (x) d) o grad, on X = one-forms
Tensor curvature_right(const Calculus& c, const ConnectionMap& grad, const Tensor& x);
// (1-Psi) (x) 1 o (1 (x) grad - d (x) 1) o grad, any left module (one-forms or spinors)
Tensor curvature_left(const Calculus& c, const ConnectionMap& grad, const Tensor& x);
Tensor curvature(const Calculus& c, const Connection& conn, const Tensor& x);

// rank-4 tensor representing R: right sum_j R(omega_j) (x) omega_j^dag, left sum_j omega_j (x) R(omega_j^dag)
Tensor curvature_tensor(const Calculus& c, const Connection& conn);

// Ric, normalized so the unit round 3-sphere gives Ric = 2G (see README)
Tensor ricci(const Calculus& c, Chirality ch, const Tensor& curvature_tensor);
// right: <G|Ric>_B, left: _B<Ric|G>
Element scalar_curvature(const Calculus& c, Chirality ch, const Tensor& ric);

// metric matrix g_ab = g(omega_a (x) omega_b), constant coefficients only
std::optional<Matrix> metric_matrix(const Calculus& c);
// r from the coefficients of the right curvature tensor and the metric matrix alone
std::optional<Scalar> scalar_curvature_bruteforce(const Calculus& c, const Tensor& right_curvature_tensor);

using RiemannTable = std::map<std::array<int, 4>, Scalar>;
// R_{s r m v} = -2 c_{m s r v}, c the coefficients of the right curvature tensor (constant coefficients)
std::optional<RiemannTable> riemann_table(const Calculus& c, const Tensor& right_curvature_tensor);
// same table after changing to the real frame annotated on the geometry
std::optional<RiemannTable> riemann_table_real(const Calculus& c, const Tensor& right_curvature_tensor);
// delta_ik delta_jl - delta_il delta_jk
RiemannTable constant_curvature_table(int n);

}  // namespace ncgcurv
