// Comparison maps between classical and deformed coordinates, and the deformation identity suite.
#pragma once

#include <cstdint>
#include <vector>

#include "ncgcurv/dirac.hpp"

namespace ncgcurv {

// T: x (x) y -> lambda^{-n2(x) n1(y)} x (x)_theta y, with x the first `split` legs and y the
// remaining legs plus coefficient. Input in classical coordinates, output in deformed ones.
Tensor t_theta(const Calculus& c, const Tensor& t, int split = 1);
Tensor t_theta_inv(const Calculus& c, const Tensor& t, int split = 1);

// three-fold map from its closed phase formula (any rank >= 3, legs after the second form the last factor)
Tensor h_theta(const Calculus& c, const Tensor& t);
Tensor h_theta_inv(const Calculus& c, const Tensor& t);
// the two composites (T (x) 1) o T and (1 (x) T) o T, built step by step
Tensor h_theta_left(const Calculus& c, const Tensor& t);
Tensor h_theta_right(const Calculus& c, const Tensor& t);

// connection in deformed coordinates acting as T o grad o T^{-1}
Connection deform_connection(const Calculus& deformed, const Connection& classical);

struct ThetaOptions {
    std::uint64_t seed = 1;
    int samples = 6;
};

// every named identity, each with a witness on failure
std::vector<CheckResult> verify_theta_theorems(const GeometrySpec& g, const ThetaContext& ctx,
                                               const ThetaOptions& opt = {});

}  // namespace ncgcurv
