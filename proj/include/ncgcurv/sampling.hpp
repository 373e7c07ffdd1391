// Seeded random elements, tensors and spinors for property checks.
#pragma once

#include <random>

#include "ncgcurv/forms.hpp"

namespace ncgcurv {

Scalar random_scalar(std::mt19937_64& rng, bool with_lambda = true);
Degree random_degree(std::mt19937_64& rng, int radius = 3);
// homogeneous basis key of the algebra
BasisKey random_key(const AlgebraSpec& spec, std::mt19937_64& rng);
Element random_element(const AlgebraSpec& spec, std::mt19937_64& rng, int terms = 2);
Tensor random_tensor(const Calculus& c, int rank, std::mt19937_64& rng, int terms = 3);
// spinor-valued tensor: `forms` frame legs followed by one spinor leg
Tensor random_spinor(const Calculus& c, std::mt19937_64& rng, int terms = 2, int forms = 0);

}  // namespace ncgcurv
