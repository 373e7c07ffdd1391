// Check results and the symbolic / numeric zero test.
#pragma once

#include <string>
#include <vector>

#include "ncgcurv/tensor.hpp"

namespace ncgcurv {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;  // first counterexample, empty on pass
    std::string detail;
};

inline CheckResult pass(std::string name, std::string detail = {}) { return {std::move(name), true, {}, std::move(detail)}; }
inline CheckResult fail(std::string name, std::string witness, std::string detail = {}) {
    return {std::move(name), false, std::move(witness), std::move(detail)};
}

bool all_passed(const std::vector<CheckResult>& rs);

// symbolic: residuals must vanish structurally.
// numeric: residual coefficients evaluated at L = exp(2 pi i q) within tol.
struct ThetaContext {
    bool symbolic = true;
    Rational q = 0;
    double tol = 1e-9;

    static ThetaContext exact() { return {}; }
    static ThetaContext numeric(const Rational& q, double tol = 1e-9) { return {false, q, tol}; }

    bool zero(const Scalar& s) const;
    bool zero(const Element& e) const;
    bool zero(const Tensor& t) const;
    std::string describe() const;
};

}  // namespace ncgcurv
