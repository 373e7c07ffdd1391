#pragma once

#include <complex>
#include <random>

#include "doctest.h"
#include "ncgcurv/deformation.hpp"
#include "ncgcurv/sampling.hpp"

namespace ncgcurv::test {

inline constexpr int kCases = 100;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

// a point on the unit circle away from the poles that small denominators could have
inline std::complex<double> probe_point(std::mt19937_64& r) {
    std::uniform_real_distribution<double> u(0.05, 0.45);
    return std::polar(1.0, 2 * 3.14159265358979323846 * u(r));
}

inline Scalar S(const std::string& s) { return Scalar::parse(s); }

}  // namespace ncgcurv::test
