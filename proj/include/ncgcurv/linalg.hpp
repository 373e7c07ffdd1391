// Dense exact linear algebra over the Scalar field.
#pragma once

#include <optional>
#include <vector>

#include "ncgcurv/scalar.hpp"

namespace ncgcurv {

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static Matrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix adjoint() const;  // conjugate transpose
    Matrix conjugate() const;
    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    template <class F>
    Matrix map(F f) const {
        Matrix m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = f(a_[k]);
        return m;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

int rank(Matrix m);
// columns span the null space
Matrix kernel(const Matrix& m);
// solution X of A X = B, nullopt if A is singular (square A)
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);
// orthogonal projection onto the column span of b (columns independent)
Matrix projector_onto(const Matrix& b);
// columns of a then columns of b
Matrix hcat(const Matrix& a, const Matrix& b);

}  // namespace ncgcurv
