#include "ncgcurv/linalg.hpp"

#include <stdexcept>

namespace ncgcurv {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("matrix shape mismatch");
    Matrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::logic_error("matrix shape mismatch");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.c_; ++j) {
                const Scalar& y = o(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
    return map([&](const Scalar& x) { return x * s; });
}

Matrix Matrix::conjugate() const {
    return map([](const Scalar& x) { return x.conj(); });
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::adjoint() const { return transpose().conjugate(); }

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const { return r_ == c_ && *this == identity(r_); }

namespace {

std::size_t weight(const Scalar& s) { return s.num().terms().size() + s.den().terms().size(); }

// in-place reduced row echelon form; returns pivot columns
std::vector<int> rref(Matrix& m, int ncols) {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < ncols && row < m.rows(); ++col) {
        int best = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero() && (best < 0 || weight(m(i, col)) < weight(m(best, col)))) best = i;
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        Scalar inv = m(row, col).inv();
        for (int j = 0; j < m.cols(); ++j)
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = 0; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

}  // namespace

int rank(Matrix m) { return static_cast<int>(rref(m, m.cols()).size()); }

Matrix kernel(const Matrix& a) {
    Matrix m = a;
    auto piv = rref(m, m.cols());
    std::vector<bool> is_piv(a.cols(), false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < a.cols(); ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix k(a.cols(), static_cast<int>(free.size()));
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], static_cast<int>(f)) = Scalar(1);
        for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], static_cast<int>(f)) = -m(static_cast<int>(r), free[f]);
    }
    return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != a.rows()) throw std::logic_error("solve shape mismatch");
    int n = a.rows();
    Matrix aug = hcat(a, b);
    auto piv = rref(aug, n);
    if (static_cast<int>(piv.size()) < n) return std::nullopt;
    Matrix x(n, b.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

Matrix projector_onto(const Matrix& b) {
    if (b.cols() == 0) return Matrix(b.rows(), b.rows());
    Matrix bh = b.adjoint();
    auto g = inverse(bh * b);
    if (!g) throw std::logic_error("projector_onto: dependent columns");
    return b * *g * bh;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::logic_error("hcat shape mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

}  // namespace ncgcurv
