#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "blockenc/error.hpp"

namespace blockenc {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

// Dense row-major complex matrix.  Deliberately small: the simulator works at
// desk scale (n <= a few hundred), so clarity beats blocking/vectorization.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    // Row-wise construction: Matrix{{a,b},{c,d}}.
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(const Vector& d);
    static Matrix outer(const Vector& u, const Vector& v); // u v^dagger

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const noexcept { return data_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;
    cplx trace() const;

    double frobenius_norm() const;
    double max_abs() const;          // entrywise max |a_ij|
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_hermitian(double tol) const;
    bool all_finite() const;

    // Writes block B with its top-left corner at (block_i, block_j), both in
    // units of B's own dimensions times `stride` when stride != 0 is given.
    void set_block(std::size_t row0, std::size_t col0, const Matrix& b);
    Matrix block(std::size_t row0, std::size_t col0, std::size_t r, std::size_t c) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Vector helpers.  Inner products are conjugate-linear in the first argument.
cplx dot(const Vector& a, const Vector& b);
double norm(const Vector& v);
Vector normalized(const Vector& v);
Vector operator*(cplx s, Vector v);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
bool all_finite(const Vector& v);
Vector kron(const Vector& a, const Vector& b);

// Global-phase convention used everywhere eigenvectors/states are reported:
// rotate so the largest-magnitude entry is real and positive.  Deterministic
// tie-break: the earliest entry within 1e-12 of the maximum magnitude wins.
Vector phase_fixed(const Vector& v);

} // namespace blockenc
