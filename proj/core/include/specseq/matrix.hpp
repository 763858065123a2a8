#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specseq/scalar.hpp"

namespace specseq {

/// Dense matrix over an exact field, row-major. Vectors are n x 1 matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols);

    static Matrix zero(Field field, std::size_t rows, std::size_t cols) { return {field, rows, cols}; }
    static Matrix identity(Field field, std::size_t n);
    /// Integer entries, one inner list per row. `cols` disambiguates the 0-row case.
    static Matrix from_ints(Field field, std::initializer_list<std::initializer_list<long long>> rows,
                            std::size_t cols = 0);
    static Matrix from_ints(Field field, const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);
    /// Column vector e_i in dimension n.
    static Matrix unit(Field field, std::size_t n, std::size_t i);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix col(std::size_t j) const;
    Matrix row(std::size_t i) const;
    Matrix select_rows(std::span<const std::size_t> idx) const;
    Matrix select_cols(std::span<const std::size_t> idx) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Scalar& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

    friend bool operator==(const Matrix& a, const Matrix& b);

    struct Echelon;
    /// Gauss-Jordan elimination; the pivot of each column is the first
    /// nonzero entry at or below the current row.
    Echelon rref() const;

    std::size_t rank() const;
    /// Columns form a basis of {x : M x = 0}; free variables set to 1 in turn.
    Matrix kernel() const;
    /// Some X with M X = rhs, or nullopt.
    std::optional<Matrix> solve(const Matrix& rhs) const;
    /// Throws PreconditionError when singular or non-square.
    Matrix inverse() const;
    bool is_invertible() const;

    std::string to_string() const;

private:
    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct Matrix::Echelon {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Throws DimensionMismatch unless `m` is rows x cols.
inline void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
}

}  // namespace specseq
