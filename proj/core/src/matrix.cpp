#include "specseq/matrix.hpp"

#include <sstream>
#include <utility>

namespace specseq {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

Matrix Matrix::from_ints(Field field, std::initializer_list<std::initializer_list<long long>> rows,
                         std::size_t cols) {
    std::vector<std::vector<long long>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_ints(field, v, cols);
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<long long>>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
}

Matrix Matrix::unit(Field field, std::size_t n, std::size_t i) {
    Matrix m(field, n, 1);
    m(i, 0) = field.one();
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_) {
        if (!s.is_zero()) return false;
    }
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& s = (*this)(i, j);
            if (i == j ? !s.is_one() : !s.is_zero()) return false;
        }
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    }
    return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    }
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    }
    return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i) {
        for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
    }
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& s : m.data_) s = -s;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_shape(rhs, rows_, cols_, "matrix addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_shape(rhs, rows_, cols_, "matrix subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " * " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    if (a.field_ != b.field_ && !a.data_.empty() && !b.data_.empty()) {
        throw FieldMismatch("matrix product mixes fields");
    }
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& bkj = b(k, j);
                if (!bkj.is_zero()) m(i, j) += aik * bkj;
            }
        }
    }
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix::Echelon Matrix::rref() const {
    Echelon e{*this, {}};
    Matrix& m = e.reduced;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
        std::size_t piv = row;
        while (piv < rows_ && m(piv, c).is_zero()) ++piv;
        if (piv == rows_) continue;
        if (piv != row) {
            for (std::size_t j = c; j < cols_; ++j) std::swap(m(piv, j), m(row, j));
        }
        const Scalar inv = m(row, c).inverse();
        for (std::size_t j = c; j < cols_; ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || m(i, c).is_zero()) continue;
            const Scalar factor = m(i, c);
            for (std::size_t j = c; j < cols_; ++j) {
                if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
            }
        }
        e.pivots.push_back(c);
        ++row;
    }
    return e;
}

std::size_t Matrix::rank() const { return rref().pivots.size(); }

Matrix Matrix::kernel() const {
    const Echelon e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_pivot[j]) free_cols.push_back(j);
    }
    Matrix k(field_, cols_, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k(free_cols[f], f) = field_.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            k(e.pivots[r], f) = -e.reduced(r, free_cols[f]);
        }
    }
    return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
    if (rhs.rows_ != rows_) throw DimensionMismatch("solve: right-hand side has wrong row count");
    const Echelon e = hstack(*this, rhs).rref();
    Matrix x(field_, cols_, rhs.cols_);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= cols_) return std::nullopt;
        for (std::size_t j = 0; j < rhs.cols_; ++j) x(e.pivots[r], j) = e.reduced(r, cols_ + j);
    }
    return x;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
    const Echelon e = hstack(*this, identity(field_, rows_)).rref();
    if (e.pivots.size() < rows_ || (rows_ > 0 && e.pivots[rows_ - 1] >= cols_)) {
        throw PreconditionError("inverse of a singular matrix");
    }
    return e.reduced.block(0, cols_, rows_, rows_);
}

bool Matrix::is_invertible() const { return rows_ == cols_ && rank() == rows_; }

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
            }
        }
    }
    return m;
}

}  // namespace specseq
