// Brute-force reference computations used by the tests. Nothing here calls
// the elimination routines of the library.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "specseq/matrix.hpp"

namespace oracle {

using specseq::Field;
using specseq::Matrix;
using specseq::Scalar;

/// Determinant by cofactor expansion along the first row.
inline Scalar det(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return m.field().one();
    if (n == 1) return m(0, 0);
    Scalar total = m.field().zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) cols.push_back(k);
        }
        Scalar minor = det(m.select_rows(rows).select_cols(cols));
        Scalar term = m(0, j) * minor;
        total = (j % 2 == 0) ? total + term : total - term;
    }
    return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    const std::function<bool(const std::vector<std::size_t>&)>& visit, bool& stop) {
    if (stop) return;
    if (cur.size() == k) {
        stop = visit(cur);
        return;
    }
    for (std::size_t i = start; i < n && !stop; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, visit, stop);
        cur.pop_back();
    }
}

/// Largest k with a nonzero k x k minor.
inline std::size_t rank(const Matrix& m) {
    for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
        bool found = false;
        std::vector<std::size_t> rs;
        bool stop_r = false;
        subsets(m.rows(), k, 0, rs, [&](const std::vector<std::size_t>& rows) {
            std::vector<std::size_t> cs;
            bool stop_c = false;
            subsets(m.cols(), k, 0, cs, [&](const std::vector<std::size_t>& cols) {
                if (!det(m.select_rows(rows).select_cols(cols)).is_zero()) found = true;
                return found;
            }, stop_c);
            return found;
        }, stop_r);
        if (found) return k;
    }
    return 0;
}

/// All vectors of F_p^n (p small), as n x 1 matrices.
inline std::vector<Matrix> all_vectors(Field f, std::size_t n) {
    std::vector<Matrix> out;
    const std::uint32_t p = f.modulus();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        Matrix v(f, n, 1);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            v(i, 0) = f.from_int(static_cast<long long>(c % p));
            c /= p;
        }
        out.push_back(v);
    }
    return out;
}

/// Number of elements of the span of the columns (prime fields only).
inline std::size_t span_size(const Matrix& cols) {
    const Field f = cols.field();
    std::size_t count = 0;
    std::vector<Matrix> seen;
    for (const auto& c : all_vectors(f, cols.cols())) {
        Matrix v = cols * c;
        bool dup = false;
        for (const auto& s : seen) {
            if (s == v) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            seen.push_back(v);
            ++count;
        }
    }
    return count;
}

inline Matrix random_matrix(std::mt19937_64& rng, Field f, std::size_t rows, std::size_t cols, int lo = -3,
                            int hi = 3, double zero_bias = 0.3) {
    std::uniform_int_distribution<int> entry(lo, hi);
    std::bernoulli_distribution zero(zero_bias);
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = zero(rng) ? f.zero() : f.from_int(entry(rng));
    }
    return m;
}

}  // namespace oracle
