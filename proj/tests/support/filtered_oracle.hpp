// Reference page computations for filtered complexes. Counting versions
// enumerate F_3-vectors; the rational versions use determinants of minors.
#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "oracle.hpp"
#include "specseq/filtered.hpp"

namespace oracle {

using specseq::FilteredComplex;

using Key = std::vector<std::uint64_t>;

inline Key key(const Matrix& v) {
    Key k;
    for (std::size_t i = 0; i < v.rows(); ++i) k.push_back(v(i, 0).residue());
    return k;
}

/// Vectors of A^n supported on weights <= p whose differential has no
/// component of weight > p - r.
inline std::vector<Matrix> brute_cycles(const FilteredComplex& a, int r, int p, int n) {
    std::vector<Matrix> out;
    const auto w = a.weights(n);
    const auto w1 = a.weights(n + 1);
    const Matrix d = a.d(n);
    for (const auto& x : all_vectors(a.field(), a.dim(n))) {
        bool ok = true;
        for (std::size_t i = 0; i < w.size() && ok; ++i) ok = x(i, 0).is_zero() || w[i] <= p;
        if (!ok) continue;
        const Matrix dx = d * x;
        for (std::size_t i = 0; i < w1.size() && ok; ++i) ok = dx(i, 0).is_zero() || w1[i] <= p - r;
        if (ok) out.push_back(x);
    }
    return out;
}

inline std::size_t brute_boundary_count(const FilteredComplex& a, int r, int p, int n) {
    if (r == 0) {
        std::size_t c = 0;
        for (const auto& x : all_vectors(a.field(), a.dim(n))) {
            bool ok = true;
            for (std::size_t i = 0; i < a.dim(n) && ok; ++i) ok = x(i, 0).is_zero() || a.weights(n)[i] <= p - 1;
            if (ok) ++c;
        }
        return c;
    }
    const auto xs = brute_cycles(a, r - 1, p + r - 1, n - 1);
    const auto ys = brute_cycles(a, r - 1, p - 1, n);
    const Matrix d = a.d(n - 1);
    std::set<Key> seen;
    for (const auto& x : xs) {
        const Matrix dx = d * x;
        for (const auto& y : ys) seen.insert(key(dx + y));
    }
    return seen.size();
}

inline std::size_t log_base(std::size_t value, std::size_t base) {
    std::size_t k = 0;
    while (value > 1) {
        value /= base;
        ++k;
    }
    return k;
}

/// dim E_r^{p,p+n} by counting over F_p.
inline std::size_t brute_page_dim(const FilteredComplex& a, int r, int p, int n) {
    const std::size_t z = brute_cycles(a, r, p, n).size();
    const std::size_t b = brute_boundary_count(a, r, p, n);
    return log_base(z / b, a.field().modulus());
}

inline Matrix restrict(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    return m.select_rows(rows).select_cols(cols);
}

inline std::vector<std::size_t> with_weight(const FilteredComplex& a, int n, int lo, int hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < a.dim(n); ++i) {
        if (a.weights(n)[i] >= lo && a.weights(n)[i] <= hi) idx.push_back(i);
    }
    return idx;
}

/// dim E_1^{p,p+n}: homology of the weight-p graded piece.
inline std::size_t e1_dim(const FilteredComplex& a, int p, int n) {
    const auto here = with_weight(a, n, p, p);
    const auto up = with_weight(a, n + 1, p, p);
    const auto down = with_weight(a, n - 1, p, p);
    return here.size() - rank(restrict(a.d(n), up, here)) - rank(restrict(a.d(n - 1), here, down));
}

/// dim of F_p H^n(A) = (ker d cap F_p) / (im d cap F_p).
inline std::size_t filtered_homology_dim(const FilteredComplex& a, int p, int n) {
    const auto fp = with_weight(a, n, -1000000, p);
    std::vector<std::size_t> all_up(a.dim(n + 1)), all_here(a.dim(n)), all_down(a.dim(n - 1));
    for (std::size_t i = 0; i < all_up.size(); ++i) all_up[i] = i;
    for (std::size_t i = 0; i < all_here.size(); ++i) all_here[i] = i;
    for (std::size_t i = 0; i < all_down.size(); ++i) all_down[i] = i;
    const std::size_t cycles = fp.size() - rank(restrict(a.d(n), all_up, fp));
    const Matrix dn1 = a.d(n - 1);
    Matrix with_fp(a.field(), a.dim(n), dn1.cols() + fp.size());
    with_fp.set_block(0, 0, dn1);
    for (std::size_t k = 0; k < fp.size(); ++k) with_fp(fp[k], dn1.cols() + k) = a.field().one();
    const std::size_t bounds = rank(dn1) + fp.size() - rank(with_fp);
    return cycles - bounds;
}

/// dim E_infinity^{p,p+n} = dim F_pH^n - dim F_{p-1}H^n.
inline std::size_t einf_dim(const FilteredComplex& a, int p, int n) {
    return filtered_homology_dim(a, p, n) - filtered_homology_dim(a, p - 1, n);
}

}  // namespace oracle
