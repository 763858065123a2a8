// Witness-cycle pages by enumeration over F_3, using only the raw cell data
// of a bicomplex.
#pragma once

#include <set>
#include <vector>

#include "filtered_oracle.hpp"
#include "specseq/bicomplex.hpp"

namespace oracle {

using specseq::Bicomplex;
using specseq::Cell;

using Tuple = std::vector<Matrix>;

inline Key tuple_key(const Tuple& t) {
    Key k;
    for (const auto& v : t) {
        for (std::size_t i = 0; i < v.rows(); ++i) k.push_back(v(i, 0).residue());
    }
    return k;
}

inline std::vector<Tuple> all_tuples(const Bicomplex& a, const std::vector<Cell>& cells) {
    std::vector<Tuple> out{{}};
    for (Cell c : cells) {
        std::vector<Tuple> next;
        for (const auto& t : out) {
            for (const auto& v : all_vectors(a.field(), a.dim(c))) {
                Tuple u = t;
                u.push_back(v);
                next.push_back(std::move(u));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<Cell> slot_cells(int r, int p, int q) {
    std::vector<Cell> cs;
    for (int k = 0; k < std::max(r, 1); ++k) cs.push_back({p - k, q - k});
    return cs;
}

inline std::vector<Tuple> brute_witness(const Bicomplex& a, int r, int p, int q) {
    const auto cells = slot_cells(r, p, q);
    std::vector<Tuple> out;
    for (const auto& t : all_tuples(a, cells)) {
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) {
            const Matrix lhs = a.d0(cells[k]) * t[k];
            if (k == 0) {
                ok = lhs.is_zero();
            } else {
                ok = lhs == a.d1(cells[k - 1]) * t[k - 1];
            }
        }
        if (ok) out.push_back(t);
    }
    return out;
}

inline Matrix zero_vec(const Bicomplex& a, Cell c) { return Matrix(a.field(), a.dim(c), 1); }

inline Tuple zero_tuple(const Bicomplex& a, int r, int p, int q) {
    Tuple t;
    for (Cell c : slot_cells(r, p, q)) t.push_back(zero_vec(a, c));
    return t;
}

inline Tuple add(const Tuple& x, const Tuple& y) {
    Tuple z;
    for (std::size_t k = 0; k < x.size(); ++k) z.push_back(x[k] + y[k]);
    return z;
}

/// The set w_r(BW_r) at (p, q) as tuples.
inline std::vector<Tuple> brute_witness_boundaries(const Bicomplex& a, int r, int p, int q) {
    if (r == 0) return {zero_tuple(a, 0, p, q)};
    const Cell e{p, q - 1};
    std::vector<std::vector<Tuple>> parts(3);
    for (const auto& v : all_vectors(a.field(), a.dim(e))) {
        Tuple t = zero_tuple(a, r, p, q);
        t[0] = a.d0(e) * v;
        if (r >= 2) t[1] = a.d1(e) * v;
        parts[0].push_back(t);
    }
    if (r >= 2) {
        for (const auto& c : brute_witness(a, r - 1, p + r - 1, q + r - 2)) {
            Tuple t = zero_tuple(a, r, p, q);
            t[0] = a.d1({p + 1, q}) * c[r - 2];
            parts[1].push_back(t);
        }
        for (const auto& b : brute_witness(a, r - 1, p - 1, q - 1)) {
            Tuple t = zero_tuple(a, r, p, q);
            for (int k = 0; k + 1 < r; ++k) t[k + 1] = b[k];
            parts[2].push_back(t);
        }
    }
    std::vector<Tuple> acc{zero_tuple(a, r, p, q)};
    for (const auto& part : parts) {
        if (part.empty()) continue;
        std::set<Key> seen;
        std::vector<Tuple> next;
        for (const auto& x : acc) {
            for (const auto& y : part) {
                Tuple z = add(x, y);
                if (seen.insert(tuple_key(z)).second) next.push_back(std::move(z));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

inline std::size_t brute_witness_page_dim(const Bicomplex& a, int r, int p, int q) {
    const std::size_t z = brute_witness(a, r, p, q).size();
    const std::size_t b = brute_witness_boundaries(a, r, p, q).size();
    return log_base(z / b, a.field().modulus());
}

/// dim E_1 at (p, q): vertical homology.
inline std::size_t vertical_homology_dim(const Bicomplex& a, Cell c) {
    return a.dim(c) - rank(a.d0(c)) - rank(a.d0({c.p, c.q - 1}));
}

}  // namespace oracle
