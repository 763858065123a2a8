#include "specseq/random.hpp"

#include <algorithm>
#include <map>

#include "specseq/bicomplex_ops.hpp"
#include "specseq/filtered_ops.hpp"

namespace specseq {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : suite) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix(splitmix(seed) ^ splitmix(h) ^ splitmix(index + 0x632be59bd9b4e019ULL));
}

int Rng::uniform(int lo, int hi) {
    if (hi < lo) throw PreconditionError("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    return static_cast<int>(lo + static_cast<std::int64_t>(next() % span));
}

Scalar Rng::scalar(Field field) {
    if (!field.is_rational()) return field.from_int(uniform(-3, 3));
    int den = 0;
    while (den == 0) den = uniform(-3, 3);
    return field.from_ratio(uniform(-3, 3), den);
}

Scalar Rng::nonzero_scalar(Field field) {
    for (;;) {
        Scalar s = scalar(field);
        if (!s.is_zero()) return s;
    }
}

FilteredComplex random_filtered(Rng& rng, Field field, const FilteredGenOptions& opt) {
    std::map<int, std::vector<int>> weights;
    struct Edge {
        int n;
        std::size_t from, to;
    };
    std::vector<Edge> edges;
    const int pieces = rng.uniform(0, opt.max_pieces);
    for (int k = 0; k < pieces; ++k) {
        const int p = rng.uniform(opt.weight_lo, opt.weight_hi);
        if (rng.chance(2, 5)) {
            const int n = rng.uniform(opt.deg_lo, opt.deg_hi);
            if (static_cast<int>(weights[n].size()) >= opt.max_dim) continue;
            weights[n].push_back(p);
        } else {
            const int n = rng.uniform(opt.deg_lo, opt.deg_hi - 1);
            const int s = rng.uniform(0, std::min(opt.max_drop, p - opt.weight_lo));
            if (static_cast<int>(weights[n].size()) >= opt.max_dim ||
                static_cast<int>(weights[n + 1].size()) >= opt.max_dim) {
                continue;
            }
            edges.push_back({n, weights[n].size(), weights[n + 1].size()});
            weights[n].push_back(p);
            weights[n + 1].push_back(p - s);
        }
    }
    FilteredComplex a(field);
    for (auto& [n, w] : weights) a.set_degree(n, w);
    std::map<int, Matrix> d;
    for (const Edge& e : edges) {
        auto it = d.find(e.n);
        if (it == d.end()) it = d.emplace(e.n, Matrix(field, a.dim(e.n + 1), a.dim(e.n))).first;
        it->second(e.to, e.from) = field.one();
    }
    for (auto& [n, m] : d) a.set_d(n, m);
    a.validate();
    if (!opt.scramble) return a;
    return random_filtered_iso(rng, a).target();
}

ChainMap random_filtered_iso(Rng& rng, const FilteredComplex& a) {
    const Field field = a.field();
    FilteredComplex b(field);
    std::map<int, Matrix> basis;
    for (int n : a.degrees()) {
        const auto w = a.weights(n);
        const std::size_t dim = w.size();
        Matrix t(field, dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j) {
                    t(i, j) = rng.nonzero_scalar(field);
                } else if ((w[i] < w[j] || (w[i] == w[j] && i < j)) && rng.chance(1, 2)) {
                    t(i, j) = rng.scalar(field);
                }
            }
        }
        std::vector<std::size_t> perm(dim);
        for (std::size_t k = 0; k < dim; ++k) perm[k] = k;
        for (std::size_t k = dim; k > 1; --k) std::swap(perm[k - 1], perm[rng.uniform(0, static_cast<int>(k) - 1)]);
        std::vector<int> nw;
        for (std::size_t k : perm) nw.push_back(w[k]);
        b.set_degree(n, nw);
        basis[n] = t.select_cols(perm);
    }
    for (int n : a.degrees()) {
        if (a.dim(n + 1) == 0) continue;
        b.set_d(n, basis.at(n + 1).inverse() * a.d(n) * basis.at(n));
    }
    b.validate();
    ChainMap iso(a, b);
    for (const auto& [n, m] : basis) iso.set(n, m.inverse());
    iso.validate();
    return iso;
}

ChainMap random_chain_map(Rng& rng, const FilteredComplex& a, const FilteredComplex& b) {
    const auto basis = hom_space(a, b);
    ChainMap f(a, b);
    std::map<int, Matrix> acc;
    for (int n : a.degrees()) acc[n] = Matrix(a.field(), b.dim(n), a.dim(n));
    for (const ChainMap& g : basis) {
        if (rng.chance(1, 3)) continue;
        const Scalar c = rng.scalar(a.field());
        for (auto& [n, m] : acc) m += g.at(n) * c;
    }
    for (auto& [n, m] : acc) f.set(n, m);
    return f;
}

Bicomplex random_bicomplex(Rng& rng, Field field, const BicomplexGenOptions& opt) {
    Bicomplex a(field);
    const int pieces = rng.uniform(0, opt.max_pieces);
    for (int k = 0; k < pieces; ++k) {
        const int kind = rng.uniform(0, 4);
        Bicomplex piece(field);
        if (kind == 0) {
            piece = single(field, {rng.uniform(opt.col_lo, opt.col_hi), rng.uniform(opt.row_lo, opt.row_hi)});
        } else if (kind == 1) {
            const Cell c{rng.uniform(opt.col_lo, opt.col_hi), rng.uniform(opt.row_lo, opt.row_hi - 1)};
            piece.set_cell(c, 1);
            piece.set_cell({c.p, c.q + 1}, 1);
            piece.set_d0(c, Matrix::identity(field, 1));
        } else if (kind == 2) {
            piece = rep_witness_cycle(field, 0, rng.uniform(opt.col_lo + 1, opt.col_hi),
                                      rng.uniform(opt.row_lo, opt.row_hi - 1));
        } else {
            const int r = rng.uniform(1, std::max(1, opt.max_r));
            if (opt.col_lo + r > opt.col_hi || opt.row_lo + r - 1 > opt.row_hi) continue;
            piece = rep_witness_cycle(field, r, rng.uniform(opt.col_lo + r, opt.col_hi),
                                      rng.uniform(opt.row_lo + r - 1, opt.row_hi));
        }
        bool fits = true;
        for (Cell c : piece.cells()) {
            if (static_cast<int>(a.dim(c) + piece.dim(c)) > opt.max_dim) fits = false;
        }
        if (fits) a = direct_sum(a, piece).sum;
    }
    a.validate();
    if (!opt.scramble) return a;
    return random_bicomplex_iso(rng, a).target();
}

BiMap random_bicomplex_iso(Rng& rng, const Bicomplex& a) {
    const Field field = a.field();
    Bicomplex b(field);
    std::map<Cell, Matrix> basis;
    for (Cell c : a.cells()) {
        const std::size_t dim = a.dim(c);
        Matrix t(field, dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j) {
                    t(i, j) = rng.nonzero_scalar(field);
                } else if (i < j && rng.chance(1, 2)) {
                    t(i, j) = rng.scalar(field);
                }
            }
        }
        std::vector<std::size_t> perm(dim);
        for (std::size_t k = 0; k < dim; ++k) perm[k] = k;
        for (std::size_t k = dim; k > 1; --k) std::swap(perm[k - 1], perm[rng.uniform(0, static_cast<int>(k) - 1)]);
        basis[c] = t.select_cols(perm);
        b.set_cell(c, dim);
    }
    for (Cell c : a.cells()) {
        const Cell u{c.p, c.q + 1}, l{c.p - 1, c.q};
        if (a.dim(u) > 0) b.set_d0(c, basis.at(u).inverse() * a.d0(c) * basis.at(c));
        if (a.dim(l) > 0) b.set_d1(c, basis.at(l).inverse() * a.d1(c) * basis.at(c));
    }
    b.validate();
    BiMap iso(a, b);
    for (const auto& [c, m] : basis) iso.set(c, m.inverse());
    iso.validate();
    return iso;
}

BiMap random_bimap(Rng& rng, const Bicomplex& a, const Bicomplex& b) {
    const auto basis = hom_space(a, b);
    std::map<Cell, Matrix> acc;
    for (Cell c : a.cells()) acc[c] = Matrix(a.field(), b.dim(c), a.dim(c));
    for (const BiMap& g : basis) {
        if (rng.chance(1, 3)) continue;
        const Scalar s = rng.scalar(a.field());
        for (auto& [c, m] : acc) m += g.at(c) * s;
    }
    BiMap f(a, b);
    for (auto& [c, m] : acc) f.set(c, m);
    return f;
}

}  // namespace specseq
