#include "specseq/filtered_ops.hpp"

#include <optional>
#include <set>
#include <tuple>

#include "specseq/spectral.hpp"

namespace specseq {

namespace {

std::vector<int> shifted(std::span<const int> ws, int by) {
    std::vector<int> out(ws.begin(), ws.end());
    for (int& w : out) w += by;
    return out;
}

FilteredComplex reindex(const FilteredComplex& a, int degree_offset, int weight_offset, bool negate) {
    FilteredComplex out(a.field());
    for (int n : a.degrees()) out.set_degree(n - degree_offset, shifted(a.weights(n), weight_offset));
    for (int n : a.degrees()) {
        const Matrix d = a.d(n);
        out.set_d(n - degree_offset, negate ? -d : d);
    }
    return out;
}

/// Re-express `y` (given on a basis of each degree) in adapted bases for
/// the flags returned by `flag(n, p)`, within weights [lo(n), hi(n)].
struct Rebased {
    FilteredComplex complex;
    std::map<int, Matrix> basis;  // old coordinates of the new basis
};

template <class Lo, class Hi, class Flag>
Rebased rebase(Field field, const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& d, Lo lo, Hi hi,
               Flag flag) {
    Rebased out{FilteredComplex(field), {}};
    for (const auto& [n, dim] : dims) {
        if (dim == 0) continue;
        AdaptedBasis ab = adapted_basis(field, dim, lo(n), hi(n), [&](int p) { return flag(n, p); });
        out.complex.set_degree(n, ab.weights);
        out.basis[n] = std::move(ab.basis);
    }
    for (const auto& [n, b] : out.basis) {
        auto next = out.basis.find(n + 1);
        auto dn = d.find(n);
        if (next == out.basis.end() || dn == d.end()) continue;
        out.complex.set_d(n, next->second.inverse() * dn->second * b);
    }
    return out;
}

}  // namespace

FilteredComplex suspension(const FilteredComplex& a, int r) { return reindex(a, 1, r, true); }

FilteredComplex loops(const FilteredComplex& a, int r) { return reindex(a, -1, -r, true); }

ChainMap suspension(const ChainMap& f, int r) {
    ChainMap g(suspension(f.source(), r), suspension(f.target(), r));
    for (int n : f.degrees()) g.set(n - 1, f.at(n));
    return g;
}

ChainMap loops(const ChainMap& f, int r) {
    ChainMap g(loops(f.source(), r), loops(f.target(), r));
    for (int n : f.degrees()) g.set(n + 1, f.at(n));
    return g;
}

FilteredComplex shift(const FilteredComplex& a, int r) {
    FilteredComplex out(a.field());
    for (int n : a.degrees()) out.set_degree(n, shifted(a.weights(n), -r * n));
    for (int n : a.degrees()) out.set_d(n, a.d(n));
    return out;
}

FilteredComplex decalage(const FilteredComplex& a, int r) {
    if (r < 0) throw PreconditionError("decalage: r must be >= 0");
    const Range w = a.weight_range();
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> d;
    for (int n : a.degrees()) {
        dims[n] = a.dim(n);
        d[n] = a.d(n);
    }
    Rebased rb = rebase(
        a.field(), dims, d, [&](int n) { return w.lo + r * n; }, [&](int n) { return w.hi + r + r * n; },
        [&](int n, int p) { return cycles(a, r, p - r * n, n); });
    rb.complex.validate();
    return rb.complex;
}

Cone cone(const ChainMap& f, int r) {
    const FilteredComplex& a = f.source();
    const FilteredComplex& b = f.target();
    const Field field = a.field();
    FilteredComplex c(field);
    std::set<int> ns;
    for (int n : a.degrees()) ns.insert(n - 1);
    for (int n : b.degrees()) ns.insert(n);
    for (int n : ns) {
        std::vector<int> w = shifted(a.weights(n + 1), r);
        w.insert(w.end(), b.weights(n).begin(), b.weights(n).end());
        c.set_degree(n, std::move(w));
    }
    for (int n : ns) {
        const std::size_t a1 = a.dim(n + 1), a2 = a.dim(n + 2), bn = b.dim(n), b1 = b.dim(n + 1);
        Matrix dc(field, a2 + b1, a1 + bn);
        dc.set_block(0, 0, -a.d(n + 1));
        dc.set_block(a2, 0, f.at(n + 1));
        dc.set_block(a2, a1, b.d(n));
        c.set_d(n, dc);
    }
    c.validate();
    Cone out{c, ChainMap(b, c), ChainMap(c, suspension(a, r))};
    for (int n : ns) {
        const std::size_t a1 = a.dim(n + 1), bn = b.dim(n);
        Matrix in(field, a1 + bn, bn);
        in.set_block(a1, 0, Matrix::identity(field, bn));
        out.incl.set(n, in);
        Matrix pr(field, a1, a1 + bn);
        pr.set_block(0, 0, Matrix::identity(field, a1));
        out.proj.set(n, pr);
    }
    return out;
}

ChainMap omega_cone_fibration(const FilteredComplex& a, int r) {
    const FilteredComplex domain = loops(cone(identity_map(a), r).complex, r);
    ChainMap pi(domain, a);
    for (int n : a.degrees()) {
        Matrix m(a.field(), a.dim(n), domain.dim(n));
        m.set_block(0, 0, Matrix::identity(a.field(), a.dim(n)));
        pi.set(n, m);
    }
    pi.validate();
    for (int k = 0; k <= r; ++k) {
        if (!is_zk_surjective(pi, k)) {
            throw InternalError("cone fibration is not Z_" + std::to_string(k) + "-surjective");
        }
    }
    return pi;
}

FilteredComplex rep_cycle(Field field, int r, int p, int n) {
    if (r < 0) throw PreconditionError("rep_cycle: r must be >= 0");
    FilteredComplex z(field);
    z.set_degree(n, {p});
    z.set_degree(n + 1, {p - r});
    z.set_d(n, Matrix::identity(field, 1));
    return z;
}

FilteredComplex rep_boundary(Field field, int r, int p, int n) {
    if (r < 0) throw PreconditionError("rep_boundary: r must be >= 0");
    if (r == 0) return rep_cycle(field, 0, p - 1, n);
    FilteredComplex b(field);
    b.set_degree(n - 1, {p + r - 1});
    b.set_degree(n, {p, p - 1});
    b.set_degree(n + 1, {p - r});
    b.set_d(n - 1, Matrix::from_ints(field, {{1}, {0}}));
    b.set_d(n, Matrix::from_ints(field, {{0, 1}}));
    return b;
}

ChainMap phi(Field field, int r, int p, int n) {
    ChainMap f(rep_cycle(field, r, p, n), rep_boundary(field, r, p, n));
    if (r == 0) {
        f.set(n, Matrix::identity(field, 1));
    } else {
        f.set(n, Matrix::from_ints(field, {{1}, {1}}));
    }
    f.set(n + 1, Matrix::identity(field, 1));
    f.validate();
    return f;
}

std::vector<ChainMap> hom_space(const FilteredComplex& x, const FilteredComplex& a) {
    if (x.field() != a.field()) throw FieldMismatch("hom_space over different fields");
    const Field field = x.field();
    struct Var {
        int n;
        std::size_t i, j;
    };
    std::vector<Var> vars;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
    for (int n : x.degrees()) {
        const auto wx = x.weights(n);
        const auto wa = a.weights(n);
        for (std::size_t j = 0; j < wx.size(); ++j) {
            for (std::size_t i = 0; i < wa.size(); ++i) {
                if (wa[i] > wx[j]) continue;
                index[{n, i, j}] = vars.size();
                vars.push_back({n, i, j});
            }
        }
    }
    auto var = [&](int n, std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        auto it = index.find({n, i, j});
        if (it == index.end()) return std::nullopt;
        return it->second;
    };
    std::set<int> ns;
    for (int n : x.degrees()) {
        ns.insert(n);
        ns.insert(n - 1);
    }
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    for (int n : ns) {
        const Matrix dx = x.d(n), da = a.d(n);
        for (std::size_t i = 0; i < a.dim(n + 1); ++i) {
            for (std::size_t j = 0; j < x.dim(n); ++j) {
                std::vector<std::pair<std::size_t, Scalar>> row;
                for (std::size_t k = 0; k < x.dim(n + 1); ++k) {
                    if (auto v = var(n + 1, i, k); v && !dx(k, j).is_zero()) row.emplace_back(*v, dx(k, j));
                }
                for (std::size_t k = 0; k < a.dim(n); ++k) {
                    if (auto v = var(n, k, j); v && !da(i, k).is_zero()) row.emplace_back(*v, -da(i, k));
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    Matrix eq(field, rows.size(), vars.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [v, c] : rows[r]) eq(r, v) += c;
    }
    const Matrix k = eq.kernel();
    std::vector<ChainMap> out;
    for (std::size_t c = 0; c < k.cols(); ++c) {
        std::map<int, Matrix> comps;
        for (int n : x.degrees()) comps[n] = Matrix(field, a.dim(n), x.dim(n));
        for (std::size_t v = 0; v < vars.size(); ++v) comps[vars[v].n](vars[v].i, vars[v].j) = k(v, c);
        ChainMap f(x, a);
        for (auto& [n, m] : comps) f.set(n, std::move(m));
        out.push_back(std::move(f));
    }
    return out;
}

Subcomplex subcomplex(const FilteredComplex& y, const std::map<int, Subspace>& spaces) {
    const Field field = y.field();
    const Range w = y.weight_range();
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> d;
    for (const auto& [n, k] : spaces) {
        if (k.ambient_dim() != y.dim(n)) throw DimensionMismatch("subcomplex: ambient mismatch");
        dims[n] = k.dim();
    }
    for (const auto& [n, k] : spaces) {
        auto next = spaces.find(n + 1);
        const Matrix image = y.d(n) * k.basis();
        if (next == spaces.end()) {
            if (!image.is_zero()) throw PreconditionError("subcomplex: family is not d-stable");
            continue;
        }
        if (!next->second.contains(image)) throw PreconditionError("subcomplex: family is not d-stable");
        d[n] = next->second.coordinates(image);
    }
    Rebased rb = rebase(
        field, dims, d, [&](int) { return w.lo; }, [&](int) { return w.hi; },
        [&](int n, int p) {
            const Subspace& k = spaces.at(n);
            return Subspace::span(k.coordinates(intersect(k, y.filtration(p, n)).basis()));
        });
    Subcomplex out{rb.complex, ChainMap(rb.complex, y)};
    for (const auto& [n, b] : rb.basis) out.inclusion.set(n, spaces.at(n).basis() * b);
    out.inclusion.validate();
    return out;
}

QuotientComplex quotient_complex(const FilteredComplex& y, const std::map<int, Subspace>& spaces) {
    const Field field = y.field();
    const Range w = y.weight_range();
    std::map<int, Quotient> qs;
    std::map<int, std::size_t> dims;
    for (int n : y.degrees()) {
        auto it = spaces.find(n);
        const Subspace k = it == spaces.end() ? Subspace::zero(field, y.dim(n)) : it->second;
        if (k.ambient_dim() != y.dim(n)) throw DimensionMismatch("quotient_complex: ambient mismatch");
        qs.emplace(n, quotient(Subspace::full(field, y.dim(n)), k));
        dims[n] = qs.at(n).dim;
    }
    for (const auto& [n, k] : spaces) {
        auto next = spaces.find(n + 1);
        const Matrix image = y.d(n) * k.basis();
        const bool stable = next == spaces.end() ? image.is_zero() : next->second.contains(image);
        if (!stable) throw PreconditionError("quotient_complex: family is not d-stable");
    }
    std::map<int, Matrix> d;
    for (const auto& [n, q] : qs) {
        auto next = qs.find(n + 1);
        if (next == qs.end() || q.dim == 0 || next->second.dim == 0) continue;
        d[n] = next->second.classes(y.d(n) * q.representatives());
    }
    Rebased rb = rebase(
        field, dims, d, [&](int) { return w.lo; }, [&](int) { return w.hi; },
        [&](int n, int p) { return Subspace::span(qs.at(n).classes(y.filtration(p, n).basis())); });
    QuotientComplex out{rb.complex, ChainMap(y, rb.complex)};
    for (const auto& [n, b] : rb.basis) out.projection.set(n, b.inverse() * qs.at(n).projector);
    out.projection.validate();
    return out;
}

Subcomplex kernel(const ChainMap& f) {
    std::map<int, Subspace> ks;
    for (int n : f.source().degrees()) ks[n] = kernel_basis(f.at(n));
    return subcomplex(f.source(), ks);
}

QuotientComplex cokernel(const ChainMap& f) {
    std::map<int, Subspace> im;
    for (int n : f.target().degrees()) im[n] = Subspace::span(f.at(n));
    return quotient_complex(f.target(), im);
}

Pushout pushout(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source())) throw DimensionMismatch("pushout: legs have different sources");
    if (!g.is_injective() || !is_strict(g)) throw PreconditionError("pushout: the second leg must be strict and injective");
    const DirectSum ab = direct_sum(f.target(), g.target());
    std::map<int, Subspace> im;
    for (int n : ab.sum.degrees()) im[n] = Subspace::span(vstack(f.at(n), -g.at(n)));
    QuotientComplex q = quotient_complex(ab.sum, im);
    return {q.complex, compose(q.projection, ab.in1), compose(q.projection, ab.in2)};
}

Pullback pullback(const ChainMap& f, const ChainMap& g) {
    if (!(f.target() == g.target())) throw DimensionMismatch("pullback: legs have different targets");
    const DirectSum ab = direct_sum(f.source(), g.source());
    std::map<int, Subspace> ks;
    for (int n : ab.sum.degrees()) ks[n] = kernel_basis(hstack(f.at(n), -g.at(n)));
    Subcomplex s = subcomplex(ab.sum, ks);
    return {s.complex, compose(ab.pr1, s.inclusion), compose(ab.pr2, s.inclusion)};
}

bool is_strict(const ChainMap& f) {
    const Range w = f.source().weight_range().join(f.target().weight_range());
    if (w.empty()) return true;
    for (int n : f.source().degrees()) {
        for (int p = w.lo - 1; p <= w.hi; ++p) {
            const Subspace pre = preimage(f.at(n), f.target().filtration(p, n));
            if (!f.source().filtration(p, n).contains(pre)) return false;
        }
    }
    return true;
}

bool is_effective_mono(const ChainMap& f) {
    if (!f.is_injective()) return false;
    const QuotientComplex c = cokernel(f);
    const Subcomplex k = kernel(c.projection);
    ChainMap cmp(f.source(), k.complex);
    for (int n : f.source().degrees()) {
        auto x = k.inclusion.at(n).solve(f.at(n));
        if (!x) throw InternalError("image of f is not inside ker(coker f)");
        cmp.set(n, *x);
    }
    return is_filtered_iso(cmp);
}

ChainMap alpha_morphism(Field field, int s, int p, int n) {
    if (s < 0) throw PreconditionError("alpha_morphism: s must be >= 0");
    ChainMap a(rep_cycle(field, s + 1, p + 1, n), rep_cycle(field, s, p, n));
    a.set(n, Matrix::identity(field, 1));
    a.set(n + 1, Matrix::identity(field, 1));
    a.validate();
    return a;
}

ChainMap beta_morphism(Field field, int s, int p, int n) {
    if (s < 1) throw PreconditionError("beta_morphism: s must be >= 1");
    const DirectSum src = direct_sum(rep_cycle(field, s - 1, p, n), pure(field, p - s, n + 1));
    ChainMap b(src.sum, rep_cycle(field, s, p, n));
    b.set(n, Matrix::identity(field, 1));
    b.set(n + 1, Matrix::from_ints(field, {{1, 1}}));
    b.validate();
    return b;
}

ChainMap gamma_morphism(Field field, int s, int p, int n) {
    if (s == 0) return alpha_morphism(field, 0, p, n);
    const ChainMap a = alpha_morphism(field, s, p, n);
    const ChainMap b = beta_morphism(field, s, p, n);
    const DirectSum src = direct_sum(a.source(), b.source());
    ChainMap g = copair(a, b, src);
    g.validate();
    return g;
}

}  // namespace specseq
