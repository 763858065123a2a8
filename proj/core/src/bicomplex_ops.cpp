#include "specseq/bicomplex_ops.hpp"

#include <optional>
#include <set>
#include <tuple>

namespace specseq {

namespace {

Cell up(Cell c) { return {c.p, c.q + 1}; }
Cell left(Cell c) { return {c.p - 1, c.q}; }
Cell plus(Cell a, Cell b) { return {a.p + b.p, a.q + b.q}; }
Cell minus(Cell a, Cell b) { return {a.p - b.p, a.q - b.q}; }

Scalar sign(Field f, int e) { return (e % 2 == 0) ? f.one() : -f.one(); }

Bicomplex moved(const Bicomplex& a, Cell by, const Scalar& s0, const Scalar& s1) {
    Bicomplex b(a.field());
    for (Cell c : a.cells()) b.set_cell(plus(c, by), a.dim(c));
    for (Cell c : a.cells()) {
        b.set_d0(plus(c, by), a.d0(c) * s0);
        b.set_d1(plus(c, by), a.d1(c) * s1);
    }
    return b;
}

BiMap moved(const BiMap& f, const Bicomplex& src, const Bicomplex& dst, Cell by) {
    BiMap g(src, dst);
    for (Cell c : f.cells()) g.set(plus(c, by), f.at(c));
    return g;
}

/// Layout of X tensor A: per output cell, the X cells contributing and
/// their offsets.
struct TensorLayout {
    std::map<Cell, std::map<Cell, std::size_t>> offsets;
    std::map<Cell, std::size_t> dims;
};

TensorLayout layout(const Bicomplex& x, const Bicomplex& a) {
    TensorLayout l;
    for (Cell xc : x.cells()) {
        for (Cell ac : a.cells()) {
            const Cell o = plus(xc, ac);
            l.offsets[o][xc] = 0;
        }
    }
    for (auto& [o, parts] : l.offsets) {
        std::size_t off = 0;
        for (auto& [xc, at] : parts) {
            at = off;
            off += x.dim(xc) * a.dim(minus(o, xc));
        }
        l.dims[o] = off;
    }
    return l;
}

}  // namespace

Bicomplex suspension(const Bicomplex& a, int r) {
    const Field f = a.field();
    return moved(a, {r, r - 1}, sign(f, r + 1), sign(f, r));
}

Bicomplex loops(const Bicomplex& a, int r) {
    const Field f = a.field();
    return moved(a, {-r, -r + 1}, sign(f, r + 1), sign(f, r));
}

BiMap suspension(const BiMap& f, int r) {
    return moved(f, suspension(f.source(), r), suspension(f.target(), r), {r, r - 1});
}

BiMap loops(const BiMap& f, int r) { return moved(f, loops(f.source(), r), loops(f.target(), r), {-r, -r + 1}); }

Bicomplex columns_from(const Bicomplex& a, int lo) {
    Bicomplex b(a.field());
    for (Cell c : a.cells()) {
        if (c.p >= lo) b.set_cell(c, a.dim(c));
    }
    for (Cell c : b.cells()) {
        b.set_d0(c, a.d0(c));
        if (c.p - 1 >= lo) b.set_d1(c, a.d1(c));
    }
    return b;
}

Bicomplex columns_upto(const Bicomplex& a, int hi) {
    Bicomplex b(a.field());
    for (Cell c : a.cells()) {
        if (c.p <= hi) b.set_cell(c, a.dim(c));
    }
    for (Cell c : b.cells()) {
        b.set_d0(c, a.d0(c));
        b.set_d1(c, a.d1(c));
    }
    return b;
}

BiMap columns_from(const BiMap& f, int lo) {
    BiMap g(columns_from(f.source(), lo), columns_from(f.target(), lo));
    for (Cell c : f.cells()) {
        if (c.p >= lo) g.set(c, f.at(c));
    }
    return g;
}

Bicomplex rep_witness_cycle(Field field, int r, int p, int q) {
    if (r < 0) throw PreconditionError("rep_witness_cycle: r must be >= 0");
    Bicomplex x(field);
    const Matrix id = Matrix::identity(field, 1);
    if (r == 0) {
        for (Cell c : {Cell{p, q}, Cell{p - 1, q}, Cell{p, q + 1}, Cell{p - 1, q + 1}}) x.set_cell(c, 1);
        x.set_d1({p, q}, id);
        x.set_d0({p, q}, id);
        x.set_d0({p - 1, q}, id);
        x.set_d1({p, q + 1}, id);
        return x;
    }
    for (int k = 0; k < r; ++k) {
        x.set_cell({p - k, q - k}, 1);
        x.set_cell({p - k - 1, q - k}, 1);
    }
    for (int k = 0; k < r; ++k) {
        x.set_d1({p - k, q - k}, id);
        if (k + 1 < r) x.set_d0({p - k - 1, q - k - 1}, id);
    }
    return x;
}

Bicomplex rep_witness_boundary(Field field, int r, int p, int q) {
    if (r < 0) throw PreconditionError("rep_witness_boundary: r must be >= 0");
    if (r == 0) return Bicomplex(field);
    if (r == 1) return rep_witness_cycle(field, 0, p, q);
    const Bicomplex us = direct_sum(rep_witness_cycle(field, r - 1, p + r - 1, q + r - 1), rep_witness_cycle(field, 0, p, q)).sum;
    return direct_sum(us, rep_witness_cycle(field, r - 1, p - 1, q)).sum;
}

BiMap map_from_witness(const Bicomplex& a, int r, int p, int q, const Matrix& tuple) {
    const Field field = a.field();
    const Bicomplex x = rep_witness_cycle(field, r, p, q);
    const WitnessSlots s = witness_slots(a, r, p, q);
    require_shape(tuple, s.total, 1, "witness tuple");
    if (!witness_cycles(a, r, p, q).contains(tuple)) throw PreconditionError("map_from_witness: not a witness cycle");
    BiMap f(x, a);
    if (r == 0) {
        const Cell g{p, q};
        f.set(g, tuple);
        f.set(left(g), a.d1(g) * tuple);
        f.set(up(g), a.d0(g) * tuple);
        f.set(up(left(g)), a.d0(left(g)) * a.d1(g) * tuple);
    } else {
        for (int k = 0; k < r; ++k) {
            const Cell c = s.cells[k];
            const Matrix ak = tuple.block(s.offsets[k], 0, a.dim(c), 1);
            f.set(c, ak);
            f.set(left(c), a.d1(c) * ak);
        }
    }
    f.validate();
    return f;
}

Matrix witness_of(const BiMap& f, int r, int p, int q) {
    const Bicomplex& a = f.target();
    const WitnessSlots s = witness_slots(a, r, p, q);
    Matrix t(a.field(), s.total, 1);
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
        const Cell c = s.cells[k];
        if (f.source().dim(c) != 1) throw PreconditionError("witness_of: source is not ZW_r(p, q)");
        t.set_block(s.offsets[k], 0, f.at(c));
    }
    return t;
}

BiMap witness_phi(Field field, int r, int p, int q) {
    if (r < 0) throw PreconditionError("witness_phi: r must be >= 0");
    const Bicomplex z = rep_witness_cycle(field, r, p, q);
    if (r == 0) return zero_map(z, Bicomplex(field));
    const Cell e{p, q - 1};
    Bicomplex bw(field);
    Matrix universal;
    if (r == 1) {
        bw = rep_witness_cycle(field, 0, p, q - 1);
        universal = witness_of(identity_map(bw), 0, p, q - 1);
    } else {
        const BiDirectSum us = direct_sum(rep_witness_cycle(field, r - 1, p + r - 1, q + r - 2),
                                          rep_witness_cycle(field, 0, p, q - 1));
        const BiDirectSum all = direct_sum(us.sum, rep_witness_cycle(field, r - 1, p - 1, q - 1));
        bw = all.sum;
        const BiMap iu = compose(all.in1, us.in1);
        const BiMap is = compose(all.in1, us.in2);
        const Matrix cu = witness_of(iu, r - 1, p + r - 1, q + r - 2);
        const Matrix ce = witness_of(is, 0, e.p, e.q);
        const Matrix cl = witness_of(all.in2, r - 1, p - 1, q - 1);
        universal = vstack(vstack(cu, ce), cl);
    }
    const WitnessBoundaries wb = witness_boundaries(bw, r, p, q);
    return map_from_witness(bw, r, p, q, wb.w * universal);
}

std::vector<BiMap> hom_space(const Bicomplex& x, const Bicomplex& a) {
    if (x.field() != a.field()) throw FieldMismatch("hom_space over different fields");
    const Field field = x.field();
    struct Var {
        Cell c;
        std::size_t i, j;
    };
    std::vector<Var> vars;
    std::map<std::tuple<Cell, std::size_t, std::size_t>, std::size_t> index;
    for (Cell c : x.cells()) {
        for (std::size_t j = 0; j < x.dim(c); ++j) {
            for (std::size_t i = 0; i < a.dim(c); ++i) {
                index[{c, i, j}] = vars.size();
                vars.push_back({c, i, j});
            }
        }
    }
    auto var = [&](Cell c, std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        auto it = index.find({c, i, j});
        if (it == index.end()) return std::nullopt;
        return it->second;
    };
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    // f(next) dx = da f(c), for both differentials.
    auto add = [&](Cell c, Cell next, const Matrix& dx, const Matrix& da) {
        for (std::size_t i = 0; i < a.dim(next); ++i) {
            for (std::size_t j = 0; j < x.dim(c); ++j) {
                std::vector<std::pair<std::size_t, Scalar>> row;
                for (std::size_t k = 0; k < x.dim(next); ++k) {
                    if (auto v = var(next, i, k); v && !dx(k, j).is_zero()) row.emplace_back(*v, dx(k, j));
                }
                for (std::size_t k = 0; k < a.dim(c); ++k) {
                    if (auto v = var(c, k, j); v && !da(i, k).is_zero()) row.emplace_back(*v, -da(i, k));
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    };
    for (Cell c : x.cells()) {
        add(c, up(c), x.d0(c), a.d0(c));
        add(c, left(c), x.d1(c), a.d1(c));
    }
    Matrix eq(field, rows.size(), vars.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [v, c] : rows[r]) eq(r, v) += c;
    }
    const Matrix k = eq.kernel();
    std::vector<BiMap> out;
    for (std::size_t col = 0; col < k.cols(); ++col) {
        std::map<Cell, Matrix> comps;
        for (Cell c : x.cells()) comps[c] = Matrix(field, a.dim(c), x.dim(c));
        for (std::size_t v = 0; v < vars.size(); ++v) comps[vars[v].c](vars[v].i, vars[v].j) = k(v, col);
        BiMap f(x, a);
        for (auto& [c, m] : comps) f.set(c, std::move(m));
        out.push_back(std::move(f));
    }
    return out;
}

Bicomplex tensor(const Bicomplex& x, const Bicomplex& a) {
    if (x.field() != a.field()) throw FieldMismatch("tensor over different fields");
    const Field field = x.field();
    const TensorLayout l = layout(x, a);
    Bicomplex t(field);
    for (const auto& [o, d] : l.dims) t.set_cell(o, d);
    auto offset = [&](Cell o, Cell xc) -> std::optional<std::size_t> {
        auto it = l.offsets.find(o);
        if (it == l.offsets.end()) return std::nullopt;
        auto jt = it->second.find(xc);
        if (jt == it->second.end()) return std::nullopt;
        return jt->second;
    };
    for (const auto& [o, parts] : l.offsets) {
        Matrix d0(field, t.dim(up(o)), t.dim(o));
        Matrix d1(field, t.dim(left(o)), t.dim(o));
        for (const auto& [xc, off] : parts) {
            const Cell ac = minus(o, xc);
            const Matrix ix = Matrix::identity(field, x.dim(xc));
            const Matrix ia = Matrix::identity(field, a.dim(ac));
            if (auto to = offset(up(o), up(xc)); to && x.dim(up(xc)) > 0) d0.set_block(*to, off, kron(x.d0(xc), ia));
            if (auto to = offset(up(o), xc); to && a.dim(up(ac)) > 0) {
                d0.set_block(*to, off, kron(ix, a.d0(ac)) * sign(field, xc.q));
            }
            if (auto to = offset(left(o), left(xc)); to && x.dim(left(xc)) > 0) d1.set_block(*to, off, kron(x.d1(xc), ia));
            if (auto to = offset(left(o), xc); to && a.dim(left(ac)) > 0) {
                d1.set_block(*to, off, kron(ix, a.d1(ac)) * sign(field, xc.p));
            }
        }
        t.set_d0(o, d0);
        t.set_d1(o, d1);
    }
    t.validate();
    return t;
}

BiMap tensor_map(const BiMap& f, const BiMap& g) {
    const Bicomplex src = tensor(f.source(), g.source());
    const Bicomplex dst = tensor(f.target(), g.target());
    const TensorLayout ls = layout(f.source(), g.source());
    const TensorLayout lt = layout(f.target(), g.target());
    const Field field = src.field();
    BiMap h(src, dst);
    for (const auto& [o, parts] : ls.offsets) {
        auto it = lt.offsets.find(o);
        if (it == lt.offsets.end()) continue;
        Matrix m(field, dst.dim(o), src.dim(o));
        for (const auto& [xc, off] : parts) {
            auto jt = it->second.find(xc);
            if (jt == it->second.end()) continue;
            m.set_block(jt->second, off, kron(f.at(xc), g.at(minus(o, xc))));
        }
        h.set(o, m);
    }
    h.validate();
    return h;
}

namespace {

Bicomplex cone_factor(Field field, int r) {
    if (r >= 1) return rep_witness_cycle(field, r, r, r - 1);
    Bicomplex e(field);
    e.set_cell({0, -1}, 1);
    e.set_cell({0, 0}, 1);
    e.set_d0({0, -1}, Matrix::identity(field, 1));
    return e;
}

Cell cone_top(int r) { return r >= 1 ? Cell{r, r - 1} : Cell{0, -1}; }

}  // namespace

Bicomplex cone(const Bicomplex& a, int r) {
    if (r < 0) throw PreconditionError("cone: r must be >= 0");
    return tensor(cone_factor(a.field(), r), a);
}

BiMap psi(const Bicomplex& a, int r) {
    if (r < 0) throw PreconditionError("psi: r must be >= 0");
    const Field field = a.field();
    const Bicomplex x = cone_factor(field, r);
    const Bicomplex c = tensor(x, a);
    const TensorLayout l = layout(x, a);
    const Cell top = cone_top(r);
    const Bicomplex s = suspension(a, r);
    BiMap f(c, s);
    for (const auto& [o, parts] : l.offsets) {
        auto it = parts.find(top);
        if (it == parts.end()) continue;
        Matrix m(field, s.dim(o), c.dim(o));
        m.set_block(0, it->second, Matrix::identity(field, s.dim(o)));
        f.set(o, m);
    }
    f.validate();
    return f;
}

Bicomplex nw(Field field, int r) {
    if (r < 1) throw PreconditionError("nw: r must be >= 1");
    Bicomplex x = rep_witness_cycle(field, r, r, r - 1);
    x.set_cell({r, r - 1}, 0);
    return x;
}

BiMap omega_i_inclusion(const Bicomplex& a, int r) {
    if (r < 1) throw PreconditionError("omega_i_inclusion: r must be >= 1");
    const Field field = a.field();
    BiMap i(single(field, {0, 0}), nw(field, r));
    i.set({0, 0}, Matrix::identity(field, 1));
    i.validate();
    const BiMap t = tensor_map(loops(i, r), identity_map(a));
    const Bicomplex la = loops(a, r);
    if (!(t.source() == la)) throw InternalError("Omega^r R tensor A differs from Omega^r A");
    BiMap out(la, t.target());
    for (Cell c : t.cells()) out.set(c, t.at(c));
    out.validate();
    return out;
}

SubBicomplex subcomplex(const Bicomplex& y, const std::map<Cell, Subspace>& spaces) {
    const Field field = y.field();
    Bicomplex s(field);
    for (const auto& [c, k] : spaces) {
        if (k.ambient_dim() != y.dim(c)) throw DimensionMismatch("subcomplex: ambient mismatch");
        s.set_cell(c, k.dim());
    }
    auto restrict = [&](Cell c, Cell next, const Matrix& d) -> std::optional<Matrix> {
        const Subspace& k = spaces.at(c);
        const Matrix im = d * k.basis();
        auto it = spaces.find(next);
        if (it == spaces.end()) {
            if (!im.is_zero()) throw PreconditionError("subcomplex: family is not stable under the differentials");
            return std::nullopt;
        }
        if (!it->second.contains(im)) throw PreconditionError("subcomplex: family is not stable under the differentials");
        return it->second.coordinates(im);
    };
    for (const auto& [c, k] : spaces) {
        if (k.dim() == 0) continue;
        if (auto m = restrict(c, up(c), y.d0(c)); m && s.dim(up(c)) > 0) s.set_d0(c, *m);
        if (auto m = restrict(c, left(c), y.d1(c)); m && s.dim(left(c)) > 0) s.set_d1(c, *m);
    }
    s.validate();
    SubBicomplex out{s, BiMap(s, y)};
    for (const auto& [c, k] : spaces) {
        if (k.dim() > 0) out.inclusion.set(c, k.basis());
    }
    out.inclusion.validate();
    return out;
}

QuotientBicomplex quotient_complex(const Bicomplex& y, const std::map<Cell, Subspace>& spaces) {
    const Field field = y.field();
    std::map<Cell, Quotient> qs;
    for (Cell c : y.cells()) {
        auto it = spaces.find(c);
        const Subspace k = it == spaces.end() ? Subspace::zero(field, y.dim(c)) : it->second;
        if (k.ambient_dim() != y.dim(c)) throw DimensionMismatch("quotient_complex: ambient mismatch");
        qs.emplace(c, quotient(Subspace::full(field, y.dim(c)), k));
    }
    auto in = [&](Cell c) {
        auto it = spaces.find(c);
        return it == spaces.end() ? Subspace::zero(field, y.dim(c)) : it->second;
    };
    for (const auto& [c, k] : spaces) {
        if (!in(up(c)).contains(y.d0(c) * k.basis()) || !in(left(c)).contains(y.d1(c) * k.basis())) {
            throw PreconditionError("quotient_complex: family is not stable under the differentials");
        }
    }
    Bicomplex qc(field);
    for (const auto& [c, q] : qs) qc.set_cell(c, q.dim);
    for (const auto& [c, q] : qs) {
        if (q.dim == 0) continue;
        if (auto it = qs.find(up(c)); it != qs.end() && it->second.dim > 0) {
            qc.set_d0(c, it->second.classes(y.d0(c) * q.representatives()));
        }
        if (auto it = qs.find(left(c)); it != qs.end() && it->second.dim > 0) {
            qc.set_d1(c, it->second.classes(y.d1(c) * q.representatives()));
        }
    }
    qc.validate();
    QuotientBicomplex out{qc, BiMap(y, qc)};
    for (const auto& [c, q] : qs) {
        if (q.dim > 0) out.projection.set(c, q.projector);
    }
    out.projection.validate();
    return out;
}

SubBicomplex kernel(const BiMap& f) {
    std::map<Cell, Subspace> ks;
    for (Cell c : f.source().cells()) ks[c] = kernel_basis(f.at(c));
    return subcomplex(f.source(), ks);
}

QuotientBicomplex cokernel(const BiMap& f) {
    std::map<Cell, Subspace> im;
    for (Cell c : f.target().cells()) im[c] = Subspace::span(f.at(c));
    return quotient_complex(f.target(), im);
}

BiPushout pushout(const BiMap& f, const BiMap& g) {
    if (!(f.source() == g.source())) throw DimensionMismatch("pushout: legs have different sources");
    const BiDirectSum ab = direct_sum(f.target(), g.target());
    std::map<Cell, Subspace> im;
    for (Cell c : ab.sum.cells()) im[c] = Subspace::span(vstack(f.at(c), -g.at(c)));
    const QuotientBicomplex q = quotient_complex(ab.sum, im);
    return {q.complex, compose(q.projection, ab.in1), compose(q.projection, ab.in2)};
}

BiPullback pullback(const BiMap& f, const BiMap& g) {
    if (!(f.target() == g.target())) throw DimensionMismatch("pullback: legs have different targets");
    const BiDirectSum ab = direct_sum(f.source(), g.source());
    std::map<Cell, Subspace> ks;
    for (Cell c : ab.sum.cells()) ks[c] = kernel_basis(hstack(f.at(c), -g.at(c)));
    const SubBicomplex s = subcomplex(ab.sum, ks);
    return {s.complex, compose(ab.pr1, s.inclusion), compose(ab.pr2, s.inclusion)};
}

}  // namespace specseq
