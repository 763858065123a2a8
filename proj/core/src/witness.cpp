#include "specseq/witness.hpp"

#include <set>

namespace specseq {

namespace {

Subspace stacked(Field field, const std::vector<Subspace>& parts) {
    std::size_t rows = 0, cols = 0;
    for (const auto& s : parts) {
        rows += s.ambient_dim();
        cols += s.dim();
    }
    Matrix m(field, rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& s : parts) {
        m.set_block(r0, c0, s.basis());
        r0 += s.ambient_dim();
        c0 += s.dim();
    }
    return Subspace::span(m);
}

/// Puts `v` (a vector in cell slot 0) into the slots at (p, q).
Matrix in_slot0(const WitnessSlots& s, const Matrix& v) {
    Matrix out(v.field(), s.total, v.cols());
    out.set_block(0, 0, v);
    return out;
}

}  // namespace

WitnessSlots witness_slots(const Bicomplex& a, int r, int p, int q) {
    if (r < 0) throw PreconditionError("witness_slots: r must be >= 0");
    WitnessSlots s;
    const int n = r == 0 ? 1 : r;
    for (int k = 0; k < n; ++k) {
        const Cell c{p - k, q - k};
        s.cells.push_back(c);
        s.offsets.push_back(s.total);
        s.total += a.dim(c);
    }
    return s;
}

Subspace witness_cycles(const Bicomplex& a, int r, int p, int q) {
    const Field field = a.field();
    const WitnessSlots s = witness_slots(a, r, p, q);
    if (r == 0) return Subspace::full(field, s.total);
    std::vector<Cell> rows;
    std::vector<std::size_t> row_off;
    std::size_t nrows = 0;
    for (int k = 0; k < r; ++k) {
        const Cell c{p - k, q - k + 1};
        rows.push_back(c);
        row_off.push_back(nrows);
        nrows += a.dim(c);
    }
    Matrix m(field, nrows, s.total);
    for (int k = 0; k < r; ++k) {
        const Cell ak = s.cells[k];
        m.set_block(row_off[k], s.offsets[k], a.d0(ak));
        if (k >= 1) m.set_block(row_off[k], s.offsets[k - 1], -a.d1(s.cells[k - 1]));
    }
    return kernel_basis(m);
}

WitnessBoundaries witness_boundaries(const Bicomplex& a, int r, int p, int q) {
    const Field field = a.field();
    const WitnessSlots target = witness_slots(a, r, p, q);
    WitnessBoundaries out;
    const Cell e{p, q - 1};
    if (r == 0) {
        out.source = Subspace::zero(field, 0);
        out.w = Matrix(field, target.total, 0);
        out.image = Subspace::zero(field, target.total);
        return out;
    }
    if (r == 1) {
        out.source = Subspace::full(field, a.dim(e));
        out.w = a.d0(e);
    } else {
        const WitnessSlots upper = witness_slots(a, r - 1, p + r - 1, q + r - 2);
        const WitnessSlots lower = witness_slots(a, r - 1, p - 1, q - 1);
        const std::size_t de = a.dim(e);
        out.source = stacked(field, {witness_cycles(a, r - 1, p + r - 1, q + r - 2), Subspace::full(field, de),
                                     witness_cycles(a, r - 1, p - 1, q - 1)});
        Matrix w(field, target.total, upper.total + de + lower.total);
        // c_{r-2} sits in cell (p+1, q); its d1 lands in slot 0.
        w.set_block(0, upper.offsets[r - 2], a.d1(upper.cells[r - 2]));
        w.set_block(0, upper.total, a.d0(e));
        w.set_block(target.offsets[1], upper.total, a.d1(e));
        for (int k = 0; k + 1 < r; ++k) {
            const std::size_t dk = a.dim(lower.cells[k]);
            w.set_block(target.offsets[k + 1], upper.total + de + lower.offsets[k], Matrix::identity(field, dk));
        }
        out.w = std::move(w);
    }
    out.image = image(out.w, out.source);
    if (!witness_cycles(a, r, p, q).contains(out.image)) {
        throw InternalError("w_" + std::to_string(r) + " leaves ZW_" + std::to_string(r) + " at (" + std::to_string(p) +
                            "," + std::to_string(q) + ")");
    }
    return out;
}

PageTable page(const Bicomplex& a, int r) {
    if (r < 0) throw PreconditionError("page: r must be >= 0");
    PageTable t;
    t.r = r;
    for (Cell c : a.cells()) {
        const Subspace z = witness_cycles(a, r, c.p, c.q);
        if (z.is_zero()) continue;
        Quotient qt = quotient(z, witness_boundaries(a, r, c.p, c.q).image);
        if (qt.dim == 0) continue;
        t.entries[c] = PageEntry{qt.dim, std::move(qt)};
    }
    for (const auto& [c, e] : t.entries) {
        const Cell to = t.target_of(c);
        auto it = t.entries.find(to);
        if (it == t.entries.end()) continue;
        const Matrix x = e.section();
        Matrix image_tuple;
        if (r == 0) {
            image_tuple = a.d0(c) * x;
        } else {
            const WitnessSlots s = witness_slots(a, r, c.p, c.q);
            const Cell last = s.cells[r - 1];
            const Matrix top = x.block(s.offsets[r - 1], 0, a.dim(last), x.cols());
            image_tuple = in_slot0(witness_slots(a, r, to.p, to.q), a.d1(last) * top);
        }
        t.differentials[c] = it->second.quot.classes(image_tuple);
    }
    return t;
}

Matrix on_slots(const BiMap& f, int r, int p, int q) {
    const WitnessSlots s = witness_slots(f.source(), r, p, q);
    const WitnessSlots t = witness_slots(f.target(), r, p, q);
    Matrix m(f.source().field(), t.total, s.total);
    for (std::size_t k = 0; k < s.cells.size(); ++k) m.set_block(t.offsets[k], s.offsets[k], f.at(s.cells[k]));
    return m;
}

PageMap page_map(const BiMap& f, const PageTable& src, const PageTable& tgt) {
    const Field field = f.source().field();
    std::set<Cell> keys;
    for (const auto& [c, e] : src.entries) keys.insert(c);
    for (const auto& [c, e] : tgt.entries) keys.insert(c);
    PageMap out;
    for (Cell c : keys) {
        const std::size_t ds = src.dim(c), dt = tgt.dim(c);
        Matrix m(field, dt, ds);
        if (ds > 0 && dt > 0) m = tgt.entries.at(c).quot.classes(on_slots(f, src.r, c.p, c.q) * src.entries.at(c).section());
        out[c] = std::move(m);
    }
    auto component = [&](Cell c) {
        auto it = out.find(c);
        return it != out.end() ? it->second : Matrix(field, tgt.dim(c), src.dim(c));
    };
    for (Cell c : keys) {
        if (!(component(src.target_of(c)) * src.differential(field, c) == tgt.differential(field, c) * component(c))) {
            throw InternalError("induced page map does not commute with d_" + std::to_string(src.r));
        }
    }
    return out;
}

PageMap page_map(const BiMap& f, int r) { return page_map(f, page(f.source(), r), page(f.target(), r)); }

bool is_r_weq(const BiMap& f, int r) { return is_page_iso(page_map(f, r + 1)); }

bool is_r_acyclic(const Bicomplex& a, int r) { return page(a, r + 1).is_zero(); }

std::optional<Cell> zw_surjectivity_failure(const BiMap& f, int k) {
    std::set<Cell> cand;
    for (Cell c : f.target().cells()) {
        for (int j = 0; j <= k + 1; ++j) cand.insert({c.p + j, c.q + j});
    }
    for (Cell c : cand) {
        const Subspace zt = witness_cycles(f.target(), k, c.p, c.q);
        if (zt.is_zero()) continue;
        const Subspace zs = witness_cycles(f.source(), k, c.p, c.q);
        if (image(on_slots(f, k, c.p, c.q), zs).dim() != zt.dim()) return c;
    }
    return std::nullopt;
}

}  // namespace specseq
