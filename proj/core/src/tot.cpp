#include "specseq/tot.hpp"

#include <algorithm>
#include <set>

#include "specseq/bicomplex_ops.hpp"
#include "specseq/filtered_ops.hpp"
#include "specseq/spectral.hpp"
#include "specseq/witness.hpp"

namespace specseq {

namespace {

Scalar sign(Field f, int e) { return (e % 2 == 0) ? f.one() : -f.one(); }

std::string cell_name(Cell c) { return "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")"; }

/// Indices of A^n with weight in [lo, hi].
std::vector<std::size_t> weight_band(const FilteredComplex& a, int n, int lo, int hi) {
    std::vector<std::size_t> idx;
    const auto ws = a.weights(n);
    for (std::size_t k = 0; k < ws.size(); ++k) {
        if (ws[k] >= lo && ws[k] <= hi) idx.push_back(k);
    }
    return idx;
}

constexpr int kBig = 1 << 28;

/// Matrix sending e_{from[j]} to e_k where to[k] == from[j], zero elsewhere.
Matrix index_inclusion(Field field, const std::vector<std::size_t>& to, const std::vector<std::size_t>& from,
                       const Scalar& s) {
    Matrix m(field, to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        auto it = std::find(to.begin(), to.end(), from[j]);
        if (it != to.end()) m(static_cast<std::size_t>(it - to.begin()), j) = s;
    }
    return m;
}

Matrix restrict(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    return m.select_rows(rows).select_cols(cols);
}

std::set<int> cell_degrees(const FilteredComplex& a, int lower, int upper) {
    std::set<int> ns;
    for (int n : a.degrees()) {
        for (int k = lower; k <= upper; ++k) ns.insert(n + k);
    }
    return ns;
}

}  // namespace

std::map<int, std::size_t> tot_offsets(const Bicomplex& a, int n) {
    std::map<int, std::size_t> out;
    std::size_t off = 0;
    for (Cell c : a.cells()) {
        if (c.q - c.p != n) continue;
        out[c.p] = off;
        off += a.dim(c);
    }
    return out;
}

FilteredComplex tot_pi(const Bicomplex& a) {
    const Field field = a.field();
    FilteredComplex t(field);
    std::map<int, std::map<int, std::size_t>> offs;
    for (int n = a.total_degrees().lo; n <= a.total_degrees().hi; ++n) {
        std::vector<int> w;
        for (Cell c : a.cells()) {
            if (c.q - c.p == n) w.insert(w.end(), a.dim(c), c.p);
        }
        t.set_degree(n, w);
        offs[n] = tot_offsets(a, n);
    }
    for (const auto& [n, off] : offs) {
        if (t.dim(n) == 0 || t.dim(n + 1) == 0) continue;
        Matrix d(field, t.dim(n + 1), t.dim(n));
        const auto& next = offs.at(n + 1);
        for (const auto& [i, o] : off) {
            const Cell c{i, i + n};
            if (auto it = next.find(i); it != next.end()) d.set_block(it->second, o, a.d0(c));
            if (auto it = next.find(i - 1); it != next.end()) d.set_block(it->second, o, a.d1(c) * sign(field, n));
        }
        t.set_d(n, d);
    }
    t.validate();
    return t;
}

FilteredComplex tot_oplus(const Bicomplex& a) { return tot_pi(a); }

ChainMap tot_pi(const BiMap& f) {
    const FilteredComplex s = tot_pi(f.source());
    const FilteredComplex t = tot_pi(f.target());
    ChainMap g(s, t);
    for (int n : s.degrees()) {
        const auto so = tot_offsets(f.source(), n);
        const auto to = tot_offsets(f.target(), n);
        Matrix m(s.field(), t.dim(n), s.dim(n));
        for (const auto& [i, o] : so) {
            if (auto it = to.find(i); it != to.end()) m.set_block(it->second, o, f.at({i, i + n}));
        }
        g.set(n, m);
    }
    g.validate();
    return g;
}

void Window::validate() const {
    if (col_lo > col_hi) throw PreconditionError("window: col_lo > col_hi");
    if (margin < 0) throw PreconditionError("window: negative margin");
}

TruncatedBicomplex l_adjoint(const FilteredComplex& a, const Window& w) {
    w.validate();
    const Field field = a.field();
    const Range wr = a.weight_range();
    if (!wr.empty() && w.col_hi < wr.hi + 1) throw PreconditionError("l_adjoint: window too small (need col_hi >= max weight + 1)");
    TruncatedBicomplex out{w, Bicomplex(field), {}};
    if (a.is_zero()) return out;
    // Cell (i, i+n): x-part = A^n weight >= i, y-part = A^{n-1} weight >= i+1.
    auto xs = [&](int i, int n) { return weight_band(a, n, i, kBig); };
    auto ys = [&](int i, int n) { return weight_band(a, n - 1, i + 1, kBig); };
    const std::set<int> ns = cell_degrees(a, 0, 1);
    for (int i = w.col_lo; i <= w.col_hi; ++i) {
        for (int n : ns) out.body.set_cell({i, i + n}, xs(i, n).size() + ys(i, n).size());
    }
    for (int i = w.col_lo; i <= w.col_hi; ++i) {
        for (int n : ns) {
            const Cell c{i, i + n};
            if (out.body.dim(c) == 0) continue;
            const auto x = xs(i, n), y = ys(i, n);
            const auto x1 = xs(i, n + 1), y1 = ys(i, n + 1);
            if (x1.size() + y1.size() > 0) {
                Matrix d0(field, x1.size() + y1.size(), x.size() + y.size());
                d0.set_block(0, 0, restrict(a.d(n), x1, x));
                d0.set_block(x1.size(), 0, index_inclusion(field, y1, x, field.one()));
                d0.set_block(x1.size(), x.size(), -restrict(a.d(n - 1), y1, y));
                out.body.set_d0(c, d0);
            }
            if (i - 1 < w.col_lo) continue;
            const auto xl = xs(i - 1, n + 1), yl = ys(i - 1, n + 1);
            if (xl.size() + yl.size() > 0) {
                Matrix d1(field, xl.size() + yl.size(), x.size() + y.size());
                d1.set_block(xl.size(), 0, index_inclusion(field, yl, x, sign(field, n + 1)));
                out.body.set_d1(c, d1);
            }
        }
    }
    out.body.validate();
    out.tail.left = true;
    out.tail.from_column = wr.lo;
    for (int n : ns) out.tail.dims[n] = a.dim(n) + a.dim(n - 1);
    return out;
}

TruncatedBicomplex r_adjoint(const FilteredComplex& a, const Window& w) {
    w.validate();
    const Field field = a.field();
    const Range wr = a.weight_range();
    if (!wr.empty() && w.col_lo > wr.lo - 1) throw PreconditionError("r_adjoint: window too small (need col_lo <= min weight - 1)");
    TruncatedBicomplex out{w, Bicomplex(field), {}};
    if (a.is_zero()) return out;
    // Cell (i, i+n): x-part = A^{n+1} weight <= i-1, y-part = A^n weight <= i.
    auto xs = [&](int i, int n) { return weight_band(a, n + 1, -kBig, i - 1); };
    auto ys = [&](int i, int n) { return weight_band(a, n, -kBig, i); };
    const std::set<int> ns = cell_degrees(a, -1, 0);
    for (int i = w.col_lo; i <= w.col_hi; ++i) {
        for (int n : ns) out.body.set_cell({i, i + n}, xs(i, n).size() + ys(i, n).size());
    }
    for (int i = w.col_lo; i <= w.col_hi; ++i) {
        for (int n : ns) {
            const Cell c{i, i + n};
            if (out.body.dim(c) == 0) continue;
            const auto x = xs(i, n), y = ys(i, n);
            const auto x1 = xs(i, n + 1), y1 = ys(i, n + 1);
            if (x1.size() + y1.size() > 0) {
                Matrix d0(field, x1.size() + y1.size(), x.size() + y.size());
                d0.set_block(0, 0, -restrict(a.d(n + 1), x1, x));
                d0.set_block(x1.size(), 0, index_inclusion(field, y1, x, field.one()));
                d0.set_block(x1.size(), x.size(), restrict(a.d(n), y1, y));
                out.body.set_d0(c, d0);
            }
            if (i - 1 < w.col_lo) continue;
            const auto xl = xs(i - 1, n + 1), yl = ys(i - 1, n + 1);
            if (xl.size() + yl.size() > 0) {
                Matrix d1(field, xl.size() + yl.size(), x.size() + y.size());
                d1.set_block(xl.size(), 0, index_inclusion(field, yl, x, sign(field, n + 1)));
                out.body.set_d1(c, d1);
            }
        }
    }
    out.body.validate();
    out.tail.left = false;
    out.tail.from_column = wr.hi + 1;
    for (int n : ns) out.tail.dims[n] = a.dim(n + 1) + a.dim(n);
    return out;
}

ChainMap transpose_down(const FilteredComplex& a, const Window& w, const BiMap& f) {
    const Bicomplex& b = f.target();
    if (!b.is_zero() && b.columns().lo < w.col_lo) throw PreconditionError("transpose_down: window does not cover the target");
    const Field field = a.field();
    const FilteredComplex t = tot_pi(b);
    ChainMap g(a, t);
    for (int n : a.degrees()) {
        Matrix m(field, t.dim(n), a.dim(n));
        for (const auto& [i, off] : tot_offsets(b, n)) {
            const Cell c{i, i + n};
            const auto x = weight_band(a, n, i, kBig);
            // (q_i x, 0) in the basis of the body cell.
            Matrix q(field, f.source().dim(c), a.dim(n));
            for (std::size_t k = 0; k < x.size(); ++k) q(k, x[k]) = field.one();
            m.set_block(off, 0, f.at(c) * q);
        }
        g.set(n, m);
    }
    g.validate();
    return g;
}

BiMap transpose_up(const FilteredComplex& a, const Window& w, const Bicomplex& b, const ChainMap& g) {
    if (!b.is_zero() && b.columns().lo < w.col_lo) throw PreconditionError("transpose_up: window does not cover the target");
    if (!(g.target() == tot_pi(b))) throw PreconditionError("transpose_up: target of g is not Tot of the given bicomplex");
    const Field field = a.field();
    const TruncatedBicomplex l = l_adjoint(a, w);
    BiMap f(l.body, b);
    // Component of g_m(e_k) in column i, for all k: dim B^{i,i+m} x dim A^m.
    auto column = [&](int m, int i) {
        const Cell c{i, i + m};
        const auto offs = tot_offsets(b, m);
        auto it = offs.find(i);
        if (it == offs.end()) return Matrix(field, 0, a.dim(m));
        return g.at(m).block(it->second, 0, b.dim(c), a.dim(m));
    };
    for (Cell c : l.body.cells()) {
        if (b.dim(c) == 0) continue;
        const int i = c.p, n = c.q - c.p;
        const auto x = weight_band(a, n, i, kBig);
        const auto y = weight_band(a, n - 1, i + 1, kBig);
        const Matrix gx = column(n, i);
        const Cell above{i + 1, i + n};
        Matrix gy(field, b.dim(c), a.dim(n - 1));
        if (b.dim(above) > 0) gy = b.d1(above) * column(n - 1, i + 1) * sign(field, n);
        // Lifts differ by F_{i-1}A^n and F_iA^{n-1}; both must be killed.
        if (!gx.select_cols(weight_band(a, n, -kBig, i - 1)).is_zero() ||
            !gy.select_cols(weight_band(a, n - 1, -kBig, i)).is_zero()) {
            throw InternalError("transpose_up: value depends on the lift at " + cell_name(c));
        }
        f.set(c, hstack(gx.select_cols(x), gy.select_cols(y)));
    }
    f.validate();
    return f;
}

namespace {

Matrix unit_tuple(const Bicomplex& body, int r, int p, int q, int n) {
    const WitnessSlots s = witness_slots(body, r, p, q);
    Matrix t(body.field(), s.total, 1);
    const Scalar step = sign(body.field(), n + 1);
    Scalar lambda = body.field().one();
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
        // u_x is the first basis vector of every degree-n cell.
        if (!(body.dim(s.cells[k]) >= 1)) throw InternalError("decompose_l_of_cycle: missing generator");
        t(s.offsets[k], 0) = lambda;
        lambda = lambda * step;
    }
    return t;
}

}  // namespace

Decomposition decompose_l_of_cycle(Field field, int s, int p, int n, const Window& w) {
    if (s < 0) throw PreconditionError("decompose_l_of_cycle: s must be >= 0");
    w.validate();
    if (w.col_lo > p - s - 2) throw PreconditionError("decompose_l_of_cycle: window too small (need col_lo <= p-s-2)");
    if (w.col_hi < p + 1) throw PreconditionError("decompose_l_of_cycle: window too small (need col_hi >= p+1)");
    Decomposition d;
    d.l = l_adjoint(rep_cycle(field, s, p, n), w);
    const Bicomplex& body = d.l.body;
    std::vector<BiMap> parts;
    if (s >= 1) {
        parts.push_back(map_from_witness(body, s, p, p + n, unit_tuple(body, s, p, p + n, n)));
        d.summands.push_back({s, {p, p + n}, false});
    }
    for (int c = p - s; c >= w.col_lo; --c) {
        const BiMap sq = map_from_witness(body, 0, c, c + n, unit_tuple(body, 0, c, c + n, n));
        parts.push_back(columns_from(sq, w.col_lo));
        d.summands.push_back({0, {c, c + n}, c - 1 < w.col_lo});
    }
    BiMap acc = parts.front();
    BiMap first = identity_map(acc.source());
    for (std::size_t k = 1; k < parts.size(); ++k) {
        const BiDirectSum ds = direct_sum(acc.source(), parts[k].source());
        acc = copair(acc, parts[k], ds);
        first = compose(first, ds.pr1);
    }
    d.sum = acc.source();
    d.iso = acc;
    d.first_projection = first;
    d.verified = d.iso.violations().empty() && d.iso.is_iso();
    return d;
}

bool UnitReport::pass() const {
    return all_pass(checks);
}

UnitReport verify_unit_on_cycle(Field field, int s, int p, int n, const Window& w) {
    if (s < 1) throw PreconditionError("verify_unit_on_cycle: s must be >= 1");
    if (w.margin < s + 1) throw PreconditionError("verify_unit_on_cycle: margin must be >= s + 1");
    UnitReport rep;
    rep.s = s;
    rep.p = p;
    rep.n = n;
    rep.window = w;
    rep.stated_second = {p - s - 1, p + n - s};
    auto check = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };
    const FilteredComplex a = rep_cycle(field, s, p, n);
    const Decomposition dec = decompose_l_of_cycle(field, s, p, n, w);
    if (!check("decomposition_iso", dec.verified)) return rep;

    const BiMap to_zw = compose(dec.first_projection, inverse(dec.iso));
    const ChainMap unit_s = transpose_down(a, w, to_zw);
    const PageTable src = page(a, s);
    const PageTable tgt = page(unit_s.target(), s);
    rep.source_page = src.dims();
    rep.target_page = tgt.dims();
    rep.unit_page = page_map(unit_s, src, tgt);
    rep.stated_second_found = src.entries.count(rep.stated_second) > 0;
    check("source_has_two_entries", src.entries.size() == 2, std::to_string(src.entries.size()) + " nonzero entries");
    check("target_has_two_entries", tgt.entries.size() == 2, std::to_string(tgt.entries.size()) + " nonzero entries");
    bool connected = true;
    for (const auto& [b, m] : src.differentials) connected = connected && m.is_invertible();
    check("source_d_s_invertible", src.differentials.size() == 1 && connected);
    check("unit_iso_on_zw_summand", is_page_iso(rep.unit_page));
    check("next_page_vanishes", page(a, s + 1).is_zero() && page(unit_s.target(), s + 1).is_zero());

    bool squares_acyclic = true;
    std::string bad;
    for (const Summand& sm : dec.summands) {
        if (sm.r != 0) continue;
        if (!is_r_acyclic(tot_pi(rep_witness_cycle(field, 0, sm.cell.p, sm.cell.q)), 0)) {
            squares_acyclic = false;
            bad = cell_name(sm.cell);
        }
    }
    check("zw0_summands_e1_zero", squares_acyclic, bad);

    const ChainMap unit = transpose_down(a, w, identity_map(dec.l.body));
    check("unit_iso_on_e_s", is_page_iso(page_map(unit, s)));
    return rep;
}

}  // namespace specseq
