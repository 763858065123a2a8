#include "specseq/spectral.hpp"

#include <set>

namespace specseq {

Subspace cycles(const FilteredComplex& a, int r, int p, int n) {
    if (r < 0) throw PreconditionError("cycles: r must be >= 0");
    const Subspace fp = a.filtration(p, n);
    if (fp.is_zero()) return fp;
    return intersect(fp, preimage(a.d(n), a.filtration(p - r, n + 1)));
}

Subspace boundaries(const FilteredComplex& a, int r, int p, int n) {
    if (r < 0) throw PreconditionError("boundaries: r must be >= 0");
    if (r == 0) return a.filtration(p - 1, n);
    const Subspace from_below = image(a.d(n - 1), cycles(a, r - 1, p + r - 1, n - 1));
    Subspace b = sum(from_below, cycles(a, r - 1, p - 1, n));
    if (!cycles(a, r, p, n).contains(b)) {
        throw InternalError("B_" + std::to_string(r) + " not inside Z_" + std::to_string(r) + " at (" +
                            std::to_string(p) + "," + std::to_string(p + n) + ")");
    }
    return b;
}

Range page_support(const FilteredComplex& a, int r) { return a.weight_range().widen(r + 1); }

PageTable page(const FilteredComplex& a, int r) {
    if (r < 0) throw PreconditionError("page: r must be >= 0");
    PageTable t;
    t.r = r;
    const Range ps = page_support(a, r);
    for (int n : a.degrees()) {
        for (int p = ps.lo; p <= ps.hi; ++p) {
            const Subspace z = cycles(a, r, p, n);
            if (z.is_zero()) continue;
            Quotient q = quotient(z, boundaries(a, r, p, n));
            if (q.dim == 0) continue;
            t.entries[{p, p + n}] = PageEntry{q.dim, std::move(q)};
        }
    }
    for (const auto& [b, e] : t.entries) {
        const Bidegree to = t.target_of(b);
        auto it = t.entries.find(to);
        if (it == t.entries.end()) continue;
        const int n = b.q - b.p;
        t.differentials[b] = it->second.quot.classes(a.d(n) * e.section());
    }
    return t;
}

PageMap page_map(const ChainMap& f, const PageTable& src, const PageTable& tgt) {
    const Field field = f.source().field();
    std::set<Bidegree> keys;
    for (const auto& [b, e] : src.entries) keys.insert(b);
    for (const auto& [b, e] : tgt.entries) keys.insert(b);
    PageMap out;
    for (const Bidegree& b : keys) {
        const std::size_t ds = src.dim(b), dt = tgt.dim(b);
        Matrix m(field, dt, ds);
        if (ds > 0 && dt > 0) {
            const int n = b.q - b.p;
            m = tgt.entries.at(b).quot.classes(f.at(n) * src.entries.at(b).section());
        }
        out[b] = std::move(m);
    }
    auto component = [&](Bidegree b) {
        auto it = out.find(b);
        return it != out.end() ? it->second : Matrix(field, tgt.dim(b), src.dim(b));
    };
    for (const Bidegree& b : keys) {
        const Bidegree to = src.target_of(b);
        if (!(component(to) * src.differential(field, b) == tgt.differential(field, b) * component(b))) {
            throw InternalError("induced page map does not commute with d_" + std::to_string(src.r));
        }
    }
    return out;
}

PageMap page_map(const ChainMap& f, int r) { return page_map(f, page(f.source(), r), page(f.target(), r)); }

bool is_r_weq(const ChainMap& f, int r) { return is_page_iso(page_map(f, r + 1)); }

bool is_r_acyclic(const FilteredComplex& a, int r) { return page(a, r + 1).is_zero(); }

std::optional<Bidegree> zk_surjectivity_failure(const ChainMap& f, int k) {
    const Range w = f.source().weight_range().join(f.target().weight_range());
    if (w.empty()) return std::nullopt;
    for (int n : f.target().degrees()) {
        for (int p = w.lo - 1; p <= w.hi + k + 1; ++p) {
            const Subspace zt = cycles(f.target(), k, p, n);
            if (zt.is_zero()) continue;
            const Subspace zs = cycles(f.source(), k, p, n);
            if (image(f.at(n), zs).dim() != zt.dim()) return Bidegree{p, p + n};
        }
    }
    return std::nullopt;
}

}  // namespace specseq
