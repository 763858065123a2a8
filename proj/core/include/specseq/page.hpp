#pragma once

#include <cstddef>
#include <map>

#include "specseq/filtered.hpp"
#include "specseq/subspace.hpp"

namespace specseq {

/// One nonzero entry E_r^{p,q}: a quotient of r-cycles by r-boundaries
/// inside some ambient coordinate space.
struct PageEntry {
    std::size_t dim = 0;
    Quotient quot;
    /// ambient x dim, cycle representatives of the basis classes.
    Matrix section() const { return quot.representatives(); }
};

/// A page E_r with its differential d_r : E^{p,q} -> E^{p-r,q-r+1}.
/// Only nonzero entries are stored.
struct PageTable {
    int r = 0;
    std::map<Bidegree, PageEntry> entries;
    /// Keyed by source bidegree; present only when both ends are nonzero.
    std::map<Bidegree, Matrix> differentials;

    std::size_t dim(Bidegree b) const;
    bool is_zero() const { return entries.empty(); }
    Bidegree target_of(Bidegree b) const { return {b.p - r, b.q - r + 1}; }
    Bidegree source_into(Bidegree b) const { return {b.p + r, b.q + r - 1}; }
    /// dim E_r(target) x dim E_r(b), zero when absent.
    Matrix differential(Field field, Bidegree b) const;
    std::map<Bidegree, std::size_t> dims() const;
    /// dim ker d_r - dim im d_r at every nonzero entry.
    std::map<Bidegree, std::size_t> homology_dims(Field field) const;
    /// d_r o d_r == 0 at every entry.
    bool squares_to_zero(Field field) const;
};

/// Per-bidegree matrices of an induced map of pages, target x source.
using PageMap = std::map<Bidegree, Matrix>;

/// True iff every component is square and invertible, and no entry is
/// nonzero on just one side.
bool is_page_iso(const PageMap& m);

}  // namespace specseq
