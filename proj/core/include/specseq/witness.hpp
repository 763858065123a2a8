#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/page.hpp"

namespace specseq {

/// The slots of a witness tuple at (p, q): cells (p-k, q-k) for
/// k = 0..r-1 (the single cell (p, q) when r = 0), stacked in that order.
struct WitnessSlots {
    std::vector<Cell> cells;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
};
WitnessSlots witness_slots(const Bicomplex& a, int r, int p, int q);

/// ZW_r^{p,q}(A): tuples (a_0, ..., a_{r-1}) with d0 a_0 = 0 and
/// d0 a_k = d1 a_{k-1}; all of A^{p,q} when r = 0.
Subspace witness_cycles(const Bicomplex& a, int r, int p, int q);

/// BW_r at (p, q-1) and the map w_r into the witness slots at (p, q).
/// For r >= 2 the source stacks ZW_{r-1} slots at (p+r-1, q+r-2), A^{p,q-1}
/// and ZW_{r-1} slots at (p-1, q-1); for r = 1 it is A^{p,q-1}; for r = 0
/// it is zero.
struct WitnessBoundaries {
    Subspace source;  // BW_r inside its stacked ambient
    Matrix w;         // ZW slots x BW ambient
    Subspace image;   // w_r(BW_r), inside ZW_r
};
/// Throws InternalError if the image leaves ZW_r.
WitnessBoundaries witness_boundaries(const Bicomplex& a, int r, int p, int q);

/// E_r(A) keyed by cell, with representatives in the witness slots.
PageTable page(const Bicomplex& a, int r);
/// E_r(f) per cell; throws InternalError if it fails to commute with d_r.
PageMap page_map(const BiMap& f, int r);
PageMap page_map(const BiMap& f, const PageTable& src, const PageTable& tgt);

bool is_r_weq(const BiMap& f, int r);
bool is_r_acyclic(const Bicomplex& a, int r);

/// Block-diagonal action of f on the witness slots at (p, q).
Matrix on_slots(const BiMap& f, int r, int p, int q);

/// First cell where ZW_k(f) is not surjective, scanning every target
/// cell and the cells up to k+1 steps up the diagonal.
std::optional<Cell> zw_surjectivity_failure(const BiMap& f, int k);
inline bool is_zw_surjective(const BiMap& f, int k) { return !zw_surjectivity_failure(f, k).has_value(); }

}  // namespace specseq
