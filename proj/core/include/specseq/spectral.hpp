#pragma once

#include <optional>

#include "specseq/filtered.hpp"
#include "specseq/page.hpp"

namespace specseq {

/// Z_r^{p,p+n}(A) = F_pA^n  cap  d^{-1} F_{p-r}A^{n+1}, inside A^n.
Subspace cycles(const FilteredComplex& a, int r, int p, int n);

/// B_r^{p,p+n}(A) inside A^n: F_{p-1}A^n for r = 0, otherwise
/// d Z_{r-1}^{p+r-1}(A^{n-1}) + Z_{r-1}^{p-1}(A^n). Throws InternalError if
/// the result is not inside Z_r.
Subspace boundaries(const FilteredComplex& a, int r, int p, int n);

/// Weights spanned by nonzero page entries: [min - r - 1, max + r + 1].
Range page_support(const FilteredComplex& a, int r);

/// E_r(A) keyed by (p, p+n), with representatives in A^n.
PageTable page(const FilteredComplex& a, int r);

/// E_r(f) per bidegree. Throws InternalError if it fails to commute with d_r.
PageMap page_map(const ChainMap& f, int r);
PageMap page_map(const ChainMap& f, const PageTable& src, const PageTable& tgt);

/// f induces an isomorphism on E_{r+1}.
bool is_r_weq(const ChainMap& f, int r);
/// E_{r+1}(A) == 0.
bool is_r_acyclic(const FilteredComplex& a, int r);

/// First bidegree (p, p+n) where Z_k(f) is not surjective, scanning
/// weights [min - 1, max + k + 1] of both sides.
std::optional<Bidegree> zk_surjectivity_failure(const ChainMap& f, int k);
inline bool is_zk_surjective(const ChainMap& f, int k) { return !zk_surjectivity_failure(f, k).has_value(); }

}  // namespace specseq
