#pragma once

#include <map>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/witness.hpp"

namespace specseq {

/// (Sigma^r A)^{i,j} = A^{i-r, j-r+1}, with d0 scaled by (-1)^{r+1} and d1
/// by (-1)^r.
Bicomplex suspension(const Bicomplex& a, int r);
/// Inverse of suspension: cells move by (-r, -r+1), same signs.
Bicomplex loops(const Bicomplex& a, int r);
BiMap suspension(const BiMap& f, int r);
BiMap loops(const BiMap& f, int r);

/// Cells with column >= lo (a quotient bicomplex) or column <= hi (a
/// sub-bicomplex), with bases unchanged.
Bicomplex columns_from(const Bicomplex& a, int lo);
Bicomplex columns_upto(const Bicomplex& a, int hi);
/// f with both ends cut to columns >= lo.
BiMap columns_from(const BiMap& f, int lo);

/// ZW_r(p, q). For r = 0 the square on (p,q), (p-1,q), (p,q+1), (p-1,q+1);
/// for r >= 1 generators a_k at (p-k, q-k) and b_k at (p-k-1, q-k),
/// k < r, with d1 a_k = b_k and d0 a_{k+1} = b_k. Every cell is
/// one-dimensional.
Bicomplex rep_witness_cycle(Field field, int r, int p, int q);
/// BW_r(p, q) representing BW_r at (p, q): ZW_{r-1}(p+r-1, q+r-1) +
/// ZW_0(p, q) + ZW_{r-1}(p-1, q) for r >= 2, ZW_0(p, q) for r = 1 and 0 for
/// r = 0.
Bicomplex rep_witness_boundary(Field field, int r, int p, int q);
/// The map ZW_r(p, q) -> BW_r(p, q-1) pulling back to w_r.
BiMap witness_phi(Field field, int r, int p, int q);

/// The map ZW_r(p, q) -> A classified by a witness cycle (a column in the
/// slots at (p, q)).
BiMap map_from_witness(const Bicomplex& a, int r, int p, int q, const Matrix& tuple);
/// The witness cycle classifying f : ZW_r(p, q) -> A.
Matrix witness_of(const BiMap& f, int r, int p, int q);

/// A basis of the space of all bicomplex maps X -> A.
std::vector<BiMap> hom_space(const Bicomplex& x, const Bicomplex& a);

/// X tensor A. Each cell lists the X cells in order, and within one the
/// basis of X^{i,j} tensor A^{k,l} in Kronecker order. d0 on x tensor a is
/// d0x a + (-1)^j x d0a and d1 is d1x a + (-1)^i x d1a, for x in X^{i,j}.
Bicomplex tensor(const Bicomplex& x, const Bicomplex& a);
BiMap tensor_map(const BiMap& f, const BiMap& g);

/// C_r(A) = ZW_r(r, r-1) tensor A for r >= 1; for r = 0 the first factor
/// is the d0-edge (0,-1) -> (0,0).
Bicomplex cone(const Bicomplex& a, int r);
/// C_r(A) -> Sigma^r A, projecting onto the top generator tensor A.
BiMap psi(const Bicomplex& a, int r);
/// ZW_r(r, r-1) without its top cell (r, r-1); r >= 1.
Bicomplex nw(Field field, int r);
/// Omega^r(i) tensor id_A : Omega^r A -> Omega^r NW_r tensor A, where i
/// includes R at (0, 0). r >= 1.
BiMap omega_i_inclusion(const Bicomplex& a, int r);

struct SubBicomplex {
    Bicomplex complex;
    BiMap inclusion;
};
struct QuotientBicomplex {
    Bicomplex complex;
    BiMap projection;
};
/// `spaces` must be stable under d0 and d1; missing cells mean zero.
SubBicomplex subcomplex(const Bicomplex& y, const std::map<Cell, Subspace>& spaces);
QuotientBicomplex quotient_complex(const Bicomplex& y, const std::map<Cell, Subspace>& spaces);
SubBicomplex kernel(const BiMap& f);
QuotientBicomplex cokernel(const BiMap& f);

struct BiPushout {
    Bicomplex complex;
    BiMap from_a, from_b;
};
/// Pushout of A <-f- X -g-> B, cellwise.
BiPushout pushout(const BiMap& f, const BiMap& g);

struct BiPullback {
    Bicomplex complex;
    BiMap to_a, to_b;
};
/// Pullback of A -f-> X <-g- B, cellwise.
BiPullback pullback(const BiMap& f, const BiMap& g);

}  // namespace specseq
