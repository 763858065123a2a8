#pragma once

#include <map>
#include <vector>

#include "specseq/filtered.hpp"

namespace specseq {

/// Degree n of the result is A^{n+1}; weights are raised by r and the
/// differential is negated.
FilteredComplex suspension(const FilteredComplex& a, int r);
/// Inverse of suspension: degree n is A^{n-1}, weights lowered by r.
FilteredComplex loops(const FilteredComplex& a, int r);
ChainMap suspension(const ChainMap& f, int r);
ChainMap loops(const ChainMap& f, int r);

/// Same complex; a degree-n weight w becomes w - r n.
FilteredComplex shift(const FilteredComplex& a, int r);
/// Same underlying complex, refiltered by F_p(Dec^r A)^n = Z_r^{p-rn}(A^n),
/// in a freshly computed adapted basis.
FilteredComplex decalage(const FilteredComplex& a, int r);

struct Cone {
    FilteredComplex complex;  // C^n = A^{n+1} + B^n
    ChainMap incl;            // B -> C
    ChainMap proj;            // C -> suspension(A, r)
};
/// r-cone of f : A -> B with d(a, b) = (-da, fa + db); A^{n+1} carries
/// weights shifted by r.
Cone cone(const ChainMap& f, int r);

/// Projection onto the first summand of loops(cone(id_A, r), r) -> A.
/// Throws InternalError if it is not Z_k-surjective for some k <= r.
ChainMap omega_cone_fibration(const FilteredComplex& a, int r);

/// u in degree n of weight p, v in degree n+1 of weight p-r, du = v.
FilteredComplex rep_cycle(Field field, int r, int p, int n);
/// For r >= 1: x -> y and x' -> y' with x, y, x', y' of (degree, weight)
/// (n-1, p+r-1), (n, p), (n, p-1), (n+1, p-r); degree n is ordered (y, x').
/// For r = 0 this is rep_cycle(0, p-1, n).
FilteredComplex rep_boundary(Field field, int r, int p, int n);
/// u -> y + x', v -> y' (r >= 1); the identity on generators for r = 0.
ChainMap phi(Field field, int r, int p, int n);

/// A basis of the space of all filtered chain maps X -> A.
std::vector<ChainMap> hom_space(const FilteredComplex& x, const FilteredComplex& a);

/// A subcomplex with the induced filtration, and its inclusion.
struct Subcomplex {
    FilteredComplex complex;
    ChainMap inclusion;
};
/// A quotient complex with the image filtration, and the projection.
struct QuotientComplex {
    FilteredComplex complex;
    ChainMap projection;
};
/// `spaces[n]` must be a d-stable family of subspaces of Y^n; missing
/// degrees mean zero.
Subcomplex subcomplex(const FilteredComplex& y, const std::map<int, Subspace>& spaces);
QuotientComplex quotient_complex(const FilteredComplex& y, const std::map<int, Subspace>& spaces);

Subcomplex kernel(const ChainMap& f);
QuotientComplex cokernel(const ChainMap& f);

struct Pushout {
    FilteredComplex complex;
    ChainMap from_a;  // A -> P
    ChainMap from_b;  // B -> P
};
/// Pushout of A <-f- X -g-> B; g must be strict and injective.
Pushout pushout(const ChainMap& f, const ChainMap& g);

struct Pullback {
    FilteredComplex complex;
    ChainMap to_a;  // P -> A
    ChainMap to_b;  // P -> B
};
/// Pullback of A -f-> X <-g- B.
Pullback pullback(const ChainMap& f, const ChainMap& g);

/// f(a) in F_pB implies a in F_pA, for all p.
bool is_strict(const ChainMap& f);
/// f is injective and A -> ker(coker f) is a filtered isomorphism.
bool is_effective_mono(const ChainMap& f);

/// Z_{s+1}(p+1, n) -> Z_s(p, n), the identity on generators.
ChainMap alpha_morphism(Field field, int s, int p, int n);
/// Z_{s-1}(p, n) + R^{n+1}_{(p-s)} -> Z_s(p, n), fold on degree n+1 (s >= 1).
ChainMap beta_morphism(Field field, int s, int p, int n);
/// Fold of alpha and beta; alpha alone when s = 0.
ChainMap gamma_morphism(Field field, int s, int p, int n);

}  // namespace specseq
