#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specseq/matrix.hpp"
#include "specseq/subspace.hpp"

namespace specseq {

/// A bigrading index (p, q). For filtered complexes q = p + n with n the
/// cohomological degree; for bicomplexes (p, q) is the cell itself.
struct Bidegree {
    int p = 0;
    int q = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// Closed integer interval; empty when lo > hi.
struct Range {
    int lo = 0;
    int hi = -1;
    bool empty() const { return lo > hi; }
    Range widen(int by) const { return empty() ? *this : Range{lo - by, hi + by}; }
    Range join(Range other) const;
};

/// Bounded cochain complex of finite-dimensional spaces with an adapted
/// basis: basis vector k of A^n has a filtration weight, and F_pA^n is the
/// span of the basis vectors of weight <= p. d_n : A^n -> A^{n+1}.
class FilteredComplex {
public:
    explicit FilteredComplex(Field field = Field::rationals()) : field_(field) {}

    Field field() const { return field_; }

    /// Replaces degree n (and drops the differentials touching it).
    void set_degree(int n, std::vector<int> weights);
    /// d must be dim(n+1) x dim(n).
    void set_d(int n, Matrix d);

    std::size_t dim(int n) const;
    std::span<const int> weights(int n) const;
    Matrix d(int n) const;

    /// Degrees of nonzero dimension, ascending.
    std::vector<int> degrees() const;
    bool is_zero() const { return weights_.empty(); }
    Range degree_range() const;
    Range weight_range() const;

    /// F_p A^n as a coordinate subspace of A^n.
    Subspace filtration(int p, int n) const;
    /// Indices of basis vectors of A^n with weight <= p.
    std::vector<std::size_t> filtration_indices(int p, int n) const;

    std::vector<std::string> violations() const;
    /// Throws ValidationError listing every violation.
    void validate() const;

    friend bool operator==(const FilteredComplex& a, const FilteredComplex& b);

private:
    Field field_;
    std::map<int, std::vector<int>> weights_;
    std::map<int, Matrix> d_;
};

/// One generator of weight p in degree n with zero differential.
FilteredComplex pure(Field field, int p, int n);

/// Filtration-preserving cochain map, one matrix per degree.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(FilteredComplex source, FilteredComplex target);

    const FilteredComplex& source() const { return source_; }
    const FilteredComplex& target() const { return target_; }

    /// m must be target.dim(n) x source.dim(n).
    void set(int n, Matrix m);
    Matrix at(int n) const;
    /// Degrees where either side is nonzero.
    std::vector<int> degrees() const;

    bool is_injective() const;
    bool is_surjective() const;

    std::vector<std::string> violations() const;
    void validate() const;

    friend bool operator==(const ChainMap& a, const ChainMap& b);

private:
    FilteredComplex source_;
    FilteredComplex target_;
    std::map<int, Matrix> maps_;
};

ChainMap identity_map(const FilteredComplex& a);
ChainMap zero_map(const FilteredComplex& a, const FilteredComplex& b);
/// g o f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

struct DirectSum {
    FilteredComplex sum;
    ChainMap in1, in2, pr1, pr2;
};
/// Basis of (A + B)^n is A's basis followed by B's.
DirectSum direct_sum(const FilteredComplex& a, const FilteredComplex& b);
/// (f, g) : A + B -> C.
ChainMap copair(const ChainMap& f, const ChainMap& g, const DirectSum& ab);
/// (f, g) : C -> A + B.
ChainMap pair(const ChainMap& f, const ChainMap& g, const DirectSum& ab);

/// A basis of V adapted to a flag: for increasing p, the vectors of weight
/// <= p span flag(p). Vectors are reduced against the ones already chosen,
/// each is normalised at its first nonzero entry, and the result is sorted
/// by that pivot.
struct AdaptedBasis {
    Matrix basis;  // columns
    std::vector<int> weights;
};
/// `flag` maps weight p to a subspace of K^dim; it must be increasing on
/// [lo, hi] and full at hi.
template <class Flag>
AdaptedBasis adapted_basis(Field field, std::size_t dim, int lo, int hi, Flag&& flag);

AdaptedBasis adapted_basis_impl(Field field, std::size_t dim, const std::vector<std::pair<int, Subspace>>& flags);

template <class Flag>
AdaptedBasis adapted_basis(Field field, std::size_t dim, int lo, int hi, Flag&& flag) {
    std::vector<std::pair<int, Subspace>> flags;
    for (int p = lo; p <= hi; ++p) flags.emplace_back(p, flag(p));
    return adapted_basis_impl(field, dim, flags);
}

/// True iff bijective in every degree with a filtration-preserving inverse.
bool is_filtered_iso(const ChainMap& f);
/// Inverse of a filtered isomorphism.
ChainMap inverse(const ChainMap& f);

}  // namespace specseq
