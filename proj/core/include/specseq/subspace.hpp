#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specseq/matrix.hpp"

namespace specseq {

/// A linear subspace of K^n. The basis is kept canonical (reduced column
/// echelon form), so two equal spans always carry the same basis matrix.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Field field, std::size_t ambient);
    static Subspace full(Field field, std::size_t ambient);
    /// Span of the columns of `vectors`; the columns may be dependent.
    static Subspace span(const Matrix& vectors);
    /// Span of the standard basis vectors e_i, i in `indices`.
    static Subspace coordinate(Field field, std::size_t ambient, std::span<const std::size_t> indices);

    Field field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim(); }

    /// ambient x dim, independent columns.
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Every column of `vectors` lies in the span.
    bool contains(const Matrix& vectors) const;
    bool contains(const Subspace& other) const;

    /// Coordinates (dim x k) of the columns of `vectors` in basis(). Throws
    /// PreconditionError if a column is outside the span.
    Matrix coordinates(const Matrix& vectors) const;

    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
/// {x : m x in v}.
Subspace preimage(const Matrix& m, const Subspace& v);
/// m(u).
Subspace image(const Matrix& m, const Subspace& u);
Subspace kernel_basis(const Matrix& m);

/// The quotient u/w of nested subspaces, with coordinates relative to
/// u's basis. projector * section is the identity.
struct Quotient {
    std::size_t dim = 0;
    Matrix projector;  // dim x dim(u)
    Matrix section;    // dim(u) x dim
    Subspace u;

    /// Ambient vectors representing the quotient basis.
    Matrix representatives() const { return u.basis() * section; }
    /// Quotient classes of ambient vectors lying in u.
    Matrix classes(const Matrix& vectors) const { return projector * u.coordinates(vectors); }
};

/// Throws PreconditionError unless w is contained in u.
Quotient quotient(const Subspace& u, const Subspace& w);

}  // namespace specseq
