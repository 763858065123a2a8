#include "specseq/subspace.hpp"

namespace specseq {

Subspace Subspace::zero(Field field, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix(field, ambient, 0);
    return s;
}

Subspace Subspace::full(Field field, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix::identity(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

Subspace Subspace::span(const Matrix& vectors) {
    const auto e = vectors.transpose().rref();
    Subspace s;
    s.pivots_ = e.pivots;
    s.basis_ = e.reduced.block(0, 0, e.pivots.size(), vectors.rows()).transpose();
    return s;
}

Subspace Subspace::coordinate(Field field, std::size_t ambient, std::span<const std::size_t> indices) {
    Matrix m(field, ambient, indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) m(indices[k], k) = field.one();
    return span(m);
}

bool Subspace::contains(const Matrix& vectors) const {
    if (vectors.rows() != ambient_dim()) throw DimensionMismatch("subspace containment: ambient mismatch");
    const Matrix c = vectors.select_rows(pivots_);
    return basis_ * c == vectors;
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis_); }

Matrix Subspace::coordinates(const Matrix& vectors) const {
    if (vectors.rows() != ambient_dim()) throw DimensionMismatch("subspace coordinates: ambient mismatch");
    Matrix c = vectors.select_rows(pivots_);
    if (!(basis_ * c == vectors)) throw PreconditionError("vector is not in the subspace");
    return c;
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() && a.contains(b) && b.contains(a);
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("sum: ambient mismatch");
    return Subspace::span(hstack(u.basis(), v.basis()));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("intersect: ambient mismatch");
    if (u.is_zero() || v.is_zero()) return Subspace::zero(u.field(), u.ambient_dim());
    if (u.is_full()) return v;
    if (v.is_full()) return u;
    const Matrix k = hstack(u.basis(), -v.basis()).kernel();
    return Subspace::span(u.basis() * k.block(0, 0, u.dim(), k.cols()));
}

Subspace kernel_basis(const Matrix& m) { return Subspace::span(m.kernel()); }

Subspace preimage(const Matrix& m, const Subspace& v) {
    if (v.ambient_dim() != m.rows()) throw DimensionMismatch("preimage: ambient mismatch");
    if (v.is_full()) return Subspace::full(m.field(), m.cols());
    // Rows of `ann` cut out v.
    const Matrix ann = v.basis().transpose().kernel().transpose();
    return kernel_basis(ann * m);
}

Subspace image(const Matrix& m, const Subspace& u) {
    if (u.ambient_dim() != m.cols()) throw DimensionMismatch("image: ambient mismatch");
    return Subspace::span(m * u.basis());
}

Quotient quotient(const Subspace& u, const Subspace& w) {
    if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("quotient: ambient mismatch");
    if (!u.contains(w)) throw PreconditionError("quotient: w is not contained in u");
    const Field f = u.field();
    const std::size_t k = u.dim();
    const Matrix wu = u.coordinates(w.basis());
    const auto e = hstack(wu, Matrix::identity(f, k)).rref();
    std::vector<std::size_t> extra;
    for (auto p : e.pivots) {
        if (p >= wu.cols()) extra.push_back(p - wu.cols());
    }
    Quotient q;
    q.u = u;
    q.dim = extra.size();
    q.section = Matrix(f, k, q.dim);
    for (std::size_t j = 0; j < extra.size(); ++j) q.section(extra[j], j) = f.one();
    const Matrix inv = hstack(wu, q.section).inverse();
    q.projector = inv.block(wu.cols(), 0, q.dim, k);
    return q;
}

}  // namespace specseq
