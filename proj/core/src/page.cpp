#include "specseq/page.hpp"

namespace specseq {

std::size_t PageTable::dim(Bidegree b) const {
    auto it = entries.find(b);
    return it == entries.end() ? 0 : it->second.dim;
}

Matrix PageTable::differential(Field field, Bidegree b) const {
    auto it = differentials.find(b);
    if (it != differentials.end()) return it->second;
    return Matrix(field, dim(target_of(b)), dim(b));
}

std::map<Bidegree, std::size_t> PageTable::dims() const {
    std::map<Bidegree, std::size_t> out;
    for (const auto& [b, e] : entries) out[b] = e.dim;
    return out;
}

std::map<Bidegree, std::size_t> PageTable::homology_dims(Field field) const {
    std::map<Bidegree, std::size_t> out;
    for (const auto& [b, e] : entries) {
        const std::size_t out_rank = differential(field, b).rank();
        const std::size_t in_rank = differential(field, source_into(b)).rank();
        const std::size_t h = e.dim - out_rank - in_rank;
        if (h > 0) out[b] = h;
    }
    return out;
}

bool PageTable::squares_to_zero(Field field) const {
    for (const auto& [b, e] : entries) {
        const Bidegree t = target_of(b);
        if (!(differential(field, t) * differential(field, b)).is_zero()) return false;
    }
    return true;
}

bool is_page_iso(const PageMap& m) {
    for (const auto& [b, mat] : m) {
        if (mat.rows() != mat.cols()) return false;
        if (!mat.is_invertible()) return false;
    }
    return true;
}

}  // namespace specseq
