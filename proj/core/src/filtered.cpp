#include "specseq/filtered.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace specseq {

Range Range::join(Range other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

void FilteredComplex::set_degree(int n, std::vector<int> weights) {
    d_.erase(n);
    d_.erase(n - 1);
    if (weights.empty()) {
        weights_.erase(n);
    } else {
        weights_[n] = std::move(weights);
    }
}

void FilteredComplex::set_d(int n, Matrix d) {
    require_shape(d, dim(n + 1), dim(n), ("differential d^" + std::to_string(n)).c_str());
    if (d.field() != field_ && !d.empty()) throw FieldMismatch("differential over the wrong field");
    if (d.empty()) {
        d_.erase(n);
    } else {
        d_[n] = std::move(d);
    }
}

std::size_t FilteredComplex::dim(int n) const {
    auto it = weights_.find(n);
    return it == weights_.end() ? 0 : it->second.size();
}

std::span<const int> FilteredComplex::weights(int n) const {
    auto it = weights_.find(n);
    if (it == weights_.end()) return {};
    return it->second;
}

Matrix FilteredComplex::d(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return Matrix(field_, dim(n + 1), dim(n));
}

std::vector<int> FilteredComplex::degrees() const {
    std::vector<int> out;
    for (const auto& [n, w] : weights_) out.push_back(n);
    return out;
}

Range FilteredComplex::degree_range() const {
    if (weights_.empty()) return {};
    return {weights_.begin()->first, weights_.rbegin()->first};
}

Range FilteredComplex::weight_range() const {
    Range r;
    for (const auto& [n, ws] : weights_) {
        auto [lo, hi] = std::minmax_element(ws.begin(), ws.end());
        r = r.join({*lo, *hi});
    }
    return r;
}

std::vector<std::size_t> FilteredComplex::filtration_indices(int p, int n) const {
    std::vector<std::size_t> idx;
    const auto ws = weights(n);
    for (std::size_t k = 0; k < ws.size(); ++k) {
        if (ws[k] <= p) idx.push_back(k);
    }
    return idx;
}

Subspace FilteredComplex::filtration(int p, int n) const {
    return Subspace::coordinate(field_, dim(n), filtration_indices(p, n));
}

std::vector<std::string> FilteredComplex::violations() const {
    std::vector<std::string> out;
    for (int n : degrees()) {
        if (!(d(n + 1) * d(n)).is_zero()) out.push_back("d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0");
        const Matrix dn = d(n);
        const auto src = weights(n);
        const auto dst = weights(n + 1);
        for (std::size_t j = 0; j < dn.cols(); ++j) {
            for (std::size_t i = 0; i < dn.rows(); ++i) {
                if (!dn(i, j).is_zero() && dst[i] > src[j]) {
                    out.push_back("d^" + std::to_string(n) + " raises filtration: basis vector " + std::to_string(j) +
                                  " (weight " + std::to_string(src[j]) + ") hits basis vector " + std::to_string(i) +
                                  " of degree " + std::to_string(n + 1) + " (weight " + std::to_string(dst[i]) + ")");
                }
            }
        }
    }
    return out;
}

namespace {

std::string join_lines(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& line : v) s += (s.empty() ? "" : "; ") + line;
    return s;
}

}  // namespace

void FilteredComplex::validate() const {
    auto v = violations();
    if (!v.empty()) throw ValidationError("invalid filtered complex: " + join_lines(v));
}

bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.field_ != b.field_ || a.weights_ != b.weights_) return false;
    for (int n : a.degrees()) {
        if (!(a.d(n) == b.d(n))) return false;
    }
    return true;
}

FilteredComplex pure(Field field, int p, int n) {
    FilteredComplex a(field);
    a.set_degree(n, {p});
    return a;
}

ChainMap::ChainMap(FilteredComplex source, FilteredComplex target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.field() != target_.field()) throw FieldMismatch("chain map between complexes over different fields");
}

void ChainMap::set(int n, Matrix m) {
    require_shape(m, target_.dim(n), source_.dim(n), ("chain map component " + std::to_string(n)).c_str());
    if (m.empty()) {
        maps_.erase(n);
    } else {
        maps_[n] = std::move(m);
    }
}

Matrix ChainMap::at(int n) const {
    auto it = maps_.find(n);
    if (it != maps_.end()) return it->second;
    return Matrix(source_.field(), target_.dim(n), source_.dim(n));
}

std::vector<int> ChainMap::degrees() const {
    std::set<int> s;
    for (int n : source_.degrees()) s.insert(n);
    for (int n : target_.degrees()) s.insert(n);
    return {s.begin(), s.end()};
}

bool ChainMap::is_injective() const {
    for (int n : source_.degrees()) {
        if (at(n).rank() != source_.dim(n)) return false;
    }
    return true;
}

bool ChainMap::is_surjective() const {
    for (int n : target_.degrees()) {
        if (at(n).rank() != target_.dim(n)) return false;
    }
    return true;
}

std::vector<std::string> ChainMap::violations() const {
    std::vector<std::string> out;
    std::set<int> ns;
    for (int n : degrees()) {
        ns.insert(n);
        ns.insert(n - 1);
    }
    for (int n : ns) {
        if (!(at(n + 1) * source_.d(n) == target_.d(n) * at(n))) {
            out.push_back("chain condition fails at degree " + std::to_string(n));
        }
    }
    for (int n : source_.degrees()) {
        const Matrix m = at(n);
        const auto src = source_.weights(n);
        const auto dst = target_.weights(n);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (!m(i, j).is_zero() && dst[i] > src[j]) {
                    out.push_back("map raises filtration in degree " + std::to_string(n) + ": basis vector " +
                                  std::to_string(j) + " (weight " + std::to_string(src[j]) + ") hits weight " +
                                  std::to_string(dst[i]));
                }
            }
        }
    }
    return out;
}

void ChainMap::validate() const {
    auto v = violations();
    if (!v.empty()) throw ValidationError("invalid chain map: " + join_lines(v));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
    for (int n : a.degrees()) {
        if (!(a.at(n) == b.at(n))) return false;
    }
    return true;
}

ChainMap identity_map(const FilteredComplex& a) {
    ChainMap f(a, a);
    for (int n : a.degrees()) f.set(n, Matrix::identity(a.field(), a.dim(n)));
    return f;
}

ChainMap zero_map(const FilteredComplex& a, const FilteredComplex& b) { return ChainMap(a, b); }

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f differs from source of g");
    ChainMap h(f.source(), g.target());
    for (int n : f.source().degrees()) {
        if (g.target().dim(n) > 0) h.set(n, g.at(n) * f.at(n));
    }
    return h;
}

DirectSum direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.field() != b.field()) throw FieldMismatch("direct sum over different fields");
    const Field f = a.field();
    FilteredComplex s(f);
    std::set<int> ns;
    for (int n : a.degrees()) ns.insert(n);
    for (int n : b.degrees()) ns.insert(n);
    for (int n : ns) {
        std::vector<int> w(a.weights(n).begin(), a.weights(n).end());
        w.insert(w.end(), b.weights(n).begin(), b.weights(n).end());
        s.set_degree(n, std::move(w));
    }
    for (int n : ns) s.set_d(n, block_diag(a.d(n), b.d(n)));
    DirectSum out{s, ChainMap(a, s), ChainMap(b, s), ChainMap(s, a), ChainMap(s, b)};
    for (int n : ns) {
        const std::size_t da = a.dim(n), db = b.dim(n);
        Matrix i1(f, da + db, da), i2(f, da + db, db);
        i1.set_block(0, 0, Matrix::identity(f, da));
        i2.set_block(da, 0, Matrix::identity(f, db));
        out.in1.set(n, i1);
        out.in2.set(n, i2);
        out.pr1.set(n, i1.transpose());
        out.pr2.set(n, i2.transpose());
    }
    return out;
}

ChainMap copair(const ChainMap& f, const ChainMap& g, const DirectSum& ab) {
    if (!(f.target() == g.target())) throw DimensionMismatch("copair: targets differ");
    ChainMap h(ab.sum, f.target());
    for (int n : ab.sum.degrees()) {
        if (f.target().dim(n) > 0) h.set(n, hstack(f.at(n), g.at(n)));
    }
    return h;
}

ChainMap pair(const ChainMap& f, const ChainMap& g, const DirectSum& ab) {
    if (!(f.source() == g.source())) throw DimensionMismatch("pair: sources differ");
    ChainMap h(f.source(), ab.sum);
    for (int n : f.source().degrees()) {
        if (ab.sum.dim(n) > 0) h.set(n, vstack(f.at(n), g.at(n)));
    }
    return h;
}

AdaptedBasis adapted_basis_impl(Field field, std::size_t dim, const std::vector<std::pair<int, Subspace>>& flags) {
    struct Chosen {
        Matrix v;
        std::size_t pivot;
        int weight;
    };
    std::vector<Chosen> chosen;
    // Fully reduced echelon rows spanning the chosen vectors.
    std::vector<std::pair<Matrix, std::size_t>> echelon;
    auto reduce = [&](Matrix x) {
        for (const auto& [e, piv] : echelon) {
            if (!x(piv, 0).is_zero()) x -= e * x(piv, 0);
        }
        return x;
    };
    for (const auto& [p, space] : flags) {
        for (std::size_t j = 0; j < space.dim(); ++j) {
            Matrix x = reduce(space.basis().col(j));
            std::size_t piv = 0;
            while (piv < dim && x(piv, 0).is_zero()) ++piv;
            if (piv == dim) continue;
            x *= x(piv, 0).inverse();
            for (auto& [e, epiv] : echelon) {
                if (!e(piv, 0).is_zero()) e -= x * e(piv, 0);
            }
            echelon.emplace_back(x, piv);
            chosen.push_back({x, piv, p});
        }
    }
    if (chosen.size() != dim) throw InternalError("adapted basis: flag does not exhaust the space");
    std::sort(chosen.begin(), chosen.end(), [](const Chosen& a, const Chosen& b) { return a.pivot < b.pivot; });
    AdaptedBasis out{Matrix(field, dim, dim), {}};
    for (std::size_t k = 0; k < dim; ++k) {
        out.basis.set_block(0, k, chosen[k].v);
        out.weights.push_back(chosen[k].weight);
    }
    return out;
}

bool is_filtered_iso(const ChainMap& f) {
    for (int n : f.degrees()) {
        const Matrix m = f.at(n);
        if (!m.is_invertible()) return false;
        const Matrix inv = m.inverse();
        const auto src = f.source().weights(n);
        const auto dst = f.target().weights(n);
        for (std::size_t i = 0; i < inv.rows(); ++i) {
            for (std::size_t j = 0; j < inv.cols(); ++j) {
                if (!inv(i, j).is_zero() && src[i] > dst[j]) return false;
            }
        }
    }
    return true;
}

ChainMap inverse(const ChainMap& f) {
    if (!is_filtered_iso(f)) throw PreconditionError("inverse: not a filtered isomorphism");
    ChainMap g(f.target(), f.source());
    for (int n : f.degrees()) g.set(n, f.at(n).inverse());
    return g;
}

}  // namespace specseq
