#include "specseq/bicomplex.hpp"

#include <set>

namespace specseq {

namespace {

std::string at_cell(Cell c) { return "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")"; }

Cell up(Cell c) { return {c.p, c.q + 1}; }
Cell left(Cell c) { return {c.p - 1, c.q}; }

std::string join_lines(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& line : v) s += (s.empty() ? "" : "; ") + line;
    return s;
}

}  // namespace

void Bicomplex::set_cell(Cell c, std::size_t dim) {
    d0_.erase(c);
    d1_.erase(c);
    d0_.erase({c.p, c.q - 1});
    d1_.erase({c.p + 1, c.q});
    if (dim == 0) {
        dims_.erase(c);
    } else {
        dims_[c] = dim;
    }
}

void Bicomplex::set_d0(Cell c, Matrix m) {
    require_shape(m, dim(up(c)), dim(c), ("d0 at " + at_cell(c)).c_str());
    if (m.field() != field_ && !m.empty()) throw FieldMismatch("d0 over the wrong field");
    if (m.empty() || m.is_zero()) {
        d0_.erase(c);
    } else {
        d0_[c] = std::move(m);
    }
}

void Bicomplex::set_d1(Cell c, Matrix m) {
    require_shape(m, dim(left(c)), dim(c), ("d1 at " + at_cell(c)).c_str());
    if (m.field() != field_ && !m.empty()) throw FieldMismatch("d1 over the wrong field");
    if (m.empty() || m.is_zero()) {
        d1_.erase(c);
    } else {
        d1_[c] = std::move(m);
    }
}

std::size_t Bicomplex::dim(Cell c) const {
    auto it = dims_.find(c);
    return it == dims_.end() ? 0 : it->second;
}

Matrix Bicomplex::d0(Cell c) const {
    auto it = d0_.find(c);
    if (it != d0_.end()) return it->second;
    return Matrix(field_, dim(up(c)), dim(c));
}

Matrix Bicomplex::d1(Cell c) const {
    auto it = d1_.find(c);
    if (it != d1_.end()) return it->second;
    return Matrix(field_, dim(left(c)), dim(c));
}

std::vector<Cell> Bicomplex::cells() const {
    std::vector<Cell> out;
    for (const auto& [c, d] : dims_) out.push_back(c);
    return out;
}

Range Bicomplex::columns() const {
    Range r;
    for (const auto& [c, d] : dims_) r = r.join({c.p, c.p});
    return r;
}

Range Bicomplex::total_degrees() const {
    Range r;
    for (const auto& [c, d] : dims_) r = r.join({c.q - c.p, c.q - c.p});
    return r;
}

std::size_t Bicomplex::total_dim() const {
    std::size_t n = 0;
    for (const auto& [c, d] : dims_) n += d;
    return n;
}

std::vector<std::string> Bicomplex::violations() const {
    std::vector<std::string> out;
    for (Cell c : cells()) {
        if (!(d0(up(c)) * d0(c)).is_zero()) out.push_back("d0 d0 != 0 at " + at_cell(c));
        if (!(d1(left(c)) * d1(c)).is_zero()) out.push_back("d1 d1 != 0 at " + at_cell(c));
        if (!(d0(left(c)) * d1(c) == d1(up(c)) * d0(c))) out.push_back("d0 d1 != d1 d0 at " + at_cell(c));
    }
    return out;
}

void Bicomplex::validate() const {
    auto v = violations();
    if (!v.empty()) throw ValidationError("invalid bicomplex: " + join_lines(v));
}

bool operator==(const Bicomplex& a, const Bicomplex& b) {
    if (a.field_ != b.field_ || a.dims_ != b.dims_) return false;
    for (Cell c : a.cells()) {
        if (!(a.d0(c) == b.d0(c)) || !(a.d1(c) == b.d1(c))) return false;
    }
    return true;
}

Bicomplex single(Field field, Cell c) {
    Bicomplex a(field);
    a.set_cell(c, 1);
    return a;
}

BiMap::BiMap(Bicomplex source, Bicomplex target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.field() != target_.field()) throw FieldMismatch("bicomplex map over different fields");
}

void BiMap::set(Cell c, Matrix m) {
    require_shape(m, target_.dim(c), source_.dim(c), ("bicomplex map at " + at_cell(c)).c_str());
    if (m.empty()) {
        maps_.erase(c);
    } else {
        maps_[c] = std::move(m);
    }
}

Matrix BiMap::at(Cell c) const {
    auto it = maps_.find(c);
    if (it != maps_.end()) return it->second;
    return Matrix(source_.field(), target_.dim(c), source_.dim(c));
}

std::vector<Cell> BiMap::cells() const {
    std::set<Cell> s;
    for (Cell c : source_.cells()) s.insert(c);
    for (Cell c : target_.cells()) s.insert(c);
    return {s.begin(), s.end()};
}

bool BiMap::is_injective() const {
    for (Cell c : source_.cells()) {
        if (at(c).rank() != source_.dim(c)) return false;
    }
    return true;
}

bool BiMap::is_surjective() const {
    for (Cell c : target_.cells()) {
        if (at(c).rank() != target_.dim(c)) return false;
    }
    return true;
}

bool BiMap::is_iso() const {
    for (Cell c : cells()) {
        if (!at(c).is_invertible()) return false;
    }
    return true;
}

std::vector<std::string> BiMap::violations() const {
    std::vector<std::string> out;
    for (Cell c : source_.cells()) {
        if (!(at(up(c)) * source_.d0(c) == target_.d0(c) * at(c))) out.push_back("map does not commute with d0 at " + at_cell(c));
        if (!(at(left(c)) * source_.d1(c) == target_.d1(c) * at(c))) out.push_back("map does not commute with d1 at " + at_cell(c));
    }
    return out;
}

void BiMap::validate() const {
    auto v = violations();
    if (!v.empty()) throw ValidationError("invalid bicomplex map: " + join_lines(v));
}

bool operator==(const BiMap& a, const BiMap& b) {
    if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
    for (Cell c : a.cells()) {
        if (!(a.at(c) == b.at(c))) return false;
    }
    return true;
}

BiMap identity_map(const Bicomplex& a) {
    BiMap f(a, a);
    for (Cell c : a.cells()) f.set(c, Matrix::identity(a.field(), a.dim(c)));
    return f;
}

BiMap zero_map(const Bicomplex& a, const Bicomplex& b) { return BiMap(a, b); }

BiMap compose(const BiMap& g, const BiMap& f) {
    if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f differs from source of g");
    BiMap h(f.source(), g.target());
    for (Cell c : f.source().cells()) {
        if (g.target().dim(c) > 0) h.set(c, g.at(c) * f.at(c));
    }
    return h;
}

BiMap inverse(const BiMap& f) {
    BiMap g(f.target(), f.source());
    for (Cell c : f.cells()) {
        const Matrix m = f.at(c);
        if (!m.is_invertible()) throw PreconditionError("inverse: map is not an isomorphism at " + at_cell(c));
        if (!m.empty()) g.set(c, m.inverse());
    }
    return g;
}

BiDirectSum direct_sum(const Bicomplex& a, const Bicomplex& b) {
    if (a.field() != b.field()) throw FieldMismatch("direct sum over different fields");
    const Field f = a.field();
    Bicomplex s(f);
    std::set<Cell> cs;
    for (Cell c : a.cells()) cs.insert(c);
    for (Cell c : b.cells()) cs.insert(c);
    for (Cell c : cs) s.set_cell(c, a.dim(c) + b.dim(c));
    for (Cell c : cs) {
        s.set_d0(c, block_diag(a.d0(c), b.d0(c)));
        s.set_d1(c, block_diag(a.d1(c), b.d1(c)));
    }
    BiDirectSum out{s, BiMap(a, s), BiMap(b, s), BiMap(s, a), BiMap(s, b)};
    for (Cell c : cs) {
        const std::size_t da = a.dim(c), db = b.dim(c);
        Matrix i1(f, da + db, da), i2(f, da + db, db);
        i1.set_block(0, 0, Matrix::identity(f, da));
        i2.set_block(da, 0, Matrix::identity(f, db));
        out.in1.set(c, i1);
        out.in2.set(c, i2);
        out.pr1.set(c, i1.transpose());
        out.pr2.set(c, i2.transpose());
    }
    return out;
}

BiMap copair(const BiMap& f, const BiMap& g, const BiDirectSum& ab) {
    if (!(f.target() == g.target())) throw DimensionMismatch("copair: targets differ");
    BiMap h(ab.sum, f.target());
    for (Cell c : ab.sum.cells()) {
        if (f.target().dim(c) > 0) h.set(c, hstack(f.at(c), g.at(c)));
    }
    return h;
}

BiMap pair(const BiMap& f, const BiMap& g, const BiDirectSum& ab) {
    if (!(f.source() == g.source())) throw DimensionMismatch("pair: sources differ");
    BiMap h(f.source(), ab.sum);
    for (Cell c : f.source().cells()) {
        if (ab.sum.dim(c) > 0) h.set(c, vstack(f.at(c), g.at(c)));
    }
    return h;
}

}  // namespace specseq
