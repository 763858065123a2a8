#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "specseq/filtered.hpp"
#include "specseq/matrix.hpp"

namespace specseq {

/// A position (i, j) of a bicomplex: column i, row j.
using Cell = Bidegree;

/// Bounded bicomplex of finite-dimensional spaces A^{i,j} with
/// d0 : A^{i,j} -> A^{i,j+1} and d1 : A^{i,j} -> A^{i-1,j}, satisfying
/// d0 d0 = 0, d1 d1 = 0 and d0 d1 = d1 d0.
class Bicomplex {
public:
    explicit Bicomplex(Field field = Field::rationals()) : field_(field) {}

    Field field() const { return field_; }

    /// Replaces cell c (and drops every differential touching it).
    void set_cell(Cell c, std::size_t dim);
    /// m must be dim(i, j+1) x dim(i, j).
    void set_d0(Cell c, Matrix m);
    /// m must be dim(i-1, j) x dim(i, j).
    void set_d1(Cell c, Matrix m);

    std::size_t dim(Cell c) const;
    Matrix d0(Cell c) const;
    Matrix d1(Cell c) const;

    /// Cells of nonzero dimension, sorted.
    std::vector<Cell> cells() const;
    bool is_zero() const { return dims_.empty(); }
    Range columns() const;
    /// Range of total degrees j - i.
    Range total_degrees() const;
    std::size_t total_dim() const;

    std::vector<std::string> violations() const;
    void validate() const;

    friend bool operator==(const Bicomplex& a, const Bicomplex& b);

private:
    Field field_;
    std::map<Cell, std::size_t> dims_;
    std::map<Cell, Matrix> d0_;
    std::map<Cell, Matrix> d1_;
};

/// One-dimensional bicomplex concentrated in cell c.
Bicomplex single(Field field, Cell c);

/// Morphism of bicomplexes, one matrix per cell.
class BiMap {
public:
    BiMap() = default;
    BiMap(Bicomplex source, Bicomplex target);

    const Bicomplex& source() const { return source_; }
    const Bicomplex& target() const { return target_; }

    void set(Cell c, Matrix m);
    Matrix at(Cell c) const;
    /// Cells where either side is nonzero.
    std::vector<Cell> cells() const;

    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const;

    std::vector<std::string> violations() const;
    void validate() const;

    friend bool operator==(const BiMap& a, const BiMap& b);

private:
    Bicomplex source_;
    Bicomplex target_;
    std::map<Cell, Matrix> maps_;
};

BiMap identity_map(const Bicomplex& a);
BiMap zero_map(const Bicomplex& a, const Bicomplex& b);
BiMap compose(const BiMap& g, const BiMap& f);
/// Cellwise inverse of an isomorphism.
BiMap inverse(const BiMap& f);

struct BiDirectSum {
    Bicomplex sum;
    BiMap in1, in2, pr1, pr2;
};
/// Basis of each cell is A's basis followed by B's.
BiDirectSum direct_sum(const Bicomplex& a, const Bicomplex& b);
BiMap copair(const BiMap& f, const BiMap& g, const BiDirectSum& ab);
BiMap pair(const BiMap& f, const BiMap& g, const BiDirectSum& ab);

}  // namespace specseq
