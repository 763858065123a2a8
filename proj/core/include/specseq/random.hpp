#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/filtered.hpp"

namespace specseq {

/// Portable seeded generator: mt19937_64 with range reduction done here,
/// so sequences do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seed for case `index` of suite `suite` under a master seed.
    static std::uint64_t derive(std::uint64_t seed, std::string_view suite, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [lo, hi].
    int uniform(int lo, int hi);
    /// True with probability num/den.
    bool chance(int num, int den) { return uniform(1, den) <= num; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

    /// Nonzero-biased entry: a/b with a, b in [-3, 3] over Q, an integer in
    /// [-3, 3] over F_p.
    Scalar scalar(Field field);
    Scalar nonzero_scalar(Field field);

private:
    std::mt19937_64 engine_;
};

struct FilteredGenOptions {
    int max_dim = 4;
    int deg_lo = -3, deg_hi = 3;
    int weight_lo = -3, weight_hi = 3;
    int max_pieces = 5;
    int max_drop = 4;
    /// Apply a random filtration-preserving change of basis.
    bool scramble = true;
};

/// A random bounded filtered complex, built as a sum of one-generator and
/// two-generator pieces and then scrambled.
FilteredComplex random_filtered(Rng& rng, Field field, const FilteredGenOptions& opt = {});
/// A random filtered change of basis applied to `a`, with the isomorphism a -> result.
ChainMap random_filtered_iso(Rng& rng, const FilteredComplex& a);
/// A random element of Hom(a, b).
ChainMap random_chain_map(Rng& rng, const FilteredComplex& a, const FilteredComplex& b);

struct BicomplexGenOptions {
    int max_dim = 4;
    int col_lo = -3, col_hi = 3;
    int row_lo = -3, row_hi = 3;
    int max_pieces = 5;
    /// Largest r of a ZW_r staircase piece.
    int max_r = 3;
    /// Apply a random change of basis in every cell.
    bool scramble = true;
};

/// A random bounded bicomplex: a sum of single cells, d0 edges, ZW_0
/// squares and ZW_r staircases, then scrambled.
Bicomplex random_bicomplex(Rng& rng, Field field, const BicomplexGenOptions& opt = {});
/// A random cellwise change of basis applied to `a`, with the isomorphism a -> result.
BiMap random_bicomplex_iso(Rng& rng, const Bicomplex& a);
/// A random element of Hom(a, b).
BiMap random_bimap(Rng& rng, const Bicomplex& a, const Bicomplex& b);

}  // namespace specseq
