#pragma once

#include <map>
#include <string>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/filtered.hpp"
#include "specseq/page.hpp"
#include "specseq/report.hpp"

namespace specseq {

/// Tot^Pi(A)^n = prod_i A^{i,i+n}, components ordered by column; A^{i,i+n}
/// gets weight i and D = d0 + (-1)^n d1 (d1 taken from column i+1).
FilteredComplex tot_pi(const Bicomplex& a);
/// Coincides with tot_pi on bounded input.
FilteredComplex tot_oplus(const Bicomplex& a);
ChainMap tot_pi(const BiMap& f);

/// Offset of the column-i block inside Tot^Pi(A)^n.
std::map<int, std::size_t> tot_offsets(const Bicomplex& a, int n);

/// Columns [col_lo, col_hi] of an unbounded bicomplex. Page queries are
/// trusted in columns at least `margin` away from a truncated edge.
struct Window {
    int col_lo = 0;
    int col_hi = 0;
    int margin = 1;
    void validate() const;
};

/// Columns beyond `from_column` (on the truncated side) repeat the cell
/// dimensions recorded per total degree.
struct StableTail {
    bool left = true;
    int from_column = 0;
    std::map<int, std::size_t> dims;
};

struct TruncatedBicomplex {
    Window window;
    Bicomplex body;
    StableTail tail;
};

/// L(A) on the window: cell (i, i+n) is A^n/F_{i-1} + A^{n-1}/F_i in the
/// bases of the weight >= i and weight >= i+1 vectors, with
/// d0(x, y) = (dx, x - dy) and d1(x, y) = (0, (-1)^{n+1} x). Columns below
/// col_lo are cut off (a quotient). Requires col_hi >= max weight + 1.
TruncatedBicomplex l_adjoint(const FilteredComplex& a, const Window& w);
/// R(A) on the window: cell (i, i+n) is F_{i-1}A^{n+1} + F_iA^n with
/// d0(x, y) = (-dx, x + dy) and d1(x, y) = (0, (-1)^{n+1} x). Columns above
/// col_hi are cut off (a sub-bicomplex). Requires col_lo <= min weight - 1.
TruncatedBicomplex r_adjoint(const FilteredComplex& a, const Window& w);

/// The adjunct A -> Tot^Pi(B) of f : L(A) -> B, x |-> (f^{i,i+n}(q_i x, 0))_i.
/// B must live in columns >= w.col_lo.
ChainMap transpose_down(const FilteredComplex& a, const Window& w, const BiMap& f);
/// The adjunct L(A) -> B of g : A -> Tot^Pi(B),
/// (x, y) |-> g^i(x) + (-1)^n d1 g^{i+1}(y). Throws InternalError if the
/// value depends on the choice of lifts.
BiMap transpose_up(const FilteredComplex& a, const Window& w, const Bicomplex& b, const ChainMap& g);

/// One summand ZW_r(p, q) of a decomposition; `truncated` when cut by the
/// window.
struct Summand {
    int r = 0;
    Cell cell;
    bool truncated = false;
};

struct Decomposition {
    TruncatedBicomplex l;
    Bicomplex sum;
    BiMap iso;  // sum -> l.body
    std::vector<Summand> summands;
    /// The projection of `sum` onto its first summand.
    BiMap first_projection;
    bool verified = false;
};
/// L Z_s(p, n) on the window as ZW_s(p, p+n) (when s >= 1) plus
/// ZW_0(c, c+n) for c = p-s down to col_lo. Needs col_lo <= p-s-2 and
/// col_hi >= p+1.
Decomposition decompose_l_of_cycle(Field field, int s, int p, int n, const Window& w);

struct UnitReport {
    int s = 0, p = 0, n = 0;
    Window window;
    std::vector<Check> checks;
    /// Nonzero E_s entries of Z_s(p, n) and of Tot^Pi ZW_s(p, p+n).
    std::map<Bidegree, std::size_t> source_page;
    std::map<Bidegree, std::size_t> target_page;
    /// E_s of the unit through the ZW_s summand.
    PageMap unit_page;
    /// The bidegree (p-s-1, p+n-s) sometimes quoted for the second
    /// generator, and whether the computed page has an entry there.
    Bidegree stated_second;
    bool stated_second_found = false;
    bool pass() const;
};
/// Checks that the unit Z_s(p, n) -> Tot^Pi L Z_s(p, n) is an isomorphism on
/// E_s, via decompose_l_of_cycle. s >= 1 and margin >= s + 1.
UnitReport verify_unit_on_cycle(Field field, int s, int p, int n, const Window& w);

}  // namespace specseq
