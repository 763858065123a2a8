#include "bicomplex_oracle.hpp"
#include "doctest.h"
#include "specseq/bicomplex_ops.hpp"
#include "specseq/random.hpp"
#include "specseq/spectral.hpp"
#include "specseq/tot.hpp"
#include "specseq/witness.hpp"

using namespace specseq;

namespace {

const Field Q = Field::rationals();
const Field F3 = Field::prime(3);

std::vector<Bicomplex> random_bicomplexes(Field f, int count, std::uint64_t seed, BicomplexGenOptions opt = {}) {
    std::vector<Bicomplex> out;
    for (int k = 0; k < count; ++k) {
        Rng rng(Rng::derive(seed, "bicomplex-test", k));
        out.push_back(random_bicomplex(rng, f, opt));
    }
    return out;
}

/// Every cell reachable by a page query of A, plus a margin.
std::vector<Cell> window(const Bicomplex& a, int margin) {
    std::set<Cell> s;
    for (Cell c : a.cells()) {
        for (int dp = -margin; dp <= margin; ++dp) {
            for (int dq = -margin; dq <= margin; ++dq) s.insert({c.p + dp, c.q + dq});
        }
    }
    return {s.begin(), s.end()};
}

Bicomplex d0_edge(Field f, Cell c) {
    Bicomplex e(f);
    e.set_cell(c, 1);
    e.set_cell({c.p, c.q + 1}, 1);
    e.set_d0(c, Matrix::identity(f, 1));
    return e;
}

}  // namespace

TEST_CASE("bicomplex validation") {
    CHECK(Bicomplex(Q).violations().empty());
    Bicomplex a(Q);
    a.set_cell({0, 0}, 1);
    a.set_cell({0, 1}, 1);
    a.set_cell({-1, 0}, 1);
    a.set_cell({-1, 1}, 1);
    const Matrix one = Matrix::identity(Q, 1);
    a.set_d0({0, 0}, one);
    a.set_d1({0, 0}, one);
    a.set_d0({-1, 0}, one);
    a.set_d1({0, 1}, one * Q.from_int(2));
    const auto v = a.violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("d0 d1") != std::string::npos);
    CHECK_THROWS_AS(a.validate(), ValidationError);
    a.set_d1({0, 1}, one);
    CHECK(a.violations().empty());
    CHECK(a == rep_witness_cycle(Q, 0, 0, 0));
}

TEST_CASE("witness_cycles examples") {
    const Bicomplex a = random_bicomplexes(Q, 1, 4)[0];
    for (Cell c : a.cells()) CHECK(witness_cycles(a, 0, c.p, c.q).dim() == a.dim(c));
    // ZW_1(0,0) is a single d1 arrow out of (0,0).
    CHECK(witness_cycles(rep_witness_cycle(Q, 1, 0, 0), 1, 0, 0).dim() == 1);
    // In the square on (0,-1) the top-right corner (0,0) is a d0-cycle.
    CHECK(witness_cycles(rep_witness_cycle(Q, 0, 0, -1), 1, 0, 0).dim() == 1);
    CHECK(witness_cycles(rep_witness_cycle(Q, 0, 0, 0), 1, 0, 0).dim() == 0);
    CHECK(witness_cycles(Bicomplex(Q), 3, 0, 0).is_zero());
}

TEST_CASE("witness_boundaries examples") {
    const Bicomplex sq = rep_witness_cycle(Q, 0, 0, -1);
    CHECK(witness_boundaries(sq, 0, 0, 0).image.is_zero());
    CHECK(witness_boundaries(sq, 1, 0, 0).image.dim() == 1);
    CHECK(page(sq, 1).dim({0, 0}) == 0);
    for (const Bicomplex& a : random_bicomplexes(Q, 10, 5)) {
        for (Cell c : window(a, 1)) {
            const WitnessBoundaries wb = witness_boundaries(a, 2, c.p, c.q);
            const std::size_t expect = witness_cycles(a, 1, c.p + 1, c.q).dim() + a.dim({c.p, c.q - 1}) +
                                       witness_cycles(a, 1, c.p - 1, c.q - 1).dim();
            CHECK(wb.source.dim() == expect);
        }
    }
}

TEST_CASE("bicomplex page examples") {
    for (int p = -1; p <= 1; ++p) CHECK(page(rep_witness_cycle(Q, 0, p, 2), 1).is_zero());
    for (int r = 0; r <= 5; ++r) {
        const PageTable t = page(single(Q, {2, -1}), r);
        CHECK(t.entries.size() == 1);
        CHECK(t.dim({2, -1}) == 1);
    }
    CHECK(page(Bicomplex(Q), 2).is_zero());
    // ZW_r(p,q) survives to E_r and dies at E_{r+1}.
    for (int r = 1; r <= 4; ++r) {
        const Bicomplex z = rep_witness_cycle(Q, r, 1, 1);
        CHECK(page(z, r).dim({1, 1}) == 1);
        CHECK(page(z, r).dim({1 - r, 2 - r}) == 1);
        CHECK(page(z, r + 1).is_zero());
    }
}

TEST_CASE("E_0 is the bicomplex with d0") {
    for (const Bicomplex& a : random_bicomplexes(Q, 20, 6)) {
        const PageTable t = page(a, 0);
        for (Cell c : a.cells()) {
            CHECK(t.dim(c) == a.dim(c));
            const PageEntry& e = t.entries.at(c);
            CHECK(e.section().is_identity());
            CHECK(t.differential(Q, c) == a.d0(c));
        }
    }
}

TEST_CASE("E_1 is vertical homology") {
    for (const Bicomplex& a : random_bicomplexes(Q, 30, 7)) {
        const PageTable t = page(a, 1);
        for (Cell c : a.cells()) CHECK(t.dim(c) == oracle::vertical_homology_dim(a, c));
    }
}

TEST_CASE("bicomplex pages agree with enumeration over F_3") {
    BicomplexGenOptions opt;
    opt.max_dim = 2;
    opt.col_lo = -2;
    opt.col_hi = 2;
    opt.row_lo = -2;
    opt.row_hi = 2;
    opt.max_pieces = 4;
    opt.max_r = 2;
    int nonzero = 0;
    for (const Bicomplex& a : random_bicomplexes(F3, 25, 8, opt)) {
        for (int r = 0; r <= 3; ++r) {
            const PageTable t = page(a, r);
            for (Cell c : a.cells()) {
                const std::size_t expect = oracle::brute_witness_page_dim(a, r, c.p, c.q);
                CHECK(t.dim(c) == expect);
                nonzero += expect > 0;
            }
        }
    }
    CHECK(nonzero > 0);
}

TEST_CASE("bicomplex page recursion") {
    for (Field f : {Q, F3}) {
        for (const Bicomplex& a : random_bicomplexes(f, 50, 9)) {
            for (int r = 0; r <= 4; ++r) {
                const PageTable t = page(a, r);
                CHECK(t.squares_to_zero(f));
                CHECK(page(a, r + 1).dims() == t.homology_dims(f));
            }
        }
    }
}

TEST_CASE("witness pages agree with the pages of Tot") {
    int nontrivial = 0;
    for (const Bicomplex& a : random_bicomplexes(Q, 50, 10)) {
        const FilteredComplex t = tot_pi(a);
        for (int r = 0; r <= 4; ++r) {
            const auto bd = page(a, r).dims();
            CHECK(bd == page(t, r).dims());
            nontrivial += !bd.empty();
        }
        // Late pages give the associated graded of the total cohomology.
        for (const auto& [b, d] : page(a, 12).dims()) CHECK(d == oracle::einf_dim(t, b.p, b.q - b.p));
    }
    CHECK(nontrivial > 50);
}

TEST_CASE("representability of witness cycles") {
    for (const Bicomplex& a : random_bicomplexes(Q, 12, 11)) {
        for (int r = 0; r <= 3; ++r) {
            for (Cell c : window(a, 1)) {
                const std::size_t hom = hom_space(rep_witness_cycle(Q, r, c.p, c.q), a).size();
                CHECK(hom == witness_cycles(a, r, c.p, c.q).dim());
            }
        }
    }
}

TEST_CASE("map_from_witness and witness_of are inverse") {
    for (const Bicomplex& a : random_bicomplexes(Q, 10, 12)) {
        for (int r = 0; r <= 3; ++r) {
            for (Cell c : a.cells()) {
                const Subspace z = witness_cycles(a, r, c.p, c.q);
                for (std::size_t k = 0; k < z.dim(); ++k) {
                    const Matrix t = z.basis().col(k);
                    CHECK(witness_of(map_from_witness(a, r, c.p, c.q, t), r, c.p, c.q) == t);
                }
            }
        }
    }
}

TEST_CASE("phi pulls back to w_r") {
    for (const Bicomplex& a : random_bicomplexes(Q, 8, 13)) {
        for (int r = 1; r <= 3; ++r) {
            for (Cell c : a.cells()) {
                const BiMap ph = witness_phi(Q, r, c.p, c.q);
                ph.validate();
                CHECK(ph.target() == rep_witness_boundary(Q, r, c.p, c.q - 1));
                const auto homs = hom_space(ph.target(), a);
                CHECK(homs.size() == witness_boundaries(a, r, c.p, c.q).source.dim());
                Matrix pulled(Q, witness_slots(a, r, c.p, c.q).total, 0);
                for (const BiMap& h : homs) pulled = hstack(pulled, witness_of(compose(h, ph), r, c.p, c.q));
                CHECK(Subspace::span(pulled) == witness_boundaries(a, r, c.p, c.q).image);
            }
        }
    }
}

TEST_CASE("witness representing objects") {
    const Bicomplex sq = rep_witness_cycle(Q, 0, 0, 0);
    CHECK(sq.cells() == std::vector<Cell>{{-1, 0}, {-1, 1}, {0, 0}, {0, 1}});
    const Bicomplex z2 = rep_witness_cycle(Q, 2, 2, 1);
    CHECK(z2.cells() == std::vector<Cell>{{0, 0}, {1, 0}, {1, 1}, {2, 1}});
    CHECK(z2.columns().lo == 0);
    CHECK(z2.columns().hi == 2);
    for (int r = 1; r <= 4; ++r) CHECK(rep_witness_cycle(Q, r, 0, 0).cells().size() == static_cast<std::size_t>(2 * r));
    CHECK(rep_witness_boundary(Q, 0, 0, 0).is_zero());
    CHECK(rep_witness_boundary(Q, 1, 0, 0) == rep_witness_cycle(Q, 0, 0, 0));
}

TEST_CASE("bicomplex suspension and loops") {
    Bicomplex s = suspension(single(Q, {0, 0}), 1);
    CHECK(s.cells() == std::vector<Cell>{{1, 0}});
    s = suspension(single(Q, {0, 0}), 3);
    CHECK(s.cells() == std::vector<Cell>{{3, 2}});
    const Bicomplex twice = suspension(suspension(single(Q, {0, 0}), 2), 2);
    CHECK(twice.cells() == std::vector<Cell>{{4, 2}});
    // Signs: (-1)^{r+1} on d0 and (-1)^r on d1.
    const Bicomplex sq = rep_witness_cycle(Q, 0, 0, 0);
    for (int r = 0; r <= 3; ++r) {
        const Bicomplex ss = suspension(sq, r);
        const Scalar s0 = r % 2 == 1 ? Q.one() : -Q.one();
        const Scalar s1 = r % 2 == 0 ? Q.one() : -Q.one();
        CHECK(ss.d0({r, r - 1})(0, 0) == s0);
        CHECK(ss.d1({r, r - 1})(0, 0) == s1);
    }
    for (const Bicomplex& a : random_bicomplexes(Q, 30, 14)) {
        for (int r = 0; r <= 3; ++r) {
            CHECK(loops(suspension(a, r), r) == a);
            CHECK(suspension(loops(a, r), r) == a);
            const Bicomplex sa = suspension(a, r);
            sa.validate();
            for (int k = 0; k <= r + 2; ++k) {
                const PageTable ps = page(sa, k), pa = page(a, k);
                CHECK(ps.entries.size() == pa.entries.size());
                for (const auto& [c, e] : pa.entries) CHECK(ps.dim({c.p + r, c.q + r - 1}) == e.dim);
            }
        }
    }
}

TEST_CASE("tensor products") {
    const Bicomplex unit = single(Q, {0, 0});
    for (const Bicomplex& a : random_bicomplexes(Q, 20, 15)) {
        CHECK(tensor(unit, a) == a);
        CHECK(tensor(a, unit) == a);
        const Bicomplex x = random_bicomplexes(Q, 1, 100 + a.total_dim())[0];
        const Bicomplex t = tensor(x, a);
        CHECK(t.violations().empty());
        for (Cell c : window(t, 0)) {
            std::size_t expect = 0;
            for (Cell xc : x.cells()) expect += x.dim(xc) * a.dim({c.p - xc.p, c.q - xc.q});
            CHECK(t.dim(c) == expect);
        }
    }
}

TEST_CASE("tensor_map is functorial") {
    for (int k = 0; k < 10; ++k) {
        Rng rng(Rng::derive(16, "tensor-map", k));
        const Bicomplex x = random_bicomplex(rng, Q);
        const Bicomplex a = random_bicomplex(rng, Q);
        const BiMap f = random_bicomplex_iso(rng, x);
        const BiMap g = random_bicomplex_iso(rng, a);
        const BiMap fg = tensor_map(f, g);
        CHECK(fg.is_iso());
        CHECK(tensor_map(identity_map(x), identity_map(a)) == identity_map(tensor(x, a)));
        CHECK(compose(tensor_map(inverse(f), inverse(g)), fg) == identity_map(tensor(x, a)));
    }
}

TEST_CASE("bicomplex cones are acyclic and psi is witness-surjective") {
    CHECK(cone(Bicomplex(Q), 2).is_zero());
    const BiMap p1 = psi(single(Q, {0, 0}), 1);
    CHECK(is_zw_surjective(p1, 0));
    CHECK(is_zw_surjective(p1, 1));
    int nonzero = 0;
    for (int r = 0; r <= 2; ++r) {
        for (const Bicomplex& a : random_bicomplexes(Q, 25, 17 + r)) {
            const Bicomplex c = cone(a, r);
            CHECK(c.violations().empty());
            CHECK(page(c, r + 1).is_zero());
            const BiMap p = psi(a, r);
            CHECK(p.target() == suspension(a, r));
            for (int k = 0; k <= r; ++k) CHECK(is_zw_surjective(p, k));
            nonzero += !a.is_zero();
        }
    }
    CHECK(nonzero > 50);
}

TEST_CASE("nw and omega_i_inclusion") {
    CHECK(nw(Q, 1).cells() == std::vector<Cell>{{0, 0}});
    for (int r = 1; r <= 4; ++r) {
        const Bicomplex x = nw(Q, r);
        CHECK(x.cells().size() == static_cast<std::size_t>(2 * r - 1));
        CHECK(x.columns().lo == 0);
        CHECK(x.columns().hi == r - 1);
        CHECK(x.dim({0, 0}) == 1);
    }
    CHECK_THROWS_AS(nw(Q, 0), PreconditionError);
    CHECK_THROWS_AS(omega_i_inclusion(single(Q, {0, 0}), 0), PreconditionError);
    const BiMap i1 = omega_i_inclusion(single(Q, {0, 0}), 1);
    CHECK(i1.source() == loops(single(Q, {0, 0}), 1));
    CHECK(is_r_weq(i1, 1));
    for (int r = 1; r <= 2; ++r) {
        for (const Bicomplex& a : random_bicomplexes(Q, 15, 20 + r)) {
            const BiMap i = omega_i_inclusion(a, r);
            CHECK(i.source() == loops(a, r));
            CHECK(is_r_weq(i, 1));
        }
    }
}

TEST_CASE("bicomplex limits and colimits") {
    for (const Bicomplex& a : random_bicomplexes(Q, 15, 23)) {
        const BiMap id = identity_map(a);
        const BiPushout po = pushout(id, id);
        CHECK(po.complex.total_dim() == a.total_dim());
        CHECK(po.from_a.is_iso());
        CHECK(compose(po.from_a, id) == compose(po.from_b, id));
        const BiPullback pb = pullback(id, id);
        CHECK(pb.to_a.is_iso());
        CHECK(kernel(id).complex.is_zero());
        CHECK(cokernel(id).complex.is_zero());
        const BiMap z = zero_map(a, a);
        CHECK(kernel(z).complex == a);
        CHECK(cokernel(z).complex == a);
    }
}

TEST_CASE("pushout universal property in bicomplexes") {
    for (int k = 0; k < 10; ++k) {
        Rng rng(Rng::derive(24, "bi-pushout", k));
        const Bicomplex x = random_bicomplex(rng, Q);
        const Bicomplex a = random_bicomplex(rng, Q);
        const Bicomplex b = random_bicomplex(rng, Q);
        const BiMap f = random_bimap(rng, x, a);
        const BiMap g = random_bimap(rng, x, b);
        const BiPushout po = pushout(f, g);
        po.from_a.validate();
        po.from_b.validate();
        CHECK(compose(po.from_a, f) == compose(po.from_b, g));
        // Hom(P, T) is the fibre product of Hom(A, T) and Hom(B, T) over Hom(X, T).
        const Bicomplex t = random_bicomplex(rng, Q);
        const std::size_t hp = hom_space(po.complex, t).size();
        const auto ha = hom_space(a, t);
        const auto hb = hom_space(b, t);
        std::size_t rows = 0;
        for (Cell c : x.cells()) rows += x.dim(c) * t.dim(c);
        Matrix m(Q, rows, ha.size() + hb.size());
        for (std::size_t j = 0; j < ha.size() + hb.size(); ++j) {
            const BiMap h = j < ha.size() ? compose(ha[j], f) : compose(hb[j - ha.size()], g);
            std::size_t off = 0;
            for (Cell c : x.cells()) {
                const Matrix comp = h.at(c) * (j < ha.size() ? Q.one() : -Q.one());
                for (std::size_t u = 0; u < comp.rows(); ++u) {
                    for (std::size_t v = 0; v < comp.cols(); ++v) m(off + u * comp.cols() + v, j) = comp(u, v);
                }
                off += comp.rows() * comp.cols();
            }
        }
        CHECK(hp == ha.size() + hb.size() - m.rank());
    }
}

TEST_CASE("pullback of Omega^r psi along zero") {
    for (int r = 1; r <= 2; ++r) {
        for (const Bicomplex& a : random_bicomplexes(Q, 10, 25 + r)) {
            const BiMap lp = loops(psi(a, r), r);
            const BiPullback pb = pullback(lp, zero_map(Bicomplex(Q), lp.target()));
            const Bicomplex expect = tensor(loops(nw(Q, r), r), a);
            CHECK(pb.complex.total_dim() == expect.total_dim());
            for (Cell c : window(expect, 0)) CHECK(pb.complex.dim(c) == expect.dim(c));
        }
    }
}

TEST_CASE("bicomplex hom_space sanity") {
    for (const Bicomplex& a : random_bicomplexes(Q, 10, 27)) {
        CHECK(hom_space(Bicomplex(Q), a).empty());
        for (Cell c : window(a, 1)) CHECK(hom_space(single(Q, c), a).size() == kernel_basis(vstack(a.d0(c), a.d1(c))).dim());
        for (const BiMap& f : hom_space(a, a)) CHECK(f.violations().empty());
    }
}
