#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "specseq/subspace.hpp"

using namespace specseq;

namespace {

const Field Q = Field::rationals();

Matrix ints(std::initializer_list<std::initializer_list<long long>> rows) { return Matrix::from_ints(Q, rows); }

bool in_span(const Matrix& cols, const Matrix& v) {
    for (const auto& c : oracle::all_vectors(cols.field(), cols.cols())) {
        if (cols * c == v) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
    const Scalar a = Q.from_ratio(2, -6);
    CHECK(a.to_string() == "-1/3");
    CHECK((a + Q.from_ratio(1, 3)).is_zero());
    CHECK((a * Q.from_int(-3)).is_one());
    CHECK(Q.parse_scalar("4/8").to_string() == "1/2");
    CHECK(Q.parse_scalar(" -7 ").to_string() == "-7");

    const Field f5 = Field::prime(5);
    CHECK(f5.from_int(-1).to_string() == "4");
    CHECK((f5.from_int(3) * f5.from_int(2)).to_string() == "1");
    CHECK((f5.from_int(1) / f5.from_int(2)).to_string() == "3");
    CHECK(f5.parse_scalar("1/2").to_string() == "3");
}

TEST_CASE("fields are parsed and mixing them throws") {
    CHECK(Field::parse("Q").is_rational());
    CHECK(Field::parse("Fp:7").modulus() == 7);
    CHECK(Field::parse("F_11").modulus() == 11);
    CHECK(Field::parse("Fp:7").name() == "Fp:7");
    CHECK_THROWS_AS(Field::parse("Fp:8"), PreconditionError);
    CHECK_THROWS_AS(Field::parse("R"), ParseError);
    CHECK_THROWS_AS(Q.one() + Field::prime(3).one(), FieldMismatch);
    CHECK_THROWS_AS(Q.zero().inverse(), PreconditionError);
    CHECK_THROWS_AS(Q.parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(Q.parse_scalar("x"), ParseError);
}

TEST_CASE("rank examples") {
    CHECK(Matrix::identity(Q, 2).rank() == 2);
    CHECK(Matrix(Q, 3, 4).rank() == 0);
    CHECK(ints({{1, 2}, {2, 4}}).rank() == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(Matrix::identity(Q, 3)).is_zero());
    CHECK(kernel_basis(Matrix(Q, 2, 3)).is_full());
    const Subspace k = kernel_basis(ints({{1, 1}}));
    CHECK(k.dim() == 1);
    CHECK(k == Subspace::span(Matrix::from_ints(Q, {{1}, {-1}})));
}

TEST_CASE("intersection examples") {
    const Subspace u = Subspace::span(ints({{1, 0}, {0, 1}, {0, 0}}));
    const Subspace v = Subspace::span(ints({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(intersect(u, u) == u);
    CHECK(intersect(Subspace::span(ints({{1}, {0}})), Subspace::span(ints({{0}, {1}}))).is_zero());
    CHECK(intersect(u, v) == Subspace::span(ints({{0}, {1}, {0}})));
    CHECK_THROWS_AS(intersect(u, Subspace::full(Q, 2)), DimensionMismatch);
}

TEST_CASE("preimage examples") {
    const Matrix m = ints({{1, 0}, {0, 0}});
    CHECK(preimage(m, Subspace::full(Q, 2)).is_full());
    const Subspace v = Subspace::span(ints({{1}, {2}}));
    CHECK(preimage(Matrix::identity(Q, 2), v) == v);
    CHECK(preimage(m, Subspace::zero(Q, 2)) == Subspace::span(ints({{0}, {1}})));
    CHECK_THROWS_AS(preimage(m, Subspace::zero(Q, 3)), DimensionMismatch);
}

TEST_CASE("quotient examples") {
    const Subspace u = Subspace::full(Q, 2);
    CHECK(quotient(u, u).dim == 0);
    const Quotient q0 = quotient(u, Subspace::zero(Q, 2));
    CHECK(q0.dim == 2);
    CHECK(q0.projector.is_invertible());
    const Quotient q = quotient(u, Subspace::span(ints({{1}, {1}})));
    CHECK(q.dim == 1);
    CHECK((q.projector * q.section).is_identity());
    CHECK(q.classes(Matrix::from_ints(Q, {{1}, {1}})).is_zero());
    CHECK_THROWS_AS(quotient(Subspace::span(ints({{1}, {0}})), Subspace::span(ints({{0}, {1}}))),
                    PreconditionError);
}

TEST_CASE("solve and inverse") {
    const Matrix a = ints({{2, 1}, {1, 1}});
    CHECK((a * a.inverse()).is_identity());
    const auto x = a.solve(ints({{3}, {2}}));
    REQUIRE(x.has_value());
    CHECK(*x == ints({{1}, {1}}));
    CHECK_FALSE(ints({{1, 1}, {1, 1}}).solve(ints({{1}, {0}})).has_value());
    CHECK_THROWS_AS(ints({{1, 1}, {1, 1}}).inverse(), PreconditionError);
}

TEST_CASE("rank-nullity and rank oracle over Q") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = rng() % 5, c = rng() % 5;
        const Matrix m = oracle::random_matrix(rng, Q, r, c);
        CHECK(m.rank() == oracle::rank(m));
        const Subspace k = kernel_basis(m);
        CHECK(k.dim() + m.rank() == c);
        CHECK((m * k.basis()).is_zero());
        CHECK(preimage(m, Subspace::zero(Q, r)) == k);
    }
}

TEST_CASE("subspace operations against enumeration over F_3") {
    const Field f3 = Field::prime(3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng() % 3;
        const Matrix a = oracle::random_matrix(rng, f3, n, rng() % 3);
        const Matrix b = oracle::random_matrix(rng, f3, n, rng() % 3);
        const Subspace u = Subspace::span(a), v = Subspace::span(b);
        CHECK(oracle::span_size(u.basis()) == oracle::span_size(a));
        std::size_t both = 0;
        for (const auto& x : oracle::all_vectors(f3, n)) {
            if (in_span(a, x) && in_span(b, x)) ++both;
        }
        const Subspace i = intersect(u, v);
        std::size_t expect = 1;
        for (std::size_t k = 0; k < i.dim(); ++k) expect *= 3;
        CHECK(both == expect);
        CHECK(i.dim() + sum(u, v).dim() == u.dim() + v.dim());

        const Matrix m = oracle::random_matrix(rng, f3, n, 1 + rng() % 3);
        std::size_t pre = 0;
        for (const auto& x : oracle::all_vectors(f3, m.cols())) {
            if (in_span(a, m * x)) ++pre;
        }
        expect = 1;
        const Subspace p = preimage(m, u);
        for (std::size_t k = 0; k < p.dim(); ++k) expect *= 3;
        CHECK(pre == expect);
    }
}

TEST_CASE("quotient projector and section are exact inverses") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const Subspace u = Subspace::span(oracle::random_matrix(rng, Q, n, rng() % 5));
        const Subspace w = Subspace::span(u.basis() * oracle::random_matrix(rng, Q, u.dim(), rng() % 4));
        const Quotient q = quotient(u, w);
        CHECK(q.dim == u.dim() - w.dim());
        CHECK((q.projector * q.section).is_identity());
        CHECK(q.classes(w.basis()).is_zero());
        CHECK(sum(w, Subspace::span(q.representatives())) == u);
    }
}

TEST_CASE("span equality ignores the presented basis") {
    const Subspace a = Subspace::span(ints({{1, 1}, {0, 1}, {1, 2}}));
    const Subspace b = Subspace::span(ints({{2, 0, 1}, {1, -1, 0}, {3, -1, 1}}));
    CHECK(a == b);
    CHECK(a.basis() == b.basis());
}
