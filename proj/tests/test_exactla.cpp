#include <random>

#include "ainf/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ainf;
using namespace ainf::testing;

namespace {

bool times_basis_vanishes(const SparseMatrix& m, const Subspace& k) {
    for (std::size_t j = 0; j < k.dim(); ++j)
        if (!m.apply(k.basis().column(j)).empty()) return false;
    return true;
}

std::size_t dense_dim_of_sum(const Subspace& a, const Subspace& b) {
    return dense_rank(to_dense(a.basis().hconcat(b.basis())), a.field());
}

}  // namespace

TEST_CASE("scalars are exact") {
    Field q = Field::rationals();
    Scalar third = q.parse_scalar("1/3");
    CHECK(third * Scalar(3) == Scalar(1));
    CHECK(q.parse_scalar("-0.125") == Scalar::rational(-1, 8));
    Scalar big(1);
    for (int i = 0; i < 40; ++i) big *= Scalar(1000003);
    Scalar back = big;
    for (int i = 0; i < 40; ++i) back /= Scalar(1000003);
    CHECK(back == Scalar(1));

    Field f5 = Field::gf(5);
    CHECK(f5.from_int(7) == f5.from_int(2));
    CHECK(f5.from_int(3).inverse() == f5.from_int(2));
    CHECK(f5.coerce(Scalar(-1)) == f5.from_int(4));
    CHECK(f5.parse_scalar("1/2") == f5.from_int(3));
    CHECK_THROWS(Field::gf(6));
    CHECK(Field::parse("GF:7") == Field::gf(7));
    CHECK(Field::parse("GF(3)") == Field::gf(3));
    CHECK(Field::parse("Q") == Field::rationals());
}

TEST_CASE("rank of small matrices") {
    Field q = Field::rationals();
    CHECK(rank(SparseMatrix::identity(3, q)) == 3);
    CHECK(rank(SparseMatrix::zero(4, 2, q)) == 0);
}

TEST_CASE("rank agrees with dense elimination") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        Field f = trial % 3 == 0 ? Field::rationals() : Field::gf(trial % 3 == 1 ? 5 : 2);
        std::uniform_int_distribution<std::size_t> dim(0, 8);
        SparseMatrix m = random_matrix(rng, dim(rng), dim(rng), f, 0.4);
        CHECK(rank(m) == dense_rank(to_dense(m), f));
        SparseMatrix low = random_low_rank(rng, 6, 6, 2, f);
        CHECK(rank(low) == dense_rank(to_dense(low), f));
    }
}

TEST_CASE("kernels") {
    Field q = Field::rationals();
    CHECK(kernel_basis(SparseMatrix::identity(3, q)).dim() == 0);
    CHECK(kernel_basis(SparseMatrix::zero(3, 3, q)).dim() == 3);
    SparseMatrix m = SparseMatrix::from_dense({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(0)}}, 2, q);
    Subspace k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    SparseVec v = from_dense({Scalar(1), Scalar(-1)});
    CHECK(k.contains(v));

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        Field f = trial % 2 ? Field::gf(3) : q;
        SparseMatrix a = random_matrix(rng, 5, 7, f, 0.4);
        Subspace ka = kernel_basis(a);
        CHECK(rank(a) + ka.dim() == a.cols());
        CHECK(times_basis_vanishes(a, ka));
    }
}

TEST_CASE("images") {
    Field q = Field::rationals();
    CHECK(image_basis(SparseMatrix::identity(4, q)).dim() == 4);
    CHECK(image_basis(SparseMatrix::zero(4, 3, q)).dim() == 0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        SparseMatrix col = random_matrix(rng, 5, 1, q, 1.0);
        SparseMatrix row = random_matrix(rng, 1, 4, q, 1.0);
        SparseMatrix outer = col * row;
        Subspace im = image_basis(outer);
        CHECK(im.dim() == dense_rank(to_dense(outer), q));
        for (std::size_t j = 0; j < outer.cols(); ++j) CHECK(im.contains(outer.column(j)));
    }
}

TEST_CASE("intersections") {
    Field q = Field::rationals();
    std::mt19937_64 rng(4);
    SparseMatrix b = random_matrix(rng, 4, 2, q, 1.0);
    Subspace sb = Subspace::spanned_by(b);
    CHECK(same_span(intersect(Subspace::full(4, q), sb), sb));
    Subspace l1 = Subspace::spanned_by(SparseMatrix::from_dense({{Scalar(1)}, {Scalar(0)}}, 1, q));
    Subspace l2 = Subspace::spanned_by(SparseMatrix::from_dense({{Scalar(1)}, {Scalar(1)}}, 1, q));
    CHECK(intersect(l1, l2).dim() == 0);

    for (int trial = 0; trial < 200; ++trial) {
        Field f = trial % 2 ? Field::gf(2) : q;
        Subspace a = Subspace::spanned_by(random_matrix(rng, 6, 4, f, 0.5));
        Subspace c = Subspace::spanned_by(random_matrix(rng, 6, 4, f, 0.5));
        Subspace i = intersect(a, c);
        // oracle: dim(a cap c) = dim a + dim c - dim(a + c) by dense rank
        CHECK(i.dim() == a.dim() + c.dim() - dense_dim_of_sum(a, c));
        for (std::size_t j = 0; j < i.dim(); ++j) {
            CHECK(a.contains(i.basis().column(j)));
            CHECK(c.contains(i.basis().column(j)));
        }
        CHECK(same_span(i, intersect(c, a)));
        CHECK(same_span(intersect(a, a), a));
        CHECK(a.dim() + c.dim() >= i.dim() + sum(a, c).dim());
    }
    Subspace small = Subspace::full(3, q);
    CHECK_THROWS(intersect(small, Subspace::full(4, q)));
}

TEST_CASE("restricting a map to a subspace") {
    Field q = Field::rationals();
    SparseMatrix line = SparseMatrix::from_dense({{Scalar(2)}, {Scalar(3)}}, 1, q);
    Subspace l = Subspace::spanned_by(line);
    CHECK(restrict_map(SparseMatrix::identity(2, q), l) == l.basis());
    CHECK(restrict_map(SparseMatrix::zero(3, 2, q), l).is_zero());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        SparseMatrix m = random_matrix(rng, 4, 5, q, 0.5);
        Subspace d = Subspace::spanned_by(random_matrix(rng, 5, 3, q, 0.6));
        CHECK(to_dense(restrict_map(m, d)) == dense_product(to_dense(m), to_dense(d.basis()), q));
    }
    CHECK_THROWS(restrict_map(SparseMatrix::identity(3, q), l));
}

TEST_CASE("membership") {
    Field q = Field::rationals();
    std::mt19937_64 rng(6);
    Subspace s = Subspace::spanned_by(random_matrix(rng, 5, 2, q, 1.0));
    CHECK(membership(SparseVec{}, s));
    CHECK(membership(s.basis().column(0), s));
    for (int trial = 0; trial < 200; ++trial) {
        Field f = trial % 2 ? Field::gf(5) : q;
        SparseMatrix gens = random_matrix(rng, 6, 3, f, 0.5);
        Subspace t = Subspace::spanned_by(gens);
        SparseVec v = random_matrix(rng, 6, 1, f, 0.5).column(0);
        std::vector<Scalar> dv = to_dense(v, 6, f);
        bool oracle = dense_solve(to_dense(gens), dv, f).has_value();
        CHECK(membership(v, t) == oracle);
    }
}

TEST_CASE("Frobenius inequality on random products") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Field f = trial % 2 ? Field::gf(3) : Field::rationals();
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        std::size_t m = dim(rng), n = dim(rng), k = dim(rng), l = dim(rng);
        SparseMatrix a = random_matrix(rng, m, n, f, 0.5), b = random_matrix(rng, n, k, f, 0.5), c = random_matrix(rng, k, l, f, 0.5);
        long long v = static_cast<long long>(rank(b)) - static_cast<long long>(rank(a * b)) - static_cast<long long>(rank(b * c)) +
                      static_cast<long long>(rank(a * b * c));
        CHECK(v >= 0);
    }
}

TEST_CASE("solve") {
    Field q = Field::rationals();
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        SparseMatrix m = random_matrix(rng, 5, 4, q, 0.5);
        SparseVec x = random_matrix(rng, 4, 1, q, 0.7).column(0);
        SparseVec b = m.apply(x);
        auto y = solve(m, b);
        REQUIRE(y.has_value());
        CHECK(m.apply(*y) == b);
    }
}
