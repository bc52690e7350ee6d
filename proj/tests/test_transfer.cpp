#include <algorithm>
#include <random>

#include "ainf/ainfty.hpp"
#include "ainf/contraction.hpp"
#include "ainf/structure_io.hpp"
#include "ainf/transfer.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "structures.hpp"

using namespace ainf;
using namespace ainf::testing;

namespace {

ChainComplex random_chain_complex(std::mt19937_64& rng, const Field& f) {
    // d_{p} = A_p B_p with B_p A_{p-1}... built as random low-rank maps whose compositions vanish
    ChainComplex c;
    c.field = f;
    std::uniform_int_distribution<int> dimd(0, 4);
    for (int p = 0; p <= 3; ++p) c.dims[p] = static_cast<std::size_t>(dimd(rng));
    for (int p = 1; p <= 3; ++p) {
        SparseMatrix m = random_matrix(rng, c.dims[p - 1], c.dims[p], f, 0.6);
        if (p >= 2) {
            // project the image into the kernel of d_{p-1}
            Subspace ker = kernel_basis(c.d[p - 1]);
            SparseMatrix coords = random_matrix(rng, ker.dim(), c.dims[p], f, 0.6);
            m = ker.dim() ? ker.basis() * coords : SparseMatrix(c.dims[p - 1], c.dims[p], f);
        }
        c.d[p] = m;
    }
    return c;
}

Scalar evaluate(const Cochain& a, const SparseVec& chain, std::size_t offset, std::size_t count) {
    Scalar s(0);
    for (const auto& e : chain)
        if (e.idx >= offset && e.idx < offset + count) s += coefficient(a.values, static_cast<Index>(e.idx - offset)) * e.val;
    return s;
}

}  // namespace

TEST_CASE("contraction of a complex with zero differential is trivial") {
    ChainComplex c;
    c.field = Field::rationals();
    c.dims = {{0, 2}, {1, 3}};
    Contraction k = homology_contraction(c);
    CHECK(verify_contraction(k).ok);
    CHECK(k.htpy.block(0, 2, 3, c.field).is_zero());
    CHECK(k.htpy.block(1, 3, 0, c.field).is_zero());
    for (int p : {0, 1}) {
        auto pi = k.proj.block(p, c.dims[p], c.dims[p], c.field);
        auto io = k.incl.block(p, c.dims[p], c.dims[p], c.field);
        CHECK(pi * io == SparseMatrix::identity(c.dims[p], c.field));
        CHECK(io * pi == SparseMatrix::identity(c.dims[p], c.field));
    }
}

TEST_CASE("reduced circle has homology only in degree 1") {
    ChainComplex c = chain_complex(sphere_boundary(1), Field::rationals(), true);
    Contraction k = homology_contraction(c);
    CHECK(verify_contraction(k).ok);
    CHECK(k.small.dim(-1) == 0);
    CHECK(k.small.dim(0) == 0);
    CHECK(k.small.dim(1) == 1);
}

TEST_CASE("contractions of random complexes satisfy the side conditions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Field f = trial % 2 ? Field::gf(3) : Field::rationals();
        ChainComplex c = random_chain_complex(rng, f);
        REQUIRE(c.is_valid());
        Contraction k = homology_contraction(c);
        auto rep = verify_contraction(k);
        CHECK(rep.ok);
        for (int p = 0; p <= 3; ++p) {
            std::size_t expected = c.dims[p] - rank(c.differential(p)) - rank(c.differential(p + 1));
            CHECK(k.small.dim(p) == expected);
        }
    }
}

TEST_CASE("perturbing the homotopy breaks a side condition") {
    Contraction k = homology_contraction(chain_complex(sphere_boundary(2), Field::rationals()));
    REQUIRE(verify_contraction(k).ok);
    auto& blk = k.htpy.blocks.at(1);
    blk.add_entry(0, 0, Scalar(1));
    auto rep = verify_contraction(k);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("hand-built contraction of a two-step complex") {
    // C_1 = F e, C_0 = F v, d e = v: contractible
    Field f = Field::rationals();
    Contraction k;
    k.big.field = f;
    k.big.dims = {{0, 1}, {1, 1}};
    k.big.d[1] = SparseMatrix::identity(1, f);
    k.small.field = f;
    k.small.dims = {{0, 0}, {1, 0}};
    k.proj.shift = 0;
    k.incl.shift = 0;
    k.htpy.shift = 1;
    k.htpy.blocks[0] = SparseMatrix::identity(1, f).scaled(Scalar(-1));
    CHECK(verify_contraction(k).ok);
}

TEST_CASE("transferred Delta_2 of the torus is dual to the cup product") {
    Field f = Field::gf(2);
    SimplicialComplex t = torus_7_vertex();
    ChainComplex c = chain_complex(t, f);
    HomologyReduction red(c);
    Coproduct aw = aw_diagonal(t, f);
    AInftyCoalgebra s = transfer_coalgebra(red, aw, 3);
    REQUIRE(s.space.dim(1) == 2);
    REQUIRE(s.space.dim(2) == 1);
    auto top = s.space.indices_of_degree(2)[0];
    auto ones = s.space.indices_of_degree(1);
    bool hits = false;
    for (const auto& [w, coef] : s.op(2, top))
        if (s.space.degrees[w[0]] == 1 && s.space.degrees[w[1]] == 1) hits = true;
    CHECK(hits);

    // cup side: (a_i cup a_j)(iota T) must equal <a_i (x) a_j, Delta_2 T>
    CupProduct cup(t, f);
    HomologyReduction cored(cochain_complex(t, f));
    std::vector<Cochain> reps;
    for (std::size_t h = 0; h < cored.homology_dim(); ++h)
        if (cored.homology_degree(h) == -1) reps.push_back(cup.to_cochain(cored.include(h), 1));
    REQUIRE(reps.size() == 2);
    SparseVec tchain = red.include(top);
    std::size_t off1 = c.offset(1), off2 = c.offset(2);
    bool nonzero = false;
    for (const auto& a : reps)
        for (const auto& b : reps) {
            Scalar lhs = f.coerce(evaluate(cup.cup(a, b), tchain, off2, t.count(2)));
            Scalar rhs(0);
            for (const auto& [w, coef] : s.op(2, top)) {
                if (s.space.degrees[w[0]] != 1 || s.space.degrees[w[1]] != 1) continue;
                rhs += coef * evaluate(a, red.include(w[0]), off1, t.count(1)) * evaluate(b, red.include(w[1]), off1, t.count(1));
            }
            CHECK(lhs == f.coerce(rhs));
            nonzero = nonzero || !lhs.is_zero();
        }
    CHECK(nonzero);
    (void)ones;
}

TEST_CASE("transferred structures on CE duals satisfy the Stasheff identities") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Field f = trial % 3 == 0 ? Field::gf(5) : Field::rationals();
        CellularDGC dgc = random_ce_dual(rng, 4, f);
        HomologyReduction red(dgc.chains);
        AInftyCoalgebra s = transfer_coalgebra(red, dgc.diagonal, 5);
        CHECK(s.is_minimal());
        CHECK(s.degrees_consistent());
        auto rep = verify_stasheff(s, 5);
        CHECK(rep.ok);
        CHECK(cobar_d_squared_check(cobar(s, 5)).ok == rep.ok);
    }
}

TEST_CASE("transfer on random simplicial complexes") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        SimplicialComplex k = random_simplicial_complex(rng, 6, 4, 2);
        Field f = Field::rationals();
        ChainComplex c = chain_complex(k, f);
        HomologyReduction red(c);
        AInftyCoalgebra s = transfer_coalgebra(red, aw_diagonal(k, f), 5);
        CHECK(verify_stasheff(s, 5).ok);
    }
}

TEST_CASE("zero homotopy gives no higher operations") {
    CellularDGC w = wedge_of_spheres({1, 2, 1, 3}, Field::rationals());
    Contraction k = homology_contraction(w.chains);
    for (const auto& [p, blk] : k.htpy.blocks) CHECK(blk.is_zero());
    AInftyCoalgebra s = transfer_coalgebra(k, w.diagonal, 5);
    for (int n = 3; n <= 5; ++n) CHECK(s.is_zero(n));
    CHECK_FALSE(s.is_zero(2));
}

TEST_CASE("reduced 2-sphere has zero Delta_2") {
    Field f = Field::rationals();
    SimplicialComplex k = sphere_boundary(2);
    HomologyReduction red(chain_complex(k, f));
    AInftyCoalgebra s = reduced_coalgebra(transfer_coalgebra(red, aw_diagonal(k, f), 4));
    CHECK(s.space.size() == 1);
    CHECK(s.is_zero(2));
}

TEST_CASE("transferred algebra of the torus") {
    Field f = Field::rationals();
    SimplicialComplex t = torus_7_vertex();
    CupProduct cup(t, f);
    HomologyReduction red(cochain_complex(t, f));
    AInftyAlgebra a = transfer_algebra(red, cup_product_of(cup), 4);
    CHECK(a.is_minimal());
    CHECK(a.degrees_consistent());
    CHECK(verify_stasheff(a, 4).ok);
    auto ones = a.space.indices_of_degree(1);
    bool cup_nonzero = false;
    for (auto i : ones)
        for (auto j : ones)
            if (!a.op(2, {i, j}).empty()) cup_nonzero = true;
    CHECK(cup_nonzero);
}

namespace {

AInftyCoalgebra fixture(const char* name) {
    return coalgebra_from_json(read_json_file(std::string(AINF_DATA_DIR) + "/structures/" + name));
}

// a (deg 1), b (deg 2), c (deg 3) with Delta_2 b = a(x)a, Delta_2 c = a(x)b: not coassociative.
AInftyCoalgebra non_coassociative() {
    AInftyCoalgebra s;
    s.space.field = Field::rationals();
    s.space.degrees = {1, 2, 3};
    s.space.labels = {"a", "b", "c"};
    s.set_op(2, 1, Tensor{{{0, 0}, Scalar(1)}});
    s.set_op(2, 2, Tensor{{{0, 1}, Scalar(1)}});
    return s;
}

}  // namespace

TEST_CASE("CP2 wedge S7 fixtures") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    AInftyCoalgebra b = fixture("cp2_wedge_s7_B.json");
    CHECK(verify_stasheff(a, 5).ok);
    CHECK(verify_stasheff(b, 5).ok);
    CHECK(dim_ker_op_total(a, 3) == 2);
    CHECK(dim_ker_op_total(b, 3) == 3);
    CHECK(min_nonzero_arity(a) == 2);
    CHECK(min_nonzero_arity(b) == 2);

    CobarComplex cb = cobar(a, 4);
    // generators x1 = s^-1 a, u3 = s^-1 b, v6 = s^-1 c
    Tensor expected{{{0, 0, 1}, Scalar(4)}, {{1, 0, 0}, Scalar(-4)}};
    CHECK(cb.component(3, 2) == expected);
    CHECK(cb.component(2, 1) == Tensor{{{0, 0}, Scalar(2)}});
    CHECK(cb.generators.degrees == std::vector<int>{1, 3, 6});
    CHECK(cobar_d_squared_check(cb).ok);
    AInftyCoalgebra back = structure_from_cobar(cb, a.space);
    CHECK(back.ops == a.ops);
}

TEST_CASE("truncation keeps only the minimal arity") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    AInftyCoalgebra t = truncate_to_arity(a, 2);
    CHECK(t.is_zero(3));
    CHECK(verify_stasheff(t, 3).ok);
    CHECK_THROWS_AS(truncate_to_arity(a, 3), PreconditionError);
    AInftyCoalgebra zero;
    zero.space = a.space;
    CHECK_FALSE(min_nonzero_arity(zero).has_value());
    CHECK_THROWS_AS(truncate_to_arity(zero, 2), PreconditionError);
    AInftyCoalgebra b = fixture("cp2_wedge_s7_B.json");
    CHECK(truncate_to_arity(b, 2).ops == b.ops);
}

TEST_CASE("zero operations have full kernels") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    CHECK(dim_ker_op_total(a, 5) == 3);
    CHECK(dim_ker_op(a, 2, 4) == 0);
    CHECK(dim_ker_op(a, 2, 2) == 1);
}

TEST_CASE("a failure of SI(3) alone shows up in word length 3 of d^2") {
    AInftyCoalgebra s = non_coassociative();
    auto rep = verify_stasheff(s, 5);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failing == std::vector<int>{3});
    auto crep = cobar_d_squared_check(cobar(s, 5));
    CHECK(crep.failing == std::vector<int>{3});
    CHECK_FALSE(cobar_d_squared(cobar(s, 5), 3, 2).empty());
}

TEST_CASE("DG coalgebras are A-infinity coalgebras") {
    Field f = Field::rationals();
    SimplicialComplex k = sphere_boundary(2);
    ChainComplex c = chain_complex(k, f);
    Coproduct aw = aw_diagonal(k, f);
    AInftyCoalgebra s;
    s.space.field = f;
    for (std::size_t i = 0; i < c.total_dim(); ++i) s.space.degrees.push_back(c.degree_of(i));
    SparseMatrix d = c.total_differential();
    for (std::size_t x = 0; x < c.total_dim(); ++x) {
        Tensor d1, d2;
        for (const auto& e : d.column(x)) accumulate(d1, Word{e.idx}, e.val);
        for (const auto& t : aw.terms[x]) accumulate(d2, Word{t.left, t.right}, t.coef);
        s.set_op(1, x, d1);
        s.set_op(2, x, d2);
    }
    // with these signs SI(2) is the Leibniz rule for Delta_1 = -d
    for (auto& t : s.ops[1]) t = scaled(t, Scalar(-1));
    CHECK(verify_stasheff(s, 5).ok);
    CHECK(cobar_d_squared_check(cobar(s, 5)).ok);
}

TEST_CASE("garbage operations fail the Stasheff check") {
    std::mt19937_64 rng(3);
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    a.set_op(3, 2, Tensor{{{0, 0, 1}, Scalar(1)}, {{0, 1, 0}, Scalar(5)}});
    CHECK_FALSE(verify_stasheff(a, 5).ok);
}

TEST_CASE("morphism identities") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    CHECK(verify_morphism(AInftyMorphism::identity(a.space), a, a, 5).ok);
    auto rep = verify_morphism(scaled_identity(a.space, Scalar(2)), a, a, 5);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failing.front() == 2);
}

TEST_CASE("transport along the identity changes nothing") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    AInftyCoalgebra t = transport_structure(a, AInftyMorphism::identity(a.space), 5);
    CHECK(t.ops == a.ops);
}

TEST_CASE("transporting structure B produces a nonzero Delta_3") {
    AInftyCoalgebra b = fixture("cp2_wedge_s7_B.json");
    AInftyMorphism g = AInftyMorphism::identity(b.space);
    g.components[2].resize(3);
    g.components[2][2] = Tensor{{{1, 1}, Scalar(1)}};  // c -> b (x) b
    AInftyCoalgebra t = transport_structure(b, g, 5);
    CHECK(verify_morphism(g, b, t, 5).ok);
    CHECK(verify_stasheff(t, 5).ok);
    CHECK_FALSE(t.is_zero(3));
    const Tensor& d3 = t.op(3, 2);
    REQUIRE(d3.size() == 2);
    CHECK(d3.at({0, 0, 1}) == -d3.at({1, 0, 0}));
    CHECK(min_nonzero_arity(t) == 2);
    CHECK(dim_ker_op_total(t, 3) == 2);
}

TEST_CASE("transport preserves k and the kernels up to k") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        Field f = trial % 2 ? Field::gf(7) : Field::rationals();
        int k = 2 + trial % 3;
        AInftyCoalgebra s = random_single_arity_structure(rng, k, f);
        REQUIRE(verify_stasheff(s, 5).ok);
        AInftyMorphism g = random_isomorphism(rng, s.space, 3);
        AInftyCoalgebra t = transport_structure(s, g, 5);
        CHECK(verify_morphism(g, s, t, 5).ok);
        CHECK(verify_stasheff(t, 5).ok);
        auto ks = min_nonzero_arity(s);
        CHECK(min_nonzero_arity(t) == ks);
        if (!ks) continue;
        for (int m = 2; m <= *ks; ++m)
            for (int p : s.space.distinct_degrees()) CHECK(dim_ker_op(s, m, p) == dim_ker_op(t, m, p));
    }
}

TEST_CASE("singular f_(1) is rejected") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    CHECK_THROWS_AS(transport_structure(a, scaled_identity(a.space, Scalar(0)), 4), PreconditionError);
}

TEST_CASE("dim_ker_op agrees with a dense kernel oracle") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        AInftyCoalgebra s = random_single_arity_structure(rng, 2 + trial % 2, Field::gf(3));
        for (int n = 2; n <= 3; ++n)
            for (int p : s.space.distinct_degrees()) {
                SparseMatrix m = op_block_matrix(s, n, p);
                CHECK(dim_ker_op(s, n, p) == m.cols() - dense_rank(m.to_dense(), m.field()));
            }
    }
}

TEST_CASE("structure JSON round trip") {
    AInftyCoalgebra a = fixture("cp2_wedge_s7_A.json");
    AInftyCoalgebra back = coalgebra_from_json(to_json(a));
    CHECK(back.ops == a.ops);
    CHECK(back.space.degrees == a.space.degrees);
    CHECK(back.space.labels == a.space.labels);

    SimplicialComplex t = torus_7_vertex();
    CupProduct cup(t, Field::rationals());
    HomologyReduction red(cochain_complex(t, Field::rationals()));
    AInftyAlgebra alg = transfer_algebra(red, cup_product_of(cup), 3);
    AInftyAlgebra alg2 = algebra_from_json(to_json(alg));
    CHECK(alg2.ops == alg.ops);
    CHECK_THROWS_AS(structure_from_json(nlohmann::json::parse(R"({"kind":"coalgebra","field":"Q"})")), ParseError);
    CHECK_THROWS_AS(structure_from_json(nlohmann::json::parse(
                        R"({"field":"Q","dims":{"1":1},"ops":[{"n":2,"blocks":[{"src_degree":1,"entries":[[0,[0,0],"1"]]}]}]})")),
                    ParseError);
}
