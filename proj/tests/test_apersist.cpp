#include <random>

#include "ainf/apersist.hpp"
#include "apersist_instances.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ainf;
using namespace ainf::testing;

namespace {

Dense stack(const Dense& a, const Dense& b) {
    Dense out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::size_t rank_or_zero(const Dense& m, const Field& f) { return m.empty() || m[0].empty() ? 0 : dense_rank(m, f); }

// dim f^{i,j}(W) with W the common kernel of the stacked S = [Delta^k f^{i,k}]_k:
// rank [S; f^{i,j}] - rank S, by dense elimination only.
std::size_t delta_dim_oracle(const APersistenceInput& inp, std::size_t i, std::size_t j) {
    const Field& f = inp.field;
    Dense s;
    SparseMatrix comp = SparseMatrix::identity(inp.dim(i), f);
    for (std::size_t k = i; k <= j; ++k) {
        if (k > i) comp = inp.map_block(k - 1) * comp;
        s = stack(s, to_dense(inp.delta_block(k) * comp));
    }
    return rank_or_zero(stack(s, to_dense(comp)), f) - rank_or_zero(s, f);
}

PersistenceModule degree_module(const APersistenceInput& inp) {
    PersistenceModule m;
    m.field = inp.field;
    for (std::size_t i = 0; i < inp.structures.size(); ++i) m.dims.push_back(inp.dim(i));
    for (std::size_t i = 0; i + 1 < inp.structures.size(); ++i) m.maps.push_back(inp.map_block(i));
    return m;
}

Filtration constant_filtration(const SimplicialComplex& k) {
    std::vector<std::vector<std::size_t>> levels;
    for (int d = 0; d <= k.max_dim(); ++d) levels.emplace_back(k.count(d), 0);
    return Filtration(k, levels);
}

}  // namespace

TEST_CASE("Delta group dimensions agree with the dense oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        Field f = trial % 2 ? Field::gf(3) : Field::rationals();
        APersistenceInput inp = trial % 3 ? unconstrained_instance(rng, 4, f) : compatible_instance(rng, 4, f);
        RankTable d = delta_table(inp);
        for (std::size_t i = 0; i <= 4; ++i) {
            CHECK(d[i][i] == static_cast<long long>(dim_ker_op(inp.structures[i], 2, 2)));
            for (std::size_t j = i; j <= 4; ++j) {
                CHECK(d[i][j] == static_cast<long long>(delta_dim_oracle(inp, i, j)));
                if (j < 4) CHECK(d[i][j] >= d[i][j + 1]);
                if (i > 0) CHECK(d[i - 1][j] <= d[i][j]);
            }
        }
        CHECK(delta_group_dim(inp, 1, 3) == static_cast<std::size_t>(d[1][3]));
        // inclusion-exclusion stays non-negative on every valid input
        CHECK_NOTHROW(delta_barcode(inp));
    }
}

TEST_CASE("index errors") {
    Field q = Field::rationals();
    APersistenceInput inp = sleep_wake_instance(3, 1, q);
    CHECK_THROWS_AS(delta_group_dim(inp, 2, 1), PreconditionError);
    CHECK_THROWS_AS(delta_group_dim(inp, 0, 4), PreconditionError);
    inp.maps.pop_back();
    CHECK_THROWS_AS(delta_table(inp), PreconditionError);
}

TEST_CASE("a hand-built three-step instance") {
    // two classes throughout, identity maps, Delta^1 nonzero on the first class only
    const char* plain = R"({"dims": {"1": 1, "2": 2}})";
    const char* drop = R"({"dims": {"1": 1, "2": 2}, "ops": [{"n": 2, "blocks": [{"src_degree": 2, "entries": [[0, [0, 0], "1"]]}]}]})";
    const char* id = R"({"1": [["1"]], "2": [["1", "0"], ["0", "1"]]})";
    nlohmann::json bundle = {{"field", "Q"}, {"degree", 2}, {"n", 2}};
    bundle["structures"] = {nlohmann::json::parse(plain), nlohmann::json::parse(drop), nlohmann::json::parse(plain)};
    bundle["maps"] = {nlohmann::json::parse(id), nlohmann::json::parse(id)};
    APersistenceInput inp = apersistence_from_json(bundle);
    RankTable d = delta_table(inp);
    CHECK(d == RankTable{{2, 1, 1}, {0, 1, 1}, {0, 0, 2}});
    Barcode b = delta_barcode(inp);
    CHECK(b.intervals == std::vector<Interval>{{0, 0, 1}, {0, 2, 1}, {2, 2, 1}});
    CHECK(b.flavor == Flavor::Closed);
    CHECK(b.kind == "Delta");
    // Ker Delta^0 = everything does not map into Ker Delta^1
    CompatibilityReport c = compatibility_check(inp);
    CHECK_FALSE(c.ok);
    CHECK(c.index == 0);

    APersistenceInput back = apersistence_from_json(to_json(inp));
    CHECK(delta_table(back) == d);
}

TEST_CASE("bundle parse errors") {
    auto parse = [](const char* text) { return apersistence_from_json(nlohmann::json::parse(text)); };
    CHECK_THROWS_AS(parse("[]"), ParseError);
    CHECK_THROWS_AS(parse(R"({"field": "Q"})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"field": "Q", "structures": [{"dims": {"2": 1}}, {"dims": {"2": 1}}]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"field": "Q", "structures": [{"dims": {"2": 1}}, {"dims": {"2": 1}}], "maps": [{"2": [["1", "2"]]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"field": "Q", "structures": [{"dims": {"2": 1}}, {"dims": {"2": 1}}], "maps": [{"2": [["x"]]}]})"), ParseError);
    CHECK_NOTHROW(parse(R"({"field": "Q", "structures": [{"dims": {"2": 1}}, {"dims": {"2": 1}}], "maps": [{"2": [["1/2"]]}]})"));
}

TEST_CASE("all-kernel inputs reduce to ordinary persistence") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        Field f = trial % 2 ? Field::gf(5) : Field::rationals();
        APersistenceInput inp = all_kernel_instance(rng, 1 + trial % 5, f);
        Barcode h = barcode_from_ranks(ranks_table(degree_module(inp)), Flavor::Closed);
        CHECK(delta_barcode(inp).intervals == h.intervals);
        CHECK(kernel_submodule_barcode(inp).intervals == h.intervals);
        CHECK(compatibility_check(inp).ok);
        CHECK(sleep_wake_diagnostic(inp).empty());
    }
}

TEST_CASE("single space") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        APersistenceInput inp = unconstrained_instance(rng, 0, Field::rationals());
        Barcode b = delta_barcode(inp);
        long long k = static_cast<long long>(dim_ker_op(inp.structures[0], 2, 2));
        CHECK(b.multiplicity(0, 0) == k);
        CHECK(b.total() == k);
        CHECK(kernel_submodule_barcode(inp).intervals == b.intervals);
    }
}

TEST_CASE("a class that falls asleep and wakes up splits its bar") {
    Field q = Field::rationals();
    APersistenceInput inp = sleep_wake_instance(9, 5, q);
    Barcode b = delta_barcode(inp);
    CHECK(b.intervals == std::vector<Interval>{{0, 4, 1}, {6, 9, 1}});
    auto j = to_json(b);
    CHECK(j[0]["death"] == 4);
    CHECK(j[1]["birth"] == 6);

    CompatibilityReport c = compatibility_check(inp);
    CHECK_FALSE(c.ok);
    CHECK(c.index == 4);
    CHECK(c.witness == unit_vector(0, q));
    CHECK_THROWS_AS(kernel_submodule_barcode(inp), PreconditionError);

    auto flagged = sleep_wake_diagnostic(inp);
    REQUIRE(flagged.size() == 1);
    CHECK(flagged[0].start == 0);
    CHECK(flagged[0].support() == std::vector<std::size_t>{0, 1, 2, 3, 4, 6, 7, 8, 9});
    CHECK(kernel_patterns(inp).size() == 1);
}

TEST_CASE("compatible instances: both pathways agree") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        Field f = trial % 3 == 0 ? Field::gf(2) : Field::rationals();
        APersistenceInput inp = compatible_instance(rng, trial % 7, f);
        REQUIRE(compatibility_check(inp).ok);
        CHECK(kernel_submodule_barcode(inp).intervals == delta_barcode(inp).intervals);
        CHECK(sleep_wake_diagnostic(inp).empty());
    }
}

TEST_CASE("incompatible instances come with a valid witness") {
    std::mt19937_64 rng(25);
    int seen = 0;
    for (int trial = 0; trial < 100; ++trial) {
        APersistenceInput inp = unconstrained_instance(rng, 3, Field::rationals());
        CompatibilityReport c = compatibility_check(inp);
        if (c.ok) continue;
        ++seen;
        CHECK(inp.delta_block(c.index).apply(c.witness).empty());
        CHECK_FALSE(inp.delta_block(c.index + 1).apply(inp.map_block(c.index).apply(c.witness)).empty());
        CHECK_THROWS_AS(kernel_submodule_barcode(inp), PreconditionError);
    }
    CHECK(seen > 20);
}

TEST_CASE("structures transferred along a filtration") {
    Field f2 = Field::gf(2);
    // torus: the top class has a nonzero reduced Delta_2, the wedge's does not
    APersistenceInput torus = apersistence_from_filtration(constant_filtration(torus_7_vertex()), 2, 2, f2);
    APersistenceInput wedge = apersistence_from_filtration(constant_filtration(wedge_circle_sphere_circle()), 2, 2, f2);
    CHECK(delta_barcode(torus).total() == 0);
    CHECK(delta_barcode(wedge).intervals == std::vector<Interval>{{0, 0, 1}});

    // H_1 classes: reduced Delta_2 lands in degree 0 words and vanishes
    APersistenceInput t1 = apersistence_from_filtration(constant_filtration(torus_7_vertex()), 1, 2, f2);
    CHECK(delta_barcode(t1).intervals == std::vector<Interval>{{0, 0, 2}});

    // the torus with its last triangle added at level 1
    SimplicialComplex k = torus_7_vertex();
    std::vector<std::vector<std::size_t>> levels;
    for (int d = 0; d <= k.max_dim(); ++d) levels.emplace_back(k.count(d), 0);
    levels[2].back() = 1;
    Filtration late(k, levels);
    APersistenceInput g = apersistence_from_filtration(late, 2, 2, f2);
    REQUIRE(g.structures.size() == 2);
    CHECK(g.dim(0) == 0);
    CHECK(g.dim(1) == 1);
    CHECK(delta_barcode(g).total() == 0);
    CHECK(homology_barcode(late, 2, f2).intervals == std::vector<Interval>{{1, 1, 1}});
    CHECK(compatibility_check(g).ok);
}
