#include "structures.hpp"

#include <algorithm>
#include <map>

#include "ainf/linalg.hpp"
#include "oracles.hpp"

namespace ainf::testing {

namespace {

void words_of_degree(const GradedBasis& b, const std::vector<std::uint32_t>& alphabet, int len, int degree, Word& cur,
                     std::vector<Word>& out) {
    if (static_cast<int>(cur.size()) == len) {
        if (b.word_degree(cur) == degree) out.push_back(cur);
        return;
    }
    for (auto x : alphabet) {
        cur.push_back(x);
        words_of_degree(b, alphabet, len, degree, cur, out);
        cur.pop_back();
    }
}

Scalar nonzero_scalar(std::mt19937_64& rng, const Field& f) {
    Scalar s;
    do s = random_scalar(rng, f, 3);
    while (s.is_zero());
    return s;
}

}  // namespace

AInftyCoalgebra random_single_arity_structure(std::mt19937_64& rng, int k, const Field& f, int arity_bound) {
    std::uniform_int_distribution<int> tdeg(1, 3), tcount(2, 4), scount(1, 3), nterms(1, 3);
    struct Elem {
        int degree;
        bool source;
        std::vector<std::pair<std::vector<int>, Scalar>> image;  // words in target positions
    };
    std::vector<Elem> elems;
    int nt = tcount(rng);
    for (int i = 0; i < nt; ++i) elems.push_back({tdeg(rng), false, {}});
    int ns = scount(rng);
    std::uniform_int_distribution<int> pick(0, nt - 1);
    for (int i = 0; i < ns; ++i) {
        std::vector<int> w(static_cast<std::size_t>(k));
        for (auto& x : w) x = pick(rng);
        int wd = 0;
        for (int x : w) wd += elems[static_cast<std::size_t>(x)].degree;
        Elem e{wd - k + 2, true, {}};
        int terms = nterms(rng);
        for (int t = 0; t < terms; ++t) {
            // further words of the same degree: permutations of w
            std::vector<int> u = w;
            std::shuffle(u.begin(), u.end(), rng);
            e.image.push_back({u, nonzero_scalar(rng, f)});
        }
        elems.push_back(e);
    }
    std::vector<std::size_t> order(elems.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return elems[a].degree < elems[b].degree; });
    std::vector<std::uint32_t> pos(elems.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::uint32_t>(i);

    AInftyCoalgebra s;
    s.arity_bound = arity_bound;
    s.space.field = f;
    for (std::size_t i = 0; i < order.size(); ++i) {
        s.space.degrees.push_back(elems[order[i]].degree);
        s.space.labels.push_back((elems[order[i]].source ? "s" : "t") + std::to_string(i));
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (!elems[i].source) continue;
        Tensor t;
        for (const auto& [w, c] : elems[i].image) {
            Word word;
            for (int x : w) word.push_back(pos[static_cast<std::size_t>(x)]);
            accumulate(t, word, c);
        }
        s.set_op(k, pos[i], std::move(t));
    }
    return s;
}

AInftyMorphism random_isomorphism(std::mt19937_64& rng, const GradedBasis& space, int k_max) {
    const Field& f = space.field;
    AInftyMorphism g;
    auto& f1 = g.components[1];
    f1.resize(space.size());
    for (int p : space.distinct_degrees()) {
        auto idx = space.indices_of_degree(p);
        SparseMatrix m;
        do m = random_matrix(rng, idx.size(), idx.size(), f, 0.7);
        while (rank(m) != idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (const auto& e : m.column(c)) accumulate(f1[idx[c]], Word{idx[e.idx]}, e.val);
    }
    std::vector<std::uint32_t> all(space.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    std::bernoulli_distribution keep(0.5);
    for (int k = 2; k <= k_max; ++k) {
        auto& fk = g.components[k];
        fk.resize(space.size());
        for (std::size_t x = 0; x < space.size(); ++x) {
            std::vector<Word> cands;
            Word cur;
            words_of_degree(space, all, k, space.degrees[x] + k - 1, cur, cands);
            for (const auto& w : cands)
                if (keep(rng)) accumulate(fk[x], w, random_scalar(rng, f, 2));
        }
    }
    return g;
}

AInftyMorphism scaled_identity(const GradedBasis& space, const Scalar& c) {
    AInftyMorphism g = AInftyMorphism::identity(space);
    for (auto& t : g.components[1])
        for (auto& [w, v] : t) v *= c;
    return g;
}

}  // namespace ainf::testing
