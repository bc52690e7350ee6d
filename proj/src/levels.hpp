#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "ainf/contraction.hpp"

namespace ainf::detail {

// Homology of one level K_i of a filtration, with the chain-level bookkeeping
// needed to push classes into a later level.
struct Level {
    SimplicialComplex k;
    std::vector<std::vector<std::size_t>> original;  // per dim: local -> index in the full complex
    std::vector<std::unordered_map<std::size_t, std::size_t>> local;
    ChainComplex chains;
    std::unique_ptr<HomologyReduction> red;

    // Contraction classes of degree p, in contraction order.
    std::vector<std::size_t> classes(int p) const;
};

Level make_level(const Filtration& f, std::size_t i, const Field& field);
// Matrix of H_p(K_a) -> H_p(K_b) on the classes of degree p.
SparseMatrix induced_map(const Level& a, const Level& b, int p, const Field& field);

}  // namespace ainf::detail
