#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/chain.hpp"
#include "ainf/persist.hpp"
#include "json.hpp"

namespace ainf {

// H_*(K_0) -> ... -> H_*(K_N) with a minimal A-infinity coalgebra on each term.
// maps[i] sends structures[i].space to structures[i+1].space; its block for
// degree p is indexed by indices_of_degree(p) on both sides.
struct APersistenceInput {
    Field field;
    std::vector<AInftyCoalgebra> structures;
    std::vector<GradedMap> maps;
    int degree = 0;
    int n = 2;

    std::size_t last_index() const { return structures.empty() ? 0 : structures.size() - 1; }
    // Throws PreconditionError on mismatched fields, shapes or counts.
    void validate() const;
    // f^{i,i+1} and Delta^i_n restricted to degree p.
    SparseMatrix map_block(std::size_t i) const;
    SparseMatrix delta_block(std::size_t i) const;
    std::size_t dim(std::size_t i) const;
};

// dim of f^{i,j}_p restricted to the intersection over k in [i, j] of Ker(Delta^k_n o f^{i,k}_p).
std::size_t delta_group_dim(const APersistenceInput& inp, std::size_t i, std::size_t j);
RankTable delta_table(const APersistenceInput& inp);
// Closed-flavor barcode from the table above; ConsistencyError on a negative count.
Barcode delta_barcode(const APersistenceInput& inp);

struct CompatibilityReport {
    bool ok = true;
    std::size_t index = 0;  // first i with f(Ker Delta^i) not inside Ker Delta^{i+1}
    SparseVec witness;      // element of Ker Delta^i, degree-p coordinates
};
CompatibilityReport compatibility_check(const APersistenceInput& inp);

// Barcode of Ker Delta^0 -> ... -> Ker Delta^N under the restricted maps.
// Throws PreconditionError when the kernels are not nested.
Barcode kernel_submodule_barcode(const APersistenceInput& inp);

// Lineage of one class born at index start: for k = start..N, whether
// f^{start,k} of it is nonzero and whether it lies in Ker Delta^k.
struct KernelPattern {
    std::size_t start = 0;
    SparseVec cls;
    std::vector<bool> alive;
    std::vector<bool> in_kernel;

    // Indices k with the class alive and in the kernel.
    std::vector<std::size_t> support() const;
    bool contiguous() const;
};
// Patterns of the classes completing Im f^{i-1,i} at each index i.
std::vector<KernelPattern> kernel_patterns(const APersistenceInput& inp);
// Those patterns whose kernel support has a gap.
std::vector<KernelPattern> sleep_wake_diagnostic(const APersistenceInput& inp);

// Per-level transferred structures and induced maps for a filtration. Words with
// a degree-0 letter are dropped from every operation (reduced homology).
APersistenceInput apersistence_from_filtration(const Filtration& f, int p, int n, const Field& field);

// Bundle: {"field", "degree", "n", "structures": [structure JSON...],
//          "maps": [{"<degree>": [[coef, ...] rows], ...}, ...]}
nlohmann::json to_json(const APersistenceInput& inp);
APersistenceInput apersistence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KernelPattern& k);

}  // namespace ainf
