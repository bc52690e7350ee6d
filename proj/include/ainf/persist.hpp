#pragma once

#include <string>
#include <vector>

#include "ainf/chain.hpp"
#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"
#include "json.hpp"

namespace ainf {

// V_0 -> V_1 -> ... -> V_N with maps[i] : V_i -> V_{i+1}.
struct PersistenceModule {
    Field field;
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> maps;

    std::size_t last_index() const { return dims.empty() ? 0 : dims.size() - 1; }
    // Throws PreconditionError when map shapes do not chain.
    void validate() const;
};

// d[i][j] = rank f^{i,j} for i <= j (f^{i,i} = id); zero below the diagonal.
using RankTable = std::vector<std::vector<long long>>;

RankTable ranks_table(const PersistenceModule& m);
// d^{i,j} with out-of-range indices read as 0.
long long rank_entry(const RankTable& d, long long i, long long j);

enum class Flavor { HalfOpen, Closed };

// Closed interval [birth, last] of indices.
struct Interval {
    std::size_t birth = 0;
    std::size_t last = 0;
    long long multiplicity = 1;

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct Barcode {
    std::size_t last_index = 0;  // N
    int degree = 0;
    Flavor flavor = Flavor::HalfOpen;
    std::string kind = "H";
    std::vector<Interval> intervals;  // sorted, one entry per distinct interval

    long long multiplicity(std::size_t birth, std::size_t last) const;
    long long total() const;
    // Sum of multiplicities over intervals containing [i, j].
    long long covering(std::size_t i, std::size_t j) const;
};

// N^{i,j} = d^{i,j} - d^{i-1,j} - d^{i,j+1} + d^{i-1,j+1}; the interval ending at
// the last index is the infinite bar. Throws ConsistencyError on a negative count.
Barcode barcode_from_ranks(const RankTable& d, Flavor flavor);
RankTable ranks_from_barcode(const Barcode& b);
bool counting_property_holds(const Barcode& b, const RankTable& d);

// Death rendering: half-open [i, last+1) with null for the infinite bar, closed [i, last].
nlohmann::json to_json(const Barcode& b);
nlohmann::json to_json(const std::vector<Barcode>& bs);

// H_p(K_0) -> ... -> H_p(K_N) with maps pi_{i+1} o inclusion o iota_i.
PersistenceModule homology_module(const Filtration& f, int p, const Field& field);
std::size_t persistent_betti(const Filtration& f, int p, std::size_t i, std::size_t j, const Field& field);
Barcode homology_barcode(const Filtration& f, int p, const Field& field);

// rank(B) - rank(AB) - rank(BC) + rank(ABC) for A: m x n, B: n x k, C: k x l.
long long frobenius_defect(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& c);

}  // namespace ainf
