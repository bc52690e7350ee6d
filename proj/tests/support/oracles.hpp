#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ainf/chain.hpp"
#include "ainf/field.hpp"
#include "ainf/persist.hpp"
#include "ainf/simplicial.hpp"
#include "ainf/sparse.hpp"

namespace ainf::testing {

using Dense = std::vector<std::vector<Scalar>>;

// Plain Gaussian elimination on a dense copy; shares no code with linalg.
std::size_t dense_rank(Dense rows, const Field& f);
Dense dense_product(const Dense& a, const Dense& b, const Field& f);
Dense to_dense(const SparseMatrix& m);
// Solution of A x = b by dense elimination, if any.
std::optional<std::vector<Scalar>> dense_solve(const Dense& a, const std::vector<Scalar>& b, const Field& f);

Scalar random_scalar(std::mt19937_64& rng, const Field& f, int range = 3);
SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, const Field& f, double density = 0.5,
                           int range = 3);
// Random rank-r matrix as a product of random rows x r and r x cols factors.
SparseMatrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r, const Field& f);

SimplicialComplex random_simplicial_complex(std::mt19937_64& rng, std::uint32_t vertices, std::size_t tops, int max_dim);

// Chevalley-Eilenberg cochains of a nilpotent Lie algebra on generators e_0..e_{n-1}
// with d e_k = sum c e_i e_j (i < j < k), dualized to a DG coalgebra: chains are
// the exterior monomials, boundary = transpose of d, diagonal = dual of the wedge product.
struct Bracket {
    int i, j, k;
    long long coef;
};
std::optional<CellularDGC> ce_dual_coalgebra(int n, const std::vector<Bracket>& brackets, const Field& f);
// Random Jacobi-consistent instance; retries until d^2 = 0.
CellularDGC random_ce_dual(std::mt19937_64& rng, int n, const Field& f);

// Random module with up to max_n maps and dims <= max_dim; a mix of dense, sparse and low-rank maps.
PersistenceModule random_module(std::mt19937_64& rng, const Field& f, std::size_t max_dim, std::size_t max_n);
// Rank table by dense products, independent of ranks_table.
RankTable dense_ranks(const PersistenceModule& m);

}  // namespace ainf::testing
