#pragma once

#include <map>
#include <string>
#include <vector>

#include "ainf/linalg.hpp"
#include "ainf/simplicial.hpp"

namespace ainf {

// Graded vector space with a degree -1 differential d_p : C_p -> C_{p-1}.
// Cochain complexes are stored with negated degrees (C^q sits in degree -q).
// Elements are addressed globally by flattening the degrees in ascending order.
struct ChainComplex {
    Field field;
    std::map<int, std::size_t> dims;
    std::map<int, std::vector<std::string>> labels;
    std::map<int, SparseMatrix> d;

    std::size_t dim(int p) const;
    // Zero matrix when no block is stored.
    SparseMatrix differential(int p) const;
    int min_degree() const;
    int max_degree() const;
    std::size_t total_dim() const;
    std::size_t offset(int p) const;
    int degree_of(std::size_t global) const;
    // d o d = 0 and block shapes agree with dims.
    bool is_valid() const;
    // The differential as one square matrix on the flattened basis.
    SparseMatrix total_differential() const;
};

struct GradedMap {
    int shift = 0;
    std::map<int, SparseMatrix> blocks;  // source degree -> matrix

    // Zero block of the right shape when absent.
    SparseMatrix block(int p, std::size_t src_dim, std::size_t tgt_dim, const Field& f) const;
};

ChainComplex chain_complex(const SimplicialComplex& k, const Field& f, bool reduced = false);
// Transpose data: degree -q holds C^q and d_{-q} = (boundary_{q+1})^T.
ChainComplex cochain_complex(const SimplicialComplex& k, const Field& f);
SparseMatrix boundary_matrix(const SimplicialComplex& k, int p, const Field& f);
std::size_t betti(const SimplicialComplex& k, int p, const Field& f);
std::vector<std::size_t> betti_numbers(const SimplicialComplex& k, const Field& f);

struct CoproductTerm {
    Index left;
    Index right;
    Scalar coef;
};

// A comultiplication C -> C (x) C on the flattened basis of a chain complex.
struct Coproduct {
    std::vector<std::vector<CoproductTerm>> terms;
};

// Alexander-Whitney diagonal on the flattened basis of chain_complex(k, f, false).
Coproduct aw_diagonal(const SimplicialComplex& k, const Field& f);
bool is_coassociative(const Coproduct& delta, const Field& f);
// Delta d = (d (x) 1 + 1 (x) d) Delta with Koszul signs.
bool is_chain_map(const Coproduct& delta, const ChainComplex& c);
bool is_counital_aw(const SimplicialComplex& k, const Coproduct& delta, const Field& f);

// Cellular chains of a wedge of spheres (one 0-cell, zero differential) with
// the primitive diagonal: pt -> pt(x)pt, e -> pt(x)e + e(x)pt.
struct CellularDGC {
    ChainComplex chains;
    Coproduct diagonal;
};
CellularDGC wedge_of_spheres(const std::vector<int>& sphere_dims, const Field& f);

struct Cochain {
    int degree = 0;
    SparseVec values;  // indexed by the simplices of that dimension
};

// Cup products on the simplicial cochains of a fixed complex.
class CupProduct {
public:
    CupProduct(const SimplicialComplex& k, const Field& f);

    Cochain cup(const Cochain& a, const Cochain& b) const;
    // delta a, with (delta a)(s) = a(boundary s).
    Cochain coboundary(const Cochain& a) const;
    // Unit: the all-ones 0-cochain.
    Cochain unit() const;

    // Same operations on vectors in the flattened basis of cochain_complex(k, f).
    SparseVec cup_global(const SparseVec& a, const SparseVec& b) const;
    Cochain to_cochain(const SparseVec& global, int q) const;
    SparseVec to_global(const Cochain& c) const;
    std::size_t global_offset(int q) const;

    const SimplicialComplex& complex() const { return *k_; }
    const Field& field() const { return field_; }

private:
    const SimplicialComplex* k_;
    Field field_;
    // front_[k][p][i]: index of the front p-face of the i-th k-simplex; back_ similarly for the (k-p)-face.
    std::vector<std::vector<std::vector<std::uint32_t>>> front_, back_;
    std::vector<SparseMatrix> coboundary_;
};

}  // namespace ainf
