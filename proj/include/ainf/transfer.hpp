#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/contraction.hpp"

namespace ainf {

// Transferred A-infinity coalgebra on H_*(M) from a contraction of M and a DG
// comultiplication Delta on M:
//   Delta_n = sum_{s+t=n} (-1)^{t+1} (F_s (x) F_t) Delta iota,
//   F_1 = -pi,  F_s = pi^{(x)s} omega_s (-phi)  for s >= 2,
// with omega_s the tree sum above before projecting. Delta_2 = (pi (x) pi) Delta iota.
// The homology basis follows the order of the contraction's classes.
// Throws PreconditionError unless Delta is a coassociative chain map.
AInftyCoalgebra transfer_coalgebra(const ContractionOps& c, const Coproduct& diag, int n_max);
AInftyCoalgebra transfer_coalgebra(const Contraction& c, const Coproduct& diag, int n_max);
// Same without the coassociativity and chain-map checks.
AInftyCoalgebra transfer_coalgebra_unchecked(const ContractionOps& c, const Coproduct& diag, int n_max);

// Product of a DG algebra on the flattened basis of a cochain complex stored
// with negated degrees (C^q in degree -q).
using CochainProduct = std::function<SparseVec(const SparseVec&, const SparseVec&)>;

// Transferred A-infinity algebra on H^*(A), computed lazily per input word:
//   lambda_2 = mu, lambda_n = sum_{s+t=n} (-1)^{s+1} mu(G lambda_s (x) G lambda_t),
//   G lambda_1 = -id, G lambda_s = -phi lambda_s,
//   mu_n = pi lambda_n iota^{(x)n}.
// Classes are indexed in ascending cohomological degree.
class AlgebraTransfer {
public:
    AlgebraTransfer(const ContractionOps& c, CochainProduct product);

    const GradedBasis& space() const { return space_; }
    // Contraction class behind cohomology class h.
    std::size_t contraction_class(std::size_t h) const { return order_.at(h); }
    // Cochain representative iota(h) in the flattened basis.
    SparseVec representative(std::size_t h) const;
    // Coordinates in the cohomology basis of a cochain (pi applied).
    SparseVec project(const SparseVec& cochain) const;
    SparseVec homotopy(const SparseVec& cochain) const { return c_->homotopy(cochain); }
    const CochainProduct& product() const { return product_; }

    SparseVec mu(const Word& w);
    AInftyAlgebra structure(int n_max);

private:
    // G lambda_s on the cochain representatives of w.
    const SparseVec& g_lambda(const Word& w);
    SparseVec lambda(const Word& w);

    const ContractionOps* c_;
    CochainProduct product_;
    GradedBasis space_;
    std::vector<std::size_t> order_;
    std::vector<SparseVec> reps_;
    std::map<Word, SparseVec> memo_;
};

AInftyAlgebra transfer_algebra(const ContractionOps& c, CochainProduct product, int n_max);

// Chain-level cochain product of a simplicial complex, for use with AlgebraTransfer.
CochainProduct cup_product_of(const CupProduct& cup);

}  // namespace ainf
