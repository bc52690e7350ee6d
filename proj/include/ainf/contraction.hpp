#pragma once

#include <string>
#include <vector>

#include "ainf/chain.hpp"

namespace ainf {

// Contraction (pi, iota, phi) of a complex M onto a complex N with zero differential:
//   pi iota = id, pi phi = 0, phi iota = 0, phi phi = 0, phi d + d phi = iota pi - id.
// Vectors of M use its flattened basis; N's basis is ordered by ascending degree.
class ContractionOps {
public:
    virtual ~ContractionOps() = default;
    virtual const ChainComplex& big() const = 0;
    virtual std::size_t homology_dim() const = 0;
    virtual int homology_degree(std::size_t h) const = 0;
    virtual SparseVec project(const SparseVec& chain) const = 0;
    virtual SparseVec include(std::size_t h) const = 0;
    virtual SparseVec homotopy(const SparseVec& chain) const = 0;

    SparseVec include_vector(const SparseVec& hvec) const;
    std::size_t homology_dim(int p) const;
};

// Explicit form: every map stored as per-degree matrices.
struct Contraction {
    ChainComplex big;
    ChainComplex small;
    GradedMap proj;  // degree 0
    GradedMap incl;  // degree 0
    GradedMap htpy;  // degree +1
};

// Contraction onto homology from one column reduction with clearing. The
// flattened basis is split into cycles carrying homology (E), boundaries
// R_j (B) and the remaining columns V_j (Q); every index is the low of exactly
// one of these vectors, so coordinates come from a triangular solve. phi sends
// the boundary R_j to -V_j and vanishes on E and Q. Pivoting follows the basis
// order, so the result is deterministic.
class HomologyReduction final : public ContractionOps {
public:
    explicit HomologyReduction(ChainComplex c);

    const ChainComplex& big() const override { return c_; }
    std::size_t homology_dim() const override { return essential_.size(); }
    int homology_degree(std::size_t h) const override { return c_.degree_of(essential_.at(h)); }
    SparseVec project(const SparseVec& chain) const override;
    SparseVec include(std::size_t h) const override { return basis_.at(essential_.at(h)); }
    SparseVec homotopy(const SparseVec& chain) const override;
    using ContractionOps::homology_dim;

    // Global index of the cycle representing homology class h.
    std::size_t essential_index(std::size_t h) const { return essential_.at(h); }
    bool is_boundary(const SparseVec& chain) const;

    Contraction materialize() const;

private:
    enum class Kind : std::uint8_t { Essential, Birth, Death };
    struct Term {
        Index index;
        Scalar coef;
    };
    std::vector<Term> decompose(SparseVec c) const;

    ChainComplex c_;
    std::vector<Kind> kind_;
    std::vector<SparseVec> basis_;     // vector whose low is the index
    std::vector<std::int64_t> partner_;  // Birth index -> death column
    std::vector<std::size_t> essential_;
    std::vector<std::int64_t> class_of_;  // global index -> homology class or -1
};

Contraction homology_contraction(const ChainComplex& c);

// Adapter exposing an explicit contraction through ContractionOps.
class ExplicitContractionOps final : public ContractionOps {
public:
    explicit ExplicitContractionOps(const Contraction& c);
    const ChainComplex& big() const override { return c_->big; }
    std::size_t homology_dim() const override { return degrees_.size(); }
    int homology_degree(std::size_t h) const override { return degrees_.at(h); }
    SparseVec project(const SparseVec& chain) const override;
    SparseVec include(std::size_t h) const override;
    SparseVec homotopy(const SparseVec& chain) const override;
    using ContractionOps::homology_dim;

private:
    const Contraction* c_;
    std::vector<int> degrees_;
    SparseMatrix proj_, incl_, htpy_;  // flattened
};

struct ContractionReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ContractionReport verify_contraction(const Contraction& c);

// Flattened matrix of a graded map between two complexes.
SparseMatrix flatten(const GradedMap& g, const ChainComplex& src, const ChainComplex& tgt);

}  // namespace ainf
