#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/chain.hpp"
#include "ainf/contraction.hpp"
#include "ainf/link.hpp"
#include "ainf/transfer.hpp"
#include "json.hpp"

namespace ainf {

// Cochains of a complex (copied) with one contraction onto cohomology shared by the
// Massey computation and the transferred A-infinity algebra. Cohomology
// coordinates in degree q are indexed 0..dim(q)-1 in the order of the transfer.
class CohomologyModel {
public:
    CohomologyModel(const SimplicialComplex& k, const Field& f);
    CohomologyModel(const CohomologyModel&) = delete;
    CohomologyModel& operator=(const CohomologyModel&) = delete;

    const SimplicialComplex& complex() const { return complex_; }
    const Field& field() const { return field_; }
    const CupProduct& cup() const { return cup_; }
    AlgebraTransfer& transfer() { return *transfer_; }

    std::size_t dim(int q) const;
    std::vector<std::size_t> betti() const;
    // Cocycle representing the combination of degree-q classes with these coordinates.
    Cochain representative(int q, const SparseVec& coords) const;
    Cochain basis_representative(int q, std::size_t i) const;
    SparseVec coordinates(const Cochain& cocycle) const;
    bool is_cocycle(const Cochain& c) const;
    // x with delta x = c, or nullopt when c is not a coboundary.
    std::optional<Cochain> bounding_cochain(const Cochain& c) const;
    // Rank of H^p (x) H^q -> H^{p+q} on basis representatives.
    std::size_t cup_rank(int p, int q) const;
    // mu_3 of the transferred structure on classes given by coordinates.
    SparseVec mu3(int p, const SparseVec& a, int q, const SparseVec& b, int r, const SparseVec& c);

private:
    std::size_t class_offset(int q) const;

    SimplicialComplex complex_;
    Field field_;
    ChainComplex cochains_;
    std::unique_ptr<HomologyReduction> reduction_;
    CupProduct cup_;
    std::unique_ptr<AlgebraTransfer> transfer_;
};

// <a, b, c> for cocycles a, b, c, computed as the coset of
// [x c - (-1)^{|a|} a y] with delta x = a b, delta y = b c, modulo
// a H^{q+r-1} + H^{p+q-1} c. Coordinates live in H^{degree}.
struct MasseyTriple {
    bool defined = false;
    int degree = 0;
    Cochain representative_cochain;
    SparseVec representative;
    Subspace indeterminacy;

    bool contains(const SparseVec& coords) const;
    bool contains_zero() const { return contains({}); }
};

// PreconditionError when an input is not a cocycle.
MasseyTriple triple_massey(const CohomologyModel& m, const Cochain& a, const Cochain& b, const Cochain& c);
// Same with the bounding cochains supplied; PreconditionError unless delta x = a b and delta y = b c.
MasseyTriple triple_massey(const CohomologyModel& m, const Cochain& a, const Cochain& b, const Cochain& c, const Cochain& x,
                           const Cochain& y);

// Rank of the cup product H^1 (x) H^1 -> H^2.
std::size_t hopf_cup_check(const CohomologyModel& m);

struct MembershipResult {
    SparseVec mu3;
    MasseyTriple massey;
    bool holds = false;
};
// Whether mu_3(alpha (x) beta (x) gamma) lies in <alpha, beta, gamma> (classes given
// by coordinates in degrees p, q, r). PreconditionError when the product is undefined.
MembershipResult mu3_membership_check(CohomologyModel& m, int p, const SparseVec& alpha, int q, const SparseVec& beta, int r,
                                      const SparseVec& gamma);

// Coordinates in H^1 of the classes dual to the meridians: alpha_i(m_j) = delta_ij.
std::vector<SparseVec> alexander_dual_basis(const CohomologyModel& m, const LinkComplement& lc);

struct LinkReport {
    std::string name;
    std::vector<int> attempts;  // resolutions tried, last one used
    int resolution = 0;
    std::size_t simplices = 0;
    std::vector<std::size_t> betti;
    bool betti_as_predicted = false;  // (1, k, k-1, 0) for k components
    std::size_t cup_rank = 0;
    bool massey_defined = false;
    bool zero_in_massey = false;
    SparseVec mu3;
    bool mu3_nonzero = false;
    bool mu3_in_indeterminacy = false;
    bool membership = false;
    std::vector<std::string> notes;
};

// Complement, cohomology, cup rank, <alpha_1, alpha_2, alpha_3> (alpha_1, alpha_2, alpha_1
// for two components), mu_3 and the membership check. Starts at the LinkSpec's resolution
// and moves to 12 when the builder rejects it or the Betti numbers disagree with
// Alexander duality.
LinkReport link_pipeline(const LinkSpec& spec, const Field& f = Field::rationals(), bool escalate = true);
nlohmann::json to_json(const LinkReport& r);

// Complement of the three spheres x = 0, |y|^2 + |z|^2/4 = 1 and its cyclic
// shifts in S^{p+q+r}, with the Massey triple of the Alexander duals. Only
// p = q = r = 1 (the Borromean rings, as axis-parallel rectangles) is built;
// other dimensions throw PreconditionError.
struct HigherSphereResult {
    LinkSpec spec;
    LinkReport report;
};
HigherSphereResult higher_sphere_link(int p, int q, int r, int resolution);

}  // namespace ainf
