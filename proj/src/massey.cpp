#include "ainf/massey.hpp"

#include <algorithm>

namespace ainf {

using nlohmann::json;

CohomologyModel::CohomologyModel(const SimplicialComplex& k, const Field& f)
    : complex_(k),
      field_(f),
      cochains_(cochain_complex(complex_, f)),
      reduction_(std::make_unique<HomologyReduction>(cochains_)),
      cup_(complex_, f),
      transfer_(std::make_unique<AlgebraTransfer>(*reduction_, cup_product_of(cup_))) {}

std::size_t CohomologyModel::dim(int q) const { return transfer_->space().dim(q); }

std::vector<std::size_t> CohomologyModel::betti() const {
    std::vector<std::size_t> out;
    for (int q = 0; q <= complex().max_dim(); ++q) out.push_back(dim(q));
    return out;
}

std::size_t CohomologyModel::class_offset(int q) const {
    const auto& deg = transfer_->space().degrees;
    return static_cast<std::size_t>(std::count_if(deg.begin(), deg.end(), [q](int d) { return d < q; }));
}

Cochain CohomologyModel::basis_representative(int q, std::size_t i) const {
    if (i >= dim(q)) throw PreconditionError("no cohomology class " + std::to_string(i) + " in degree " + std::to_string(q));
    return cup_.to_cochain(transfer_->representative(class_offset(q) + i), q);
}

Cochain CohomologyModel::representative(int q, const SparseVec& coords) const {
    Cochain out{q, {}};
    for (const auto& e : coords) axpy(out.values, e.val, basis_representative(q, e.idx).values);
    return out;
}

SparseVec CohomologyModel::coordinates(const Cochain& cocycle) const {
    const std::size_t lo = class_offset(cocycle.degree), hi = lo + dim(cocycle.degree);
    SparseVec out;
    for (const auto& e : transfer_->project(cup_.to_global(cocycle)))
        if (e.idx >= lo && e.idx < hi) out.push_back({static_cast<Index>(e.idx - lo), e.val});
    return out;
}

bool CohomologyModel::is_cocycle(const Cochain& c) const { return cup_.coboundary(c).values.empty(); }

std::optional<Cochain> CohomologyModel::bounding_cochain(const Cochain& c) const {
    if (c.values.empty()) return Cochain{c.degree - 1, {}};
    if (c.degree == 0) return std::nullopt;
    SparseVec g = cup_.to_global(c);
    if (!transfer_->project(g).empty()) return std::nullopt;
    // phi d + d phi = iota pi - id, so d(-phi c) = c for a cocycle with pi c = 0
    Cochain x = cup_.to_cochain(scaled(transfer_->homotopy(g), Scalar(-1)), c.degree - 1);
    if (cup_.coboundary(x).values != c.values) throw ConsistencyError("bounding cochain does not bound");
    return x;
}

std::size_t CohomologyModel::cup_rank(int p, int q) const {
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < dim(p); ++i)
        for (std::size_t j = 0; j < dim(q); ++j)
            cols.push_back(coordinates(cup_.cup(basis_representative(p, i), basis_representative(q, j))));
    if (cols.empty()) return 0;
    return rank(SparseMatrix::from_columns(dim(p + q), std::move(cols), field_));
}

SparseVec CohomologyModel::mu3(int p, const SparseVec& a, int q, const SparseVec& b, int r, const SparseVec& c) {
    const std::size_t op = class_offset(p), oq = class_offset(q), orr = class_offset(r);
    SparseVec total;
    for (const auto& x : a)
        for (const auto& y : b)
            for (const auto& z : c) {
                Word w{static_cast<std::uint32_t>(op + x.idx), static_cast<std::uint32_t>(oq + y.idx), static_cast<std::uint32_t>(orr + z.idx)};
                axpy(total, x.val * y.val * z.val, transfer_->mu(w));
            }
    const int deg = p + q + r - 1;
    const std::size_t lo = class_offset(deg), hi = lo + dim(deg);
    SparseVec out;
    for (const auto& e : total) {
        if (e.idx < lo || e.idx >= hi) throw ConsistencyError("mu_3 left its degree");
        out.push_back({static_cast<Index>(e.idx - lo), e.val});
    }
    return out;
}

bool MasseyTriple::contains(const SparseVec& coords) const {
    if (!defined) return false;
    return membership(subtract(coords, representative), indeterminacy);
}

namespace {

Cochain combine(const Cochain& u, const Scalar& su, const Cochain& v, const Scalar& sv) {
    if (u.degree != v.degree && !u.values.empty() && !v.values.empty()) throw ConsistencyError("adding cochains of different degrees");
    Cochain out{u.degree, scaled(u.values, su)};
    axpy(out.values, sv, v.values);
    return out;
}

void require_cocycle(const CohomologyModel& m, const Cochain& c, const char* name) {
    if (!m.is_cocycle(c)) throw PreconditionError(std::string("triple_massey: ") + name + " is not a cocycle");
}

}  // namespace

MasseyTriple triple_massey(const CohomologyModel& m, const Cochain& a, const Cochain& b, const Cochain& c) {
    require_cocycle(m, a, "a");
    require_cocycle(m, b, "b");
    require_cocycle(m, c, "c");
    const CupProduct& cup = m.cup();
    auto x = m.bounding_cochain(cup.cup(a, b));
    auto y = m.bounding_cochain(cup.cup(b, c));
    if (!x || !y) {
        MasseyTriple t;
        t.degree = a.degree + b.degree + c.degree - 1;
        return t;
    }
    return triple_massey(m, a, b, c, *x, *y);
}

MasseyTriple triple_massey(const CohomologyModel& m, const Cochain& a, const Cochain& b, const Cochain& c, const Cochain& x,
                           const Cochain& y) {
    require_cocycle(m, a, "a");
    require_cocycle(m, b, "b");
    require_cocycle(m, c, "c");
    const CupProduct& cup = m.cup();
    const Field& f = m.field();
    if (cup.coboundary(x).values != cup.cup(a, b).values) throw PreconditionError("triple_massey: delta x differs from a b");
    if (cup.coboundary(y).values != cup.cup(b, c).values) throw PreconditionError("triple_massey: delta y differs from b c");
    MasseyTriple t;
    t.defined = true;
    t.degree = a.degree + b.degree + c.degree - 1;
    const Scalar sign = a.degree % 2 ? f.one() : -f.one();  // -(-1)^{|a|}
    t.representative_cochain = combine(cup.cup(x, c), f.one(), cup.cup(a, y), sign);
    t.representative_cochain.degree = t.degree;
    if (!m.is_cocycle(t.representative_cochain)) throw ConsistencyError("Massey representative is not a cocycle");
    t.representative = m.coordinates(t.representative_cochain);

    std::vector<SparseVec> gens;
    const int left = b.degree + c.degree - 1, right = a.degree + b.degree - 1;
    for (std::size_t i = 0; left >= 0 && i < m.dim(left); ++i) gens.push_back(m.coordinates(cup.cup(a, m.basis_representative(left, i))));
    for (std::size_t i = 0; right >= 0 && i < m.dim(right); ++i) gens.push_back(m.coordinates(cup.cup(m.basis_representative(right, i), c)));
    const std::size_t ambient = t.degree >= 0 ? m.dim(t.degree) : 0;
    t.indeterminacy = gens.empty() ? Subspace::zero(ambient, f) : Subspace::spanned_by(SparseMatrix::from_columns(ambient, gens, f));
    return t;
}

std::size_t hopf_cup_check(const CohomologyModel& m) { return m.cup_rank(1, 1); }

MembershipResult mu3_membership_check(CohomologyModel& m, int p, const SparseVec& alpha, int q, const SparseVec& beta, int r,
                                      const SparseVec& gamma) {
    MembershipResult out;
    out.massey = triple_massey(m, m.representative(p, alpha), m.representative(q, beta), m.representative(r, gamma));
    if (!out.massey.defined) throw PreconditionError("mu3_membership_check: the Massey product is not defined");
    out.mu3 = m.mu3(p, alpha, q, beta, r, gamma);
    // with the Massey sign above, mu_3 itself lies in the coset
    out.holds = out.massey.contains(out.mu3);
    return out;
}

std::vector<SparseVec> alexander_dual_basis(const CohomologyModel& m, const LinkComplement& lc) {
    const std::size_t k = lc.meridians.size();
    if (m.dim(1) != k) throw ConsistencyError("H^1 has dimension " + std::to_string(m.dim(1)) + " but the link has " + std::to_string(k) + " components");
    const Field& f = m.field();
    // pairing[a][b] = h_a(meridian_b)
    SparseMatrix pairing(k, k, f);
    std::vector<SparseVec> chains;
    for (const auto& loop : lc.meridians) chains.push_back(cycle_chain(m.complex(), loop, f));
    for (std::size_t a = 0; a < k; ++a) {
        Cochain h = m.basis_representative(1, a);
        for (std::size_t b = 0; b < k; ++b) pairing.add_entry(a, b, dot(h.values, chains[b]));
    }
    SparseMatrix t = pairing.transpose();
    std::vector<SparseVec> out;
    for (std::size_t i = 0; i < k; ++i) {
        auto c = solve(t, unit_vector(static_cast<Index>(i), f));
        if (!c) throw ConsistencyError("meridians do not pair perfectly with H^1");
        out.push_back(*c);
    }
    return out;
}

namespace {

std::vector<std::size_t> predicted_betti(std::size_t k) {
    if (k == 0) return {1, 0, 0, 1};
    return {1, k, k - 1, 0};
}

}  // namespace

LinkReport link_pipeline(const LinkSpec& spec, const Field& f, bool escalate) {
    LinkReport rep;
    rep.name = spec.name;
    std::vector<int> plan{spec.resolution};
    if (escalate && spec.resolution < 12) plan.push_back(12);
    const std::size_t k = spec.curves.size();
    for (std::size_t attempt = 0; attempt < plan.size(); ++attempt) {
        const int res = plan[attempt];
        const bool last = attempt + 1 == plan.size();
        rep.attempts.push_back(res);
        LinkComplement lc;
        try {
            lc = build_link_complement(spec, res);
        } catch (const PreconditionError& e) {
            rep.notes.push_back(e.what());
            if (last) throw;
            continue;
        }
        CohomologyModel m(lc.complex, f);
        rep.resolution = res;
        rep.simplices = lc.complex.size();
        rep.betti = m.betti();
        rep.betti_as_predicted = rep.betti == predicted_betti(k);
        if (!rep.betti_as_predicted) {
            rep.notes.push_back("Betti numbers at resolution " + std::to_string(res) + " disagree with Alexander duality");
            if (!last) continue;
            return rep;
        }
        rep.cup_rank = hopf_cup_check(m);
        if (k < 2) return rep;
        auto duals = alexander_dual_basis(m, lc);
        const SparseVec& a = duals[0];
        const SparseVec& b = duals[1];
        const SparseVec& c = k >= 3 ? duals[2] : duals[0];
        rep.mu3 = m.mu3(1, a, 1, b, 1, c);
        rep.mu3_nonzero = !rep.mu3.empty();
        MasseyTriple t = triple_massey(m, m.representative(1, a), m.representative(1, b), m.representative(1, c));
        rep.massey_defined = t.defined;
        if (t.defined) {
            rep.zero_in_massey = t.contains_zero();
            rep.mu3_in_indeterminacy = membership(rep.mu3, t.indeterminacy);
            rep.membership = t.contains(rep.mu3);
        }
        return rep;
    }
    return rep;
}

json to_json(const LinkReport& r) {
    json j;
    j["name"] = r.name;
    j["attempts"] = r.attempts;
    j["resolution"] = r.resolution;
    j["simplices"] = r.simplices;
    j["betti"] = r.betti;
    j["betti_as_predicted"] = r.betti_as_predicted;
    j["cup_rank"] = r.cup_rank;
    j["massey_defined"] = r.massey_defined;
    if (r.massey_defined) {
        j["zero_in_massey"] = r.zero_in_massey;
        j["verdict"] = r.zero_in_massey ? "0 in <alpha, beta, gamma>" : "0 not in <alpha, beta, gamma>";
        j["mu3_in_indeterminacy"] = r.mu3_in_indeterminacy;
        j["membership"] = r.membership;
    } else {
        j["verdict"] = "Massey product undefined";
    }
    json mu = json::array();
    for (const auto& e : r.mu3) mu.push_back(json::array({e.idx, e.val.str()}));
    j["mu3"] = mu;
    j["mu3_nonzero"] = r.mu3_nonzero;
    j["notes"] = r.notes;
    return j;
}

HigherSphereResult higher_sphere_link(int p, int q, int r, int resolution) {
    if (p < 1 || q < 1 || r < 1) throw PreconditionError("higher_sphere_link: dimensions must be positive");
    if (p != 1 || q != 1 || r != 1)
        throw PreconditionError("higher_sphere_link: only p = q = r = 1 is built; S^" + std::to_string(p + q + r) +
                                " grids exceed the cell budget");
    HigherSphereResult out;
    out.spec = sphere_triple_spec();
    out.spec.resolution = resolution;
    out.report = link_pipeline(out.spec, Field::rationals(), false);
    return out;
}

}  // namespace ainf
