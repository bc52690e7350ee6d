#include "ainf/contraction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ainf {

SparseVec ContractionOps::include_vector(const SparseVec& hvec) const {
    SparseVec out;
    for (const auto& e : hvec) axpy(out, e.val, include(e.idx));
    return out;
}

std::size_t ContractionOps::homology_dim(int p) const {
    std::size_t n = 0;
    for (std::size_t h = 0; h < homology_dim(); ++h)
        if (homology_degree(h) == p) ++n;
    return n;
}

HomologyReduction::HomologyReduction(ChainComplex c) : c_(std::move(c)) {
    if (!c_.is_valid()) throw std::invalid_argument("homology_contraction: not a chain complex");
    const std::size_t n = c_.total_dim();
    kind_.assign(n, Kind::Essential);
    basis_.assign(n, {});
    partner_.assign(n, -1);
    class_of_.assign(n, -1);
    std::vector<bool> cleared(n, false);
    std::vector<std::int64_t> pivot_of_row(n, -1);
    std::vector<SparseVec> reduced(n);
    SparseMatrix dtot = c_.total_differential();
    const Field& f = c_.field;

    std::vector<int> degrees;
    for (const auto& [p, k] : c_.dims)
        if (k > 0) degrees.push_back(p);
    for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) {
        std::size_t lo = c_.offset(*it), hi = lo + c_.dim(*it);
        for (std::size_t j = lo; j < hi; ++j) {
            if (cleared[j]) continue;
            SparseVec r = dtot.column(j);
            SparseVec v = unit_vector(static_cast<Index>(j), f);
            while (!r.empty()) {
                std::int64_t k = pivot_of_row[r.back().idx];
                if (k < 0) break;
                Scalar factor = -(r.back().val / reduced[static_cast<std::size_t>(k)].back().val);
                axpy(r, factor, reduced[static_cast<std::size_t>(k)]);
                axpy(v, factor, basis_[static_cast<std::size_t>(k)]);
            }
            if (r.empty()) {
                kind_[j] = Kind::Essential;
                basis_[j] = std::move(v);
            } else {
                Index low = r.back().idx;
                pivot_of_row[low] = static_cast<std::int64_t>(j);
                kind_[j] = Kind::Death;
                basis_[j] = std::move(v);
                kind_[low] = Kind::Birth;
                partner_[low] = static_cast<std::int64_t>(j);
                cleared[low] = true;
                basis_[low] = r;
                reduced[j] = std::move(r);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (kind_[i] == Kind::Essential) {
            class_of_[i] = static_cast<std::int64_t>(essential_.size());
            essential_.push_back(i);
        }
}

std::vector<HomologyReduction::Term> HomologyReduction::decompose(SparseVec c) const {
    std::vector<Term> out;
    c = in_field(c, c_.field);
    while (!c.empty()) {
        Index m = c.back().idx;
        if (m >= basis_.size()) throw std::out_of_range("chain index beyond complex");
        const SparseVec& b = basis_[m];
        Scalar factor = c.back().val / b.back().val;
        axpy(c, -factor, b);
        out.push_back({m, std::move(factor)});
    }
    return out;
}

SparseVec HomologyReduction::project(const SparseVec& chain) const {
    std::vector<Entry> acc;
    for (auto& t : decompose(chain))
        if (kind_[t.index] == Kind::Essential) acc.push_back({static_cast<Index>(class_of_[t.index]), std::move(t.coef)});
    return canonical(std::move(acc));
}

SparseVec HomologyReduction::homotopy(const SparseVec& chain) const {
    SparseVec out;
    for (const auto& t : decompose(chain))
        if (kind_[t.index] == Kind::Birth) axpy(out, -t.coef, basis_[static_cast<std::size_t>(partner_[t.index])]);
    return out;
}

bool HomologyReduction::is_boundary(const SparseVec& chain) const {
    for (const auto& t : decompose(chain))
        if (kind_[t.index] != Kind::Birth) return false;
    return true;
}

Contraction HomologyReduction::materialize() const {
    Contraction out;
    out.big = c_;
    out.small.field = c_.field;
    const Field& f = c_.field;
    std::map<int, std::vector<std::size_t>> classes_by_degree;
    for (std::size_t h = 0; h < essential_.size(); ++h) classes_by_degree[homology_degree(h)].push_back(h);
    std::map<int, std::size_t> local_of_class;
    for (const auto& [p, k] : c_.dims) {
        out.small.dims[p] = classes_by_degree.count(p) ? classes_by_degree[p].size() : 0;
        auto& lab = out.small.labels[p];
        for (std::size_t i = 0; i < out.small.dims[p]; ++i) lab.push_back("H" + std::to_string(p) + "_" + std::to_string(i));
    }
    out.proj.shift = 0;
    out.incl.shift = 0;
    out.htpy.shift = 1;
    for (const auto& [p, k] : c_.dims) {
        std::size_t off = c_.offset(p);
        std::size_t hdim = out.small.dim(p);
        std::size_t hoff = 0;
        for (const auto& [q, v] : classes_by_degree)
            if (q < p) hoff += v.size();
        SparseMatrix pm(hdim, k, f), im(k, hdim, f), phim(c_.dim(p + 1), k, f);
        std::size_t off_up = c_.offset(p + 1);
        for (std::size_t j = 0; j < k; ++j) {
            SparseVec e = unit_vector(static_cast<Index>(off + j), f);
            SparseVec pr;
            for (const auto& x : project(e)) pr.push_back({static_cast<Index>(x.idx - hoff), x.val});
            pm.set_column(j, pr);
            SparseVec ph;
            for (const auto& x : homotopy(e)) ph.push_back({static_cast<Index>(x.idx - off_up), x.val});
            phim.set_column(j, ph);
        }
        for (std::size_t i = 0; i < hdim; ++i) {
            SparseVec inc;
            for (const auto& x : include(hoff + i)) inc.push_back({static_cast<Index>(x.idx - off), x.val});
            im.set_column(i, inc);
        }
        out.proj.blocks[p] = pm;
        out.incl.blocks[p] = im;
        out.htpy.blocks[p] = phim;
    }
    return out;
}

Contraction homology_contraction(const ChainComplex& c) { return HomologyReduction(c).materialize(); }

SparseMatrix flatten(const GradedMap& g, const ChainComplex& src, const ChainComplex& tgt) {
    const Field& f = src.field;
    std::vector<SparseVec> cols(src.total_dim());
    for (const auto& [p, k] : src.dims) {
        if (k == 0) continue;
        SparseMatrix b = g.block(p, k, tgt.dim(p + g.shift), f);
        if (b.cols() != k || b.rows() != tgt.dim(p + g.shift)) throw std::invalid_argument("graded map block has wrong shape");
        std::size_t so = src.offset(p), to = tgt.offset(p + g.shift);
        for (std::size_t j = 0; j < k; ++j) {
            SparseVec col;
            for (const auto& e : b.column(j)) col.push_back({static_cast<Index>(to + e.idx), e.val});
            cols[so + j] = std::move(col);
        }
    }
    return SparseMatrix::from_columns(tgt.total_dim(), std::move(cols), f);
}

ExplicitContractionOps::ExplicitContractionOps(const Contraction& c) : c_(&c) {
    for (const auto& [p, k] : c.small.dims)
        for (std::size_t i = 0; i < k; ++i) degrees_.push_back(p);
    proj_ = flatten(c.proj, c.big, c.small);
    incl_ = flatten(c.incl, c.small, c.big);
    htpy_ = flatten(c.htpy, c.big, c.big);
}

SparseVec ExplicitContractionOps::project(const SparseVec& chain) const { return proj_.apply(chain); }
SparseVec ExplicitContractionOps::include(std::size_t h) const { return incl_.column(h); }
SparseVec ExplicitContractionOps::homotopy(const SparseVec& chain) const { return htpy_.apply(chain); }

ContractionReport verify_contraction(const Contraction& c) {
    ContractionReport rep;
    const Field& f = c.big.field;
    if (!c.big.is_valid()) {
        rep.ok = false;
        rep.violations.push_back("big complex: d o d != 0");
    }
    SparseMatrix pi = flatten(c.proj, c.big, c.small);
    SparseMatrix io = flatten(c.incl, c.small, c.big);
    SparseMatrix phi = flatten(c.htpy, c.big, c.big);
    SparseMatrix d = c.big.total_differential();
    SparseMatrix dn = c.small.total_differential();
    auto check = [&](const std::string& name, const SparseMatrix& m, const ChainComplex& src) {
        std::set<int> bad;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.column(j).empty()) bad.insert(src.degree_of(j));
        for (int p : bad) {
            rep.ok = false;
            rep.violations.push_back(name + " fails in degree " + std::to_string(p));
        }
    };
    check("pi iota = id", pi * io - SparseMatrix::identity(io.cols(), f), c.small);
    check("pi phi = 0", pi * phi, c.big);
    check("phi iota = 0", phi * io, c.small);
    check("phi phi = 0", phi * phi, c.big);
    check("phi d + d phi = iota pi - id", phi * d + d * phi - (io * pi - SparseMatrix::identity(d.cols(), f)), c.big);
    check("pi chain map", pi * d - dn * pi, c.big);
    check("iota chain map", d * io - io * dn, c.small);
    return rep;
}

}  // namespace ainf
