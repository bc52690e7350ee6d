#include "ainf/chain.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace ainf {

std::size_t ChainComplex::dim(int p) const {
    auto it = dims.find(p);
    return it == dims.end() ? 0 : it->second;
}

SparseMatrix ChainComplex::differential(int p) const {
    auto it = d.find(p);
    if (it != d.end()) return it->second;
    return SparseMatrix(dim(p - 1), dim(p), field);
}

int ChainComplex::min_degree() const {
    for (const auto& [p, n] : dims)
        if (n > 0) return p;
    return 0;
}

int ChainComplex::max_degree() const {
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        if (it->second > 0) return it->first;
    return -1;
}

std::size_t ChainComplex::total_dim() const {
    std::size_t n = 0;
    for (const auto& [p, k] : dims) n += k;
    return n;
}

std::size_t ChainComplex::offset(int p) const {
    std::size_t n = 0;
    for (const auto& [q, k] : dims) {
        if (q >= p) break;
        n += k;
    }
    return n;
}

int ChainComplex::degree_of(std::size_t global) const {
    std::size_t n = 0;
    for (const auto& [q, k] : dims) {
        if (global < n + k) return q;
        n += k;
    }
    throw std::out_of_range("global index beyond complex");
}

bool ChainComplex::is_valid() const {
    for (const auto& [p, m] : d) {
        if (m.rows() != dim(p - 1) || m.cols() != dim(p) || m.field() != field) return false;
        if (d.count(p - 1) && !(d.at(p - 1) * m).is_zero()) return false;
    }
    return true;
}

SparseMatrix ChainComplex::total_differential() const {
    std::size_t n = total_dim();
    std::vector<SparseVec> cols(n);
    for (const auto& [p, m] : d) {
        std::size_t src = offset(p), tgt = offset(p - 1);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            SparseVec c;
            for (const auto& e : m.column(j)) c.push_back({static_cast<Index>(tgt + e.idx), e.val});
            cols[src + j] = std::move(c);
        }
    }
    return SparseMatrix::from_columns(n, std::move(cols), field);
}

SparseMatrix GradedMap::block(int p, std::size_t src_dim, std::size_t tgt_dim, const Field& f) const {
    auto it = blocks.find(p);
    if (it != blocks.end()) return it->second;
    return SparseMatrix(tgt_dim, src_dim, f);
}

namespace {

std::string label_of(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out + "]";
}

}  // namespace

SparseMatrix boundary_matrix(const SimplicialComplex& k, int p, const Field& f) {
    SparseMatrix m(k.count(p - 1), k.count(p), f);
    if (p <= 0) return m;
    for (std::size_t j = 0; j < k.count(p); ++j) {
        const Simplex& s = k.simplex(p, j);
        std::vector<Entry> col;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            col.push_back({static_cast<Index>(*k.index_of(face)), f.from_int(drop % 2 == 0 ? 1 : -1)});
        }
        m.set_column(j, canonical(std::move(col)));
    }
    return m;
}

ChainComplex chain_complex(const SimplicialComplex& k, const Field& f, bool reduced) {
    ChainComplex c;
    c.field = f;
    for (int p = 0; p <= k.max_dim(); ++p) {
        c.dims[p] = k.count(p);
        auto& lab = c.labels[p];
        for (const auto& s : k.simplices(p)) lab.push_back(label_of(s));
        if (p > 0) c.d[p] = boundary_matrix(k, p, f);
    }
    if (reduced) {
        c.dims[-1] = 1;
        c.labels[-1] = {"[]"};
        SparseMatrix aug(1, k.count(0), f);
        for (std::size_t j = 0; j < k.count(0); ++j) aug.set_column(j, unit_vector(0, f));
        c.d[0] = aug;
    }
    return c;
}

ChainComplex cochain_complex(const SimplicialComplex& k, const Field& f) {
    ChainComplex c;
    c.field = f;
    for (int q = 0; q <= k.max_dim(); ++q) {
        c.dims[-q] = k.count(q);
        auto& lab = c.labels[-q];
        for (const auto& s : k.simplices(q)) lab.push_back(label_of(s));
        if (q < k.max_dim()) c.d[-q] = boundary_matrix(k, q + 1, f).transpose();
    }
    return c;
}

std::size_t betti(const SimplicialComplex& k, int p, const Field& f) {
    if (p < 0 || p > k.max_dim()) return 0;
    std::size_t n = k.count(p);
    std::size_t r_in = p > 0 ? rank(boundary_matrix(k, p, f)) : 0;
    std::size_t r_out = p < k.max_dim() ? rank(boundary_matrix(k, p + 1, f)) : 0;
    return n - r_in - r_out;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& k, const Field& f) {
    std::vector<std::size_t> ranks(static_cast<std::size_t>(k.max_dim() + 2), 0);
    for (int p = 1; p <= k.max_dim(); ++p) ranks[static_cast<std::size_t>(p)] = rank(boundary_matrix(k, p, f));
    std::vector<std::size_t> b;
    for (int p = 0; p <= k.max_dim(); ++p)
        b.push_back(k.count(p) - ranks[static_cast<std::size_t>(p)] - ranks[static_cast<std::size_t>(p + 1)]);
    return b;
}

Coproduct aw_diagonal(const SimplicialComplex& k, const Field& f) {
    Coproduct delta;
    std::vector<std::size_t> offset(static_cast<std::size_t>(k.max_dim() + 2), 0);
    for (int p = 0; p <= k.max_dim(); ++p) offset[static_cast<std::size_t>(p + 1)] = offset[static_cast<std::size_t>(p)] + k.count(p);
    delta.terms.resize(k.size());
    for (int p = 0; p <= k.max_dim(); ++p)
        for (std::size_t j = 0; j < k.count(p); ++j) {
            const Simplex& s = k.simplex(p, j);
            auto& out = delta.terms[offset[static_cast<std::size_t>(p)] + j];
            for (int i = 0; i <= p; ++i) {
                Simplex front(s.begin(), s.begin() + i + 1), back(s.begin() + i, s.end());
                out.push_back({static_cast<Index>(offset[static_cast<std::size_t>(i)] + *k.index_of(front)),
                               static_cast<Index>(offset[static_cast<std::size_t>(p - i)] + *k.index_of(back)), f.one()});
            }
        }
    return delta;
}

namespace {

using Triple = std::tuple<Index, Index, Index>;

void accumulate(std::map<Triple, Scalar>& acc, const Triple& key, const Scalar& v) {
    auto& slot = acc[key];
    slot += v;
    if (slot.is_zero()) acc.erase(key);
}

}  // namespace

bool is_coassociative(const Coproduct& delta, const Field& f) {
    (void)f;
    for (const auto& terms : delta.terms) {
        std::map<Triple, Scalar> acc;
        for (const auto& t : terms) {
            for (const auto& u : delta.terms.at(t.left)) accumulate(acc, {u.left, u.right, t.right}, t.coef * u.coef);
            for (const auto& u : delta.terms.at(t.right)) accumulate(acc, {t.left, u.left, u.right}, -(t.coef * u.coef));
        }
        if (!acc.empty()) return false;
    }
    return true;
}

bool is_chain_map(const Coproduct& delta, const ChainComplex& c) {
    SparseMatrix dtot = c.total_differential();
    std::vector<int> deg(c.total_dim());
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = c.degree_of(i);
    for (std::size_t m = 0; m < delta.terms.size(); ++m) {
        std::map<std::pair<Index, Index>, Scalar> acc;
        auto add = [&](Index a, Index b, const Scalar& v) {
            auto& slot = acc[{a, b}];
            slot += v;
            if (slot.is_zero()) acc.erase({a, b});
        };
        for (const auto& e : dtot.column(m))
            for (const auto& t : delta.terms.at(e.idx)) add(t.left, t.right, e.val * t.coef);
        for (const auto& t : delta.terms[m]) {
            for (const auto& e : dtot.column(t.left)) add(e.idx, t.right, -(e.val * t.coef));
            Scalar sign = deg[t.left] % 2 == 0 ? Scalar(1) : Scalar(-1);
            for (const auto& e : dtot.column(t.right)) add(t.left, e.idx, -(sign * e.val * t.coef));
        }
        if (!acc.empty()) return false;
    }
    return true;
}

bool is_counital_aw(const SimplicialComplex& k, const Coproduct& delta, const Field& f) {
    // epsilon is 1 on vertices, which occupy global indices [0, count(0)).
    const Index nv = static_cast<Index>(k.count(0));
    for (std::size_t m = 0; m < delta.terms.size(); ++m) {
        Scalar left, right;
        for (const auto& t : delta.terms[m]) {
            if (t.left < nv && t.right == m) left += t.coef;
            if (t.right < nv && t.left == m) right += t.coef;
        }
        if (f.coerce(left) != f.one() || f.coerce(right) != f.one()) return false;
    }
    return true;
}

CellularDGC wedge_of_spheres(const std::vector<int>& sphere_dims, const Field& f) {
    CellularDGC out;
    ChainComplex& c = out.chains;
    c.field = f;
    std::vector<int> dims = sphere_dims;
    std::sort(dims.begin(), dims.end());
    c.dims[0] = 1;
    c.labels[0] = {"pt"};
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw std::invalid_argument("wedge summands must have dimension >= 1");
        c.dims[dims[i]] += 1;
        c.labels[dims[i]].push_back("e" + std::to_string(dims[i]) + "_" + std::to_string(c.labels[dims[i]].size()));
    }
    out.diagonal.terms.resize(c.total_dim());
    out.diagonal.terms[0].push_back({0, 0, f.one()});
    for (std::size_t g = 1; g < c.total_dim(); ++g) {
        out.diagonal.terms[g].push_back({0, static_cast<Index>(g), f.one()});
        out.diagonal.terms[g].push_back({static_cast<Index>(g), 0, f.one()});
    }
    return out;
}

CupProduct::CupProduct(const SimplicialComplex& k, const Field& f) : k_(&k), field_(f) {
    int top = k.max_dim();
    front_.resize(static_cast<std::size_t>(top + 1));
    back_.resize(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d) {
        front_[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(d + 1));
        back_[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(d + 1));
        for (int p = 0; p <= d; ++p) {
            auto& fr = front_[static_cast<std::size_t>(d)][static_cast<std::size_t>(p)];
            auto& bk = back_[static_cast<std::size_t>(d)][static_cast<std::size_t>(p)];
            fr.resize(k.count(d));
            bk.resize(k.count(d));
            for (std::size_t i = 0; i < k.count(d); ++i) {
                const Simplex& s = k.simplex(d, i);
                fr[i] = static_cast<std::uint32_t>(*k.index_of(Simplex(s.begin(), s.begin() + p + 1)));
                bk[i] = static_cast<std::uint32_t>(*k.index_of(Simplex(s.begin() + p, s.end())));
            }
        }
    }
    for (int q = 0; q < top; ++q) coboundary_.push_back(boundary_matrix(k, q + 1, f).transpose());
}

Cochain CupProduct::cup(const Cochain& a, const Cochain& b) const {
    const int d = a.degree + b.degree;
    Cochain out{d, {}};
    if (a.degree < 0 || b.degree < 0) throw std::invalid_argument("cup: negative degree");
    if (d > k_->max_dim() || a.values.empty() || b.values.empty()) return out;
    std::vector<Scalar> av(k_->count(a.degree)), bv(k_->count(b.degree));
    std::vector<char> an(av.size(), 0), bn(bv.size(), 0);
    for (const auto& e : a.values) av.at(e.idx) = e.val, an[e.idx] = 1;
    for (const auto& e : b.values) bv.at(e.idx) = e.val, bn[e.idx] = 1;
    const auto& fr = front_[static_cast<std::size_t>(d)][static_cast<std::size_t>(a.degree)];
    const auto& bk = back_[static_cast<std::size_t>(d)][static_cast<std::size_t>(a.degree)];
    for (std::size_t i = 0; i < k_->count(d); ++i) {
        if (!an[fr[i]] || !bn[bk[i]]) continue;
        Scalar v = field_.coerce(av[fr[i]] * bv[bk[i]]);
        if (!v.is_zero()) out.values.push_back({static_cast<Index>(i), std::move(v)});
    }
    return out;
}

Cochain CupProduct::coboundary(const Cochain& a) const {
    if (a.degree < 0 || a.degree >= k_->max_dim()) return Cochain{a.degree + 1, {}};
    return Cochain{a.degree + 1, coboundary_[static_cast<std::size_t>(a.degree)].apply(a.values)};
}

Cochain CupProduct::unit() const {
    Cochain u{0, {}};
    for (std::size_t i = 0; i < k_->count(0); ++i) u.values.push_back({static_cast<Index>(i), field_.one()});
    return u;
}

std::size_t CupProduct::global_offset(int q) const {
    std::size_t n = 0;
    for (int r = k_->max_dim(); r > q; --r) n += k_->count(r);
    return n;
}

Cochain CupProduct::to_cochain(const SparseVec& global, int q) const {
    Cochain c{q, {}};
    std::size_t lo = global_offset(q), hi = lo + k_->count(q);
    for (const auto& e : global)
        if (e.idx >= lo && e.idx < hi) c.values.push_back({static_cast<Index>(e.idx - lo), e.val});
    return c;
}

SparseVec CupProduct::to_global(const Cochain& c) const {
    SparseVec v;
    std::size_t lo = global_offset(c.degree);
    for (const auto& e : c.values) v.push_back({static_cast<Index>(lo + e.idx), e.val});
    return v;
}

SparseVec CupProduct::cup_global(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    if (a.empty() || b.empty()) return out;
    for (int p = 0; p <= k_->max_dim(); ++p) {
        Cochain ap = to_cochain(a, p);
        if (ap.values.empty()) continue;
        for (int q = 0; p + q <= k_->max_dim(); ++q) {
            Cochain bq = to_cochain(b, q);
            if (bq.values.empty()) continue;
            out = add(out, to_global(cup(ap, bq)));
        }
    }
    return out;
}

}  // namespace ainf
