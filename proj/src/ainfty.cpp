#include "ainf/ainfty.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ainf {

void accumulate(Tensor& t, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t.find(w);
    if (it == t.end()) {
        t.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

void accumulate(Tensor& t, const Tensor& other, const Scalar& c) {
    for (const auto& [w, v] : other) accumulate(t, w, v * c);
}

Tensor scaled(const Tensor& t, const Scalar& c) {
    Tensor out;
    accumulate(out, t, c);
    return out;
}

int GradedBasis::word_degree(const Word& w) const {
    int d = 0;
    for (auto i : w) d += degrees.at(i);
    return d;
}

std::size_t GradedBasis::dim(int p) const {
    return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), p));
}

std::vector<std::uint32_t> GradedBasis::indices_of_degree(int p) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (degrees[i] == p) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

std::vector<int> GradedBasis::distinct_degrees() const {
    std::set<int> s(degrees.begin(), degrees.end());
    return {s.begin(), s.end()};
}

bool GradedBasis::is_sorted() const { return std::is_sorted(degrees.begin(), degrees.end()); }

namespace {

const Tensor& empty_tensor() {
    static const Tensor t;
    return t;
}

Scalar sign_of(long long exponent) { return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1); }

int prefix_degree(const GradedBasis& b, const Word& w, std::size_t end) {
    int d = 0;
    for (std::size_t i = 0; i < end; ++i) d += b.degrees[w[i]];
    return d;
}

// (1^pos (x) g (x) 1^rest) applied to t, where g sends a basis element to a tensor.
template <class Op>
Tensor apply_at(const GradedBasis& b, const Tensor& t, std::size_t pos, int op_degree, Op&& g) {
    Tensor out;
    for (const auto& [w, c] : t) {
        const Tensor& img = g(w[pos]);
        if (img.empty()) continue;
        Scalar sgn = sign_of(static_cast<long long>(op_degree) * prefix_degree(b, w, pos));
        for (const auto& [u, cu] : img) {
            Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
            nw.insert(nw.end(), u.begin(), u.end());
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end());
            accumulate(out, nw, sgn * c * cu);
        }
    }
    return out;
}

// (g_1 (x) ... (x) g_l)(x_1 (x) ... (x) x_l) with Koszul signs.
Tensor apply_tensor_of_maps(const GradedBasis& b, const Word& w, const Scalar& coef,
                            const std::vector<std::function<const Tensor&(std::uint32_t)>>& maps,
                            const std::vector<int>& map_degrees) {
    Tensor cur;
    cur.emplace(Word{}, coef);
    int acc = 0;
    for (std::size_t l = 0; l < maps.size(); ++l) {
        const Tensor& img = maps[l](w[l]);
        Scalar sgn = sign_of(static_cast<long long>(map_degrees[l]) * acc);
        Tensor next;
        for (const auto& [pre, c] : cur)
            for (const auto& [u, cu] : img) {
                Word nw = pre;
                nw.insert(nw.end(), u.begin(), u.end());
                accumulate(next, nw, sgn * c * cu);
            }
        cur = std::move(next);
        if (cur.empty()) break;
        acc += b.degrees[w[l]];
    }
    return cur;
}

void compositions(int i, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (i == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = 1; first <= i; ++first) {
        cur.push_back(first);
        compositions(i - first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

const Tensor& AInftyCoalgebra::op(int n, std::size_t x) const {
    auto it = ops.find(n);
    if (it == ops.end() || x >= it->second.size()) return empty_tensor();
    return it->second[x];
}

void AInftyCoalgebra::set_op(int n, std::size_t x, Tensor t) {
    auto& v = ops[n];
    if (v.size() < space.size()) v.resize(space.size());
    v.at(x) = std::move(t);
}

bool AInftyCoalgebra::is_zero(int n) const {
    auto it = ops.find(n);
    if (it == ops.end()) return true;
    return std::all_of(it->second.begin(), it->second.end(), [](const Tensor& t) { return t.empty(); });
}

bool AInftyCoalgebra::is_minimal() const { return is_zero(1); }

bool AInftyCoalgebra::degrees_consistent() const {
    for (const auto& [n, v] : ops)
        for (std::size_t x = 0; x < v.size(); ++x)
            for (const auto& [w, c] : v[x]) {
                if (static_cast<int>(w.size()) != n) return false;
                for (auto i : w)
                    if (i >= space.size()) return false;
                if (space.word_degree(w) != space.degrees[x] + n - 2) return false;
            }
    return true;
}

SparseVec AInftyAlgebra::op(int n, const Word& w) const {
    auto it = ops.find(n);
    if (it == ops.end()) return {};
    auto jt = it->second.find(w);
    return jt == it->second.end() ? SparseVec{} : jt->second;
}

void AInftyAlgebra::set_op(int n, const Word& w, SparseVec v) {
    if (v.empty()) ops[n].erase(w);
    else ops[n][w] = std::move(v);
}

bool AInftyAlgebra::is_zero(int n) const {
    auto it = ops.find(n);
    return it == ops.end() || it->second.empty();
}

bool AInftyAlgebra::is_minimal() const { return is_zero(1); }

bool AInftyAlgebra::degrees_consistent() const {
    for (const auto& [n, m] : ops)
        for (const auto& [w, v] : m) {
            if (static_cast<int>(w.size()) != n) return false;
            int target = space.word_degree(w) + 2 - n;
            for (const auto& e : v)
                if (e.idx >= space.size() || space.degrees[e.idx] != target) return false;
        }
    return true;
}

const Tensor& AInftyMorphism::component(int k, std::size_t x) const {
    auto it = components.find(k);
    if (it == components.end() || x >= it->second.size()) return empty_tensor();
    return it->second[x];
}

AInftyMorphism AInftyMorphism::identity(const GradedBasis& space) {
    AInftyMorphism f;
    auto& f1 = f.components[1];
    f1.resize(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) f1[x].emplace(Word{static_cast<std::uint32_t>(x)}, space.field.one());
    return f;
}

Tensor stasheff_defect(const AInftyCoalgebra& s, int n, std::size_t x) {
    Tensor total;
    for (int i = 1; i <= n; ++i) {
        int m = n - i + 1;
        if (s.is_zero(i) || s.is_zero(m)) continue;
        const Tensor& inner = s.op(m, x);
        if (inner.empty()) continue;
        for (int j = 0; j <= n - i; ++j) {
            std::size_t pos = static_cast<std::size_t>(n - i - j);
            Tensor t = apply_at(s.space, inner, pos, i - 2, [&](std::uint32_t y) -> const Tensor& { return s.op(i, y); });
            accumulate(total, t, sign_of(i + j + i * j));
        }
    }
    return total;
}

IdentityReport verify_stasheff(const AInftyCoalgebra& s, int n_max) {
    IdentityReport rep;
    for (int n = 1; n <= n_max; ++n) {
        bool bad = false;
        for (std::size_t x = 0; x < s.space.size() && !bad; ++x) bad = !stasheff_defect(s, n, x).empty();
        if (bad) {
            rep.ok = false;
            rep.failing.push_back(n);
        }
    }
    return rep;
}

IdentityReport verify_stasheff(const AInftyAlgebra& s, int n_max) {
    IdentityReport rep;
    const auto& b = s.space;
    const std::size_t dim = b.size();
    for (int n = 1; n <= n_max; ++n) {
        bool bad = false;
        Word w(static_cast<std::size_t>(n), 0);
        // enumerate all words of length n
        while (!bad) {
            SparseVec total;
            for (int sarity = 1; sarity <= n && !bad; ++sarity) {
                if (s.is_zero(sarity)) continue;
                for (int r = 0; r + sarity <= n; ++r) {
                    int t = n - r - sarity;
                    int outer = r + 1 + t;
                    if (s.is_zero(outer)) continue;
                    Word mid(w.begin() + r, w.begin() + r + sarity);
                    SparseVec inner = s.op(sarity, mid);
                    if (inner.empty()) continue;
                    Scalar sgn = sign_of(static_cast<long long>(sarity) * prefix_degree(b, w, static_cast<std::size_t>(r)) + r + sarity * t);
                    for (const auto& e : inner) {
                        Word ow(w.begin(), w.begin() + r);
                        ow.push_back(e.idx);
                        ow.insert(ow.end(), w.begin() + r + sarity, w.end());
                        axpy(total, sgn * e.val, s.op(outer, ow));
                    }
                }
            }
            if (!in_field(total, b.field).empty()) bad = true;
            // next word
            std::size_t pos = 0;
            while (pos < w.size() && ++w[pos] == dim) w[pos++] = 0;
            if (pos == w.size() || dim == 0) break;
        }
        if (bad) {
            rep.ok = false;
            rep.failing.push_back(n);
        }
    }
    return rep;
}

IdentityReport verify_morphism(const AInftyMorphism& f, const AInftyCoalgebra& src, const AInftyCoalgebra& tgt, int i_max) {
    IdentityReport rep;
    const auto& b = src.space;
    if (b.degrees != tgt.space.degrees) throw PreconditionError("verify_morphism: graded spaces differ");
    for (int i = 1; i <= i_max; ++i) {
        bool bad = false;
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(i, cur, comps);
        for (std::size_t x = 0; x < b.size() && !bad; ++x) {
            Tensor lhs;
            for (int q = 1; q <= i; ++q) {
                if (tgt.is_zero(q)) continue;
                for (int p = 0; p <= i - q; ++p) {
                    int k = i - q - p;
                    const Tensor& fk = f.component(p + k + 1, x);
                    if (fk.empty()) continue;
                    Tensor t = apply_at(b, fk, static_cast<std::size_t>(p), q - 2, [&](std::uint32_t y) -> const Tensor& { return tgt.op(q, y); });
                    accumulate(lhs, t, sign_of(p + k * q));
                }
            }
            Tensor rhs;
            for (const auto& comp : comps) {
                int l = static_cast<int>(comp.size());
                const Tensor& dl = src.op(l, x);
                if (dl.empty()) continue;
                long long e = 0;
                for (int a = 0; a < l; ++a)
                    for (int m = a + 1; m < l; ++m) e += static_cast<long long>(comp[m]) * (comp[a] - 1);
                std::vector<std::function<const Tensor&(std::uint32_t)>> maps;
                std::vector<int> mdeg;
                for (int k : comp) {
                    maps.push_back([&f, k](std::uint32_t y) -> const Tensor& { return f.component(k, y); });
                    mdeg.push_back(k - 1);
                }
                for (const auto& [w, c] : dl) accumulate(rhs, apply_tensor_of_maps(b, w, c, maps, mdeg), sign_of(e));
            }
            accumulate(lhs, rhs, Scalar(-1));
            for (auto it = lhs.begin(); it != lhs.end();) {
                if (b.field.coerce(it->second).is_zero()) it = lhs.erase(it);
                else ++it;
            }
            bad = !lhs.empty();
        }
        if (bad) {
            rep.ok = false;
            rep.failing.push_back(i);
        }
    }
    return rep;
}

const Tensor& CobarComplex::component(int n, std::size_t x) const {
    auto it = d.find(n);
    if (it == d.end() || x >= it->second.size()) return empty_tensor();
    return it->second[x];
}

namespace {

Scalar desuspension_sign(const GradedBasis& b, const Word& w) {
    long long e = 0;
    const long long n = static_cast<long long>(w.size());
    for (long long l = 0; l < n; ++l) e += (n - 1 - l) * b.degrees[w[static_cast<std::size_t>(l)]];
    return sign_of(e);
}

}  // namespace

CobarComplex cobar(const AInftyCoalgebra& s, int word_bound) {
    CobarComplex cb;
    cb.word_bound = word_bound;
    cb.generators.field = s.space.field;
    for (std::size_t x = 0; x < s.space.size(); ++x) {
        cb.generators.degrees.push_back(s.space.degrees[x] - 1);
        cb.generators.labels.push_back("s^-1 " + (x < s.space.labels.size() ? s.space.labels[x] : std::to_string(x)));
    }
    for (int n = 1; n <= word_bound; ++n) {
        if (s.is_zero(n)) continue;
        auto& dn = cb.d[n];
        dn.resize(s.space.size());
        for (std::size_t x = 0; x < s.space.size(); ++x)
            for (const auto& [w, c] : s.op(n, x)) accumulate(dn[x], w, -(desuspension_sign(s.space, w) * c));
    }
    return cb;
}

AInftyCoalgebra structure_from_cobar(const CobarComplex& cb, const GradedBasis& space) {
    AInftyCoalgebra s;
    s.space = space;
    s.arity_bound = cb.word_bound;
    for (const auto& [n, v] : cb.d)
        for (std::size_t x = 0; x < v.size(); ++x) {
            Tensor t;
            for (const auto& [w, c] : v[x]) accumulate(t, w, -(desuspension_sign(space, w) * c));
            s.set_op(n, x, std::move(t));
        }
    return s;
}

Tensor cobar_d_squared(const CobarComplex& cb, int word_length, std::size_t x) {
    Tensor total;
    for (const auto& [bl, vb] : cb.d) {
        int a = word_length - bl + 1;
        if (a < 1 || !cb.d.count(a) || x >= vb.size()) continue;
        const Tensor& first = vb[x];
        if (first.empty()) continue;
        const auto& va = cb.d.at(a);
        for (int pos = 0; pos < bl; ++pos) {
            Tensor t = apply_at(cb.generators, first, static_cast<std::size_t>(pos), -1,
                                [&](std::uint32_t y) -> const Tensor& { return y < va.size() ? va[y] : empty_tensor(); });
            accumulate(total, t, Scalar(1));
        }
    }
    return total;
}

IdentityReport cobar_d_squared_check(const CobarComplex& cb) {
    IdentityReport rep;
    for (int l = 1; l <= cb.word_bound; ++l) {
        bool bad = false;
        for (std::size_t x = 0; x < cb.generators.size() && !bad; ++x) bad = !cobar_d_squared(cb, l, x).empty();
        if (bad) {
            rep.ok = false;
            rep.failing.push_back(l);
        }
    }
    return rep;
}

AInftyCoalgebra transport_structure(const AInftyCoalgebra& s, const AInftyMorphism& g, int n_max) {
    const auto& b = s.space;
    const Field& fld = b.field;
    const std::size_t dim = b.size();
    // f_(1) as a matrix and its inverse, degree by degree
    SparseMatrix f1(dim, dim, fld);
    for (std::size_t x = 0; x < dim; ++x)
        for (const auto& [w, c] : g.component(1, x)) {
            if (w.size() != 1) throw PreconditionError("transport: f_(1) has words of wrong length");
            if (b.degrees[w[0]] != b.degrees[x]) throw PreconditionError("transport: f_(1) does not preserve degree");
            f1.add_entry(w[0], x, c);
        }
    ColumnReduction red(f1, true);
    if (red.rank() != dim) throw PreconditionError("transport: f_(1) is singular");
    std::vector<SparseVec> finv(dim);
    for (std::size_t y = 0; y < dim; ++y) finv[y] = *red.solve(unit_vector(static_cast<Index>(y), fld));

    AInftyCoalgebra out;
    out.space = b;
    out.arity_bound = n_max;
    for (int i = 1; i <= n_max; ++i) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(i, cur, comps);
        // T(x) = RHS(x) - (LHS terms without Delta'_i)(x); then Delta'_i = T o f_(1)^{-1}
        std::vector<Tensor> t(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            Tensor rhs;
            for (const auto& comp : comps) {
                int l = static_cast<int>(comp.size());
                const Tensor& dl = s.op(l, x);
                if (dl.empty()) continue;
                long long e = 0;
                for (int a = 0; a < l; ++a)
                    for (int m = a + 1; m < l; ++m) e += static_cast<long long>(comp[m]) * (comp[a] - 1);
                std::vector<std::function<const Tensor&(std::uint32_t)>> maps;
                std::vector<int> mdeg;
                for (int k : comp) {
                    maps.push_back([&g, k](std::uint32_t y) -> const Tensor& { return g.component(k, y); });
                    mdeg.push_back(k - 1);
                }
                for (const auto& [w, c] : dl) accumulate(rhs, apply_tensor_of_maps(b, w, c, maps, mdeg), sign_of(e));
            }
            for (int q = 1; q < i; ++q) {
                if (out.is_zero(q)) continue;
                for (int p = 0; p <= i - q; ++p) {
                    int k = i - q - p;
                    const Tensor& fk = g.component(p + k + 1, x);
                    if (fk.empty()) continue;
                    Tensor term = apply_at(b, fk, static_cast<std::size_t>(p), q - 2, [&](std::uint32_t y) -> const Tensor& { return out.op(q, y); });
                    accumulate(rhs, term, -sign_of(p + k * q));
                }
            }
            t[x] = std::move(rhs);
        }
        bool any = false;
        std::vector<Tensor> di(dim);
        for (std::size_t y = 0; y < dim; ++y) {
            for (const auto& e : finv[y]) accumulate(di[y], t[e.idx], e.val);
            any = any || !di[y].empty();
        }
        if (any)
            for (std::size_t y = 0; y < dim; ++y) out.set_op(i, y, std::move(di[y]));
    }
    return out;
}

std::optional<int> min_nonzero_arity(const AInftyCoalgebra& s) {
    for (int n = 2; n <= s.arity_bound; ++n)
        if (!s.is_zero(n)) return n;
    return std::nullopt;
}

SparseMatrix op_block_matrix(const AInftyCoalgebra& s, int n, int p) {
    auto cols = s.space.indices_of_degree(p);
    std::map<Word, Index> rows;
    std::vector<Word> order;
    std::vector<SparseVec> colvecs;
    for (auto x : cols) {
        std::vector<Entry> col;
        for (const auto& [w, c] : s.op(n, x)) {
            auto it = rows.find(w);
            if (it == rows.end()) {
                it = rows.emplace(w, static_cast<Index>(order.size())).first;
                order.push_back(w);
            }
            col.push_back({it->second, c});
        }
        colvecs.push_back(canonical(std::move(col)));
    }
    return SparseMatrix::from_columns(order.size(), std::move(colvecs), s.space.field);
}

std::size_t dim_ker_op(const AInftyCoalgebra& s, int n, int p) {
    SparseMatrix m = op_block_matrix(s, n, p);
    return m.cols() - rank(m);
}

std::size_t dim_ker_op_total(const AInftyCoalgebra& s, int n) {
    std::size_t total = 0;
    for (int p : s.space.distinct_degrees()) total += dim_ker_op(s, n, p);
    return total;
}

AInftyCoalgebra truncate_to_arity(const AInftyCoalgebra& s, int k) {
    auto kmin = min_nonzero_arity(s);
    if (!kmin) throw PreconditionError("truncate_to_arity: structure has no nonzero operation");
    if (*kmin != k) throw PreconditionError("truncate_to_arity: " + std::to_string(k) + " is not the minimal nonzero arity");
    AInftyCoalgebra out;
    out.space = s.space;
    out.arity_bound = s.arity_bound;
    out.ops[k] = s.ops.at(k);
    return out;
}

AInftyCoalgebra reduced_coalgebra(const AInftyCoalgebra& s) {
    auto zero = s.space.indices_of_degree(0);
    if (zero.size() != 1) throw PreconditionError("reduced_coalgebra: needs exactly one class in degree 0");
    const std::uint32_t unit = zero[0];
    auto shift = [unit](std::uint32_t i) { return i > unit ? i - 1 : i; };
    AInftyCoalgebra out;
    out.arity_bound = s.arity_bound;
    out.space.field = s.space.field;
    for (std::size_t i = 0; i < s.space.size(); ++i) {
        if (i == unit) continue;
        out.space.degrees.push_back(s.space.degrees[i]);
        if (i < s.space.labels.size()) out.space.labels.push_back(s.space.labels[i]);
    }
    for (const auto& [n, v] : s.ops) {
        std::vector<Tensor> op(out.space.size());
        bool any = false;
        for (std::size_t x = 0; x < v.size(); ++x) {
            if (x == unit) continue;
            for (const auto& [w, c] : v[x]) {
                if (std::find(w.begin(), w.end(), unit) != w.end()) continue;
                Word nw;
                for (auto i : w) nw.push_back(shift(i));
                accumulate(op[shift(static_cast<std::uint32_t>(x))], nw, c);
                any = true;
            }
        }
        if (any) out.ops[n] = std::move(op);
    }
    return out;
}

}  // namespace ainf
