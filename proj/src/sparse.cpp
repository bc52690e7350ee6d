#include "ainf/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace ainf {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero() || x.empty()) return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].idx < x[j].idx)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].idx < y[i].idx) {
            out.push_back({x[j].idx, a * x[j].val});
            ++j;
        } else {
            Scalar s = y[i].val + a * x[j].val;
            if (!s.is_zero()) out.push_back({x[j].idx, std::move(s)});
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
    SparseVec out;
    if (a.is_zero()) return out;
    out.reserve(x.size());
    for (const auto& e : x) out.push_back({e.idx, e.val * a});
    return out;
}

SparseVec add(const SparseVec& x, const SparseVec& y) {
    SparseVec r = x;
    axpy(r, Scalar(1), y);
    return r;
}

SparseVec subtract(const SparseVec& x, const SparseVec& y) {
    SparseVec r = x;
    axpy(r, Scalar(-1), y);
    return r;
}

Scalar coefficient(const SparseVec& x, Index i) {
    auto it = std::lower_bound(x.begin(), x.end(), i, [](const Entry& e, Index k) { return e.idx < k; });
    if (it != x.end() && it->idx == i) return it->val;
    return Scalar();
}

Scalar dot(const SparseVec& x, const SparseVec& y) {
    Scalar s;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].idx < y[j].idx) ++i;
        else if (y[j].idx < x[i].idx) ++j;
        else s += x[i++].val * y[j++].val;
    }
    return s;
}

SparseVec unit_vector(Index i, const Field& f) { return SparseVec{{i, f.one()}}; }

SparseVec canonical(std::vector<Entry> entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    SparseVec out;
    out.reserve(entries.size());
    for (auto& e : entries) {
        if (!out.empty() && out.back().idx == e.idx) out.back().val += e.val;
        else out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Entry& e) { return e.val.is_zero(); }), out.end());
    return out;
}

SparseVec from_dense(const std::vector<Scalar>& d) {
    SparseVec v;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) v.push_back({static_cast<Index>(i), d[i]});
    return v;
}

std::vector<Scalar> to_dense(const SparseVec& v, std::size_t n, const Field& f) {
    std::vector<Scalar> d(n, f.zero());
    for (const auto& e : v) {
        if (e.idx >= n) throw std::out_of_range("sparse index beyond dense length");
        d[e.idx] = f.coerce(e.val);
    }
    return d;
}

SparseVec in_field(const SparseVec& v, const Field& f) {
    SparseVec out;
    out.reserve(v.size());
    for (const auto& e : v) {
        Scalar s = f.coerce(e.val);
        if (!s.is_zero()) out.push_back({e.idx, std::move(s)});
    }
    return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Field f) : rows_(rows), field_(f), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n, Field f) {
    SparseMatrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i] = unit_vector(static_cast<Index>(i), f);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows, std::size_t ncols, Field f) {
    SparseMatrix m(rows.size(), ncols, f);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ncols) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t c = 0; c < ncols; ++c) {
            Scalar s = f.coerce(rows[r][c]);
            if (!s.is_zero()) m.cols_[c].push_back({static_cast<Index>(r), s});
        }
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVec> cols, Field f) {
    SparseMatrix m(rows, 0, f);
    m.cols_ = std::move(cols);
    for (auto& c : m.cols_) {
        c = in_field(c, f);
        if (!c.empty() && c.back().idx >= rows) throw std::out_of_range("column entry beyond row count");
    }
    return m;
}

void SparseMatrix::set_column(std::size_t j, SparseVec v) {
    v = in_field(v, field_);
    if (!v.empty() && v.back().idx >= rows_) throw std::out_of_range("column entry beyond row count");
    cols_.at(j) = std::move(v);
}

void SparseMatrix::add_entry(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_.size()) throw std::out_of_range("matrix entry out of range");
    axpy(cols_[c], field_.coerce(v), unit_vector(static_cast<Index>(r), field_));
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
    Scalar s = coefficient(cols_.at(c), static_cast<Index>(r));
    return field_.coerce(s);
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_.size(), rows_, field_);
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& e : cols_[c]) t.cols_[e.idx].push_back({static_cast<Index>(c), e.val});
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    std::vector<Entry> acc;
    for (const auto& e : v) {
        if (e.idx >= cols_.size()) throw std::out_of_range("vector longer than matrix width");
        for (const auto& f : cols_[e.idx]) acc.push_back({f.idx, f.val * e.val});
    }
    return in_field(canonical(std::move(acc)), field_);
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols() != o.rows()) throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix m(rows_, o.cols(), field_);
    for (std::size_t j = 0; j < o.cols(); ++j) m.cols_[j] = apply(o.cols_[j]);
    return m;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw std::invalid_argument("matrix sum shape mismatch");
    SparseMatrix m(*this);
    for (std::size_t j = 0; j < cols(); ++j) axpy(m.cols_[j], field_.one(), o.cols_[j]);
    return m;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(field_.from_int(-1)); }

SparseMatrix SparseMatrix::scaled(const Scalar& a) const {
    SparseMatrix m(rows_, cols(), field_);
    for (std::size_t j = 0; j < cols(); ++j) m.cols_[j] = ainf::scaled(cols_[j], field_.coerce(a));
    return m;
}

SparseMatrix SparseMatrix::hconcat(const SparseMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat row mismatch");
    SparseMatrix m(*this);
    m.cols_.insert(m.cols_.end(), o.cols_.begin(), o.cols_.end());
    return m;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& which) const {
    SparseMatrix m(rows_, which.size(), field_);
    for (std::size_t k = 0; k < which.size(); ++k) m.cols_[k] = cols_.at(which[k]);
    return m;
}

bool SparseMatrix::is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
}

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
    std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols(), field_.zero()));
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& e : cols_[c]) d[e.idx][c] = e.val;
    return d;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& x = a.cols_[j];
        const auto& y = b.cols_[j];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k].idx != y[k].idx || x[k].val != y[k].val) return false;
    }
    return true;
}

}  // namespace ainf
