#include "ainf/linalg.hpp"

#include <stdexcept>

namespace ainf {

ColumnReduction::ColumnReduction(const SparseMatrix& m, bool track_v)
    : m_(m), r_(m.cols()), pivot_of_row_(m.rows(), -1), track_v_(track_v) {
    if (track_v_) v_.resize(m.cols());
    const Field& f = m.field();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        SparseVec col = m.column(j);
        SparseVec vj;
        if (track_v_) vj = unit_vector(static_cast<Index>(j), f);
        while (!col.empty()) {
            Index low = col.back().idx;
            std::int64_t k = pivot_of_row_[low];
            if (k < 0) break;
            Scalar factor = -(col.back().val / r_[k].back().val);
            axpy(col, factor, r_[k]);
            if (track_v_) axpy(vj, factor, v_[k]);
        }
        if (!col.empty()) {
            pivot_of_row_[col.back().idx] = static_cast<std::int64_t>(j);
            ++rank_;
        }
        r_[j] = std::move(col);
        if (track_v_) v_[j] = std::move(vj);
    }
}

std::optional<std::size_t> ColumnReduction::pivot_column(Index r) const {
    if (r >= pivot_of_row_.size() || pivot_of_row_[r] < 0) return std::nullopt;
    return static_cast<std::size_t>(pivot_of_row_[r]);
}

std::optional<SparseVec> ColumnReduction::solve(const SparseVec& b_in) const {
    if (!track_v_) throw std::logic_error("solve needs the V matrix");
    SparseVec b = in_field(b_in, m_.field());
    SparseVec x;
    while (!b.empty()) {
        Index low = b.back().idx;
        if (low >= pivot_of_row_.size() || pivot_of_row_[low] < 0) return std::nullopt;
        std::size_t k = static_cast<std::size_t>(pivot_of_row_[low]);
        Scalar factor = b.back().val / r_[k].back().val;
        axpy(b, -factor, r_[k]);
        axpy(x, factor, v_[k]);
    }
    return x;
}

bool ColumnReduction::in_column_space(const SparseVec& b_in) const {
    SparseVec b = in_field(b_in, m_.field());
    while (!b.empty()) {
        Index low = b.back().idx;
        if (low >= pivot_of_row_.size() || pivot_of_row_[low] < 0) return false;
        const SparseVec& piv = r_[static_cast<std::size_t>(pivot_of_row_[low])];
        axpy(b, -(b.back().val / piv.back().val), piv);
    }
    return true;
}

Subspace::Subspace(SparseMatrix basis) : basis_(std::move(basis)) {
    echelon_.emplace(basis_, true);
    if (echelon_->rank() != basis_.cols()) throw std::invalid_argument("subspace basis columns are dependent");
}

Subspace Subspace::spanned_by(const SparseMatrix& generators) { return image_basis(generators); }

Subspace Subspace::zero(std::size_t ambient, Field f) { return Subspace(SparseMatrix(ambient, 0, f)); }

Subspace Subspace::full(std::size_t ambient, Field f) { return Subspace(SparseMatrix::identity(ambient, f)); }

bool Subspace::contains(const SparseVec& v) const {
    if (!v.empty() && v.back().idx >= ambient_dim()) throw std::invalid_argument("vector longer than ambient space");
    return echelon_->in_column_space(v);
}

std::optional<SparseVec> Subspace::coordinates(const SparseVec& v) const {
    if (!v.empty() && v.back().idx >= ambient_dim()) throw std::invalid_argument("vector longer than ambient space");
    return echelon_->solve(v);
}

std::size_t rank(const SparseMatrix& m) { return ColumnReduction(m, false).rank(); }

Subspace kernel_basis(const SparseMatrix& m) {
    ColumnReduction red(m, true);
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (red.reduced(j).empty()) cols.push_back(red.v(j));
    return Subspace(SparseMatrix::from_columns(m.cols(), std::move(cols), m.field()));
}

Subspace image_basis(const SparseMatrix& m) {
    ColumnReduction red(m, false);
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!red.reduced(j).empty()) cols.push_back(red.reduced(j));
    return Subspace(SparseMatrix::from_columns(m.rows(), std::move(cols), m.field()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient dimensions differ");
    if (a.field() != b.field()) throw FieldMismatch("intersect: fields differ");
    // (x, y) with A x - B y = 0 gives A x in both; x determines the vector injectively.
    SparseMatrix stacked = a.basis().hconcat(b.basis().scaled(a.field().from_int(-1)));
    Subspace ker = kernel_basis(stacked);
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        SparseVec x;
        for (const auto& e : ker.basis().column(k))
            if (e.idx < a.dim()) x.push_back(e);
        cols.push_back(a.basis().apply(x));
    }
    return Subspace(SparseMatrix::from_columns(a.ambient_dim(), std::move(cols), a.field()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient dimensions differ");
    return image_basis(a.basis().hconcat(b.basis()));
}

SparseMatrix restrict_map(const SparseMatrix& m, const Subspace& domain) {
    if (m.cols() != domain.ambient_dim()) throw std::invalid_argument("restrict_map: dimension mismatch");
    return m * domain.basis();
}

bool membership(const SparseVec& v, const Subspace& s) { return s.contains(v); }

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) { return ColumnReduction(m, true).solve(b); }

bool same_span(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    for (std::size_t j = 0; j < a.dim(); ++j)
        if (!b.contains(a.basis().column(j))) return false;
    for (std::size_t j = 0; j < b.dim(); ++j)
        if (!a.contains(b.basis().column(j))) return false;
    return true;
}

}  // namespace ainf
