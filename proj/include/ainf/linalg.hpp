#pragma once

#include <optional>
#include <vector>

#include "ainf/sparse.hpp"

namespace ainf {

// Left-to-right column reduction with a pivot table (low = largest row index).
// Keeps R = M V with V upper unitriangular; the columns of R with a pivot are
// independent and span the column space.
class ColumnReduction {
public:
    explicit ColumnReduction(const SparseMatrix& m, bool track_v = true);

    std::size_t rank() const { return rank_; }
    const SparseMatrix& source() const { return m_; }
    const SparseVec& reduced(std::size_t j) const { return r_[j]; }
    const SparseVec& v(std::size_t j) const { return v_.at(j); }
    // Column whose reduced form has its low at row r.
    std::optional<std::size_t> pivot_column(Index r) const;

    // x with M x = b, if one exists.
    std::optional<SparseVec> solve(const SparseVec& b) const;
    bool in_column_space(const SparseVec& b) const;

private:
    SparseMatrix m_;
    std::vector<SparseVec> r_;
    std::vector<SparseVec> v_;
    std::vector<std::int64_t> pivot_of_row_;
    std::size_t rank_ = 0;
    bool track_v_;
};

// A subspace of F^n given by independent columns.
class Subspace {
public:
    Subspace() = default;
    // Throws if the columns are dependent.
    explicit Subspace(SparseMatrix basis);
    static Subspace spanned_by(const SparseMatrix& generators);
    static Subspace zero(std::size_t ambient, Field f);
    static Subspace full(std::size_t ambient, Field f);

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const SparseMatrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }

    bool contains(const SparseVec& v) const;
    // Coordinates of v in the basis, when v lies in the span.
    std::optional<SparseVec> coordinates(const SparseVec& v) const;

private:
    SparseMatrix basis_;
    std::optional<ColumnReduction> echelon_;
};

std::size_t rank(const SparseMatrix& m);
Subspace kernel_basis(const SparseMatrix& m);
Subspace image_basis(const SparseMatrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
// Matrix of m on the basis of domain: m * basis (codomain coordinates unchanged).
SparseMatrix restrict_map(const SparseMatrix& m, const Subspace& domain);
bool membership(const SparseVec& v, const Subspace& s);
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);
bool same_span(const Subspace& a, const Subspace& b);

}  // namespace ainf
