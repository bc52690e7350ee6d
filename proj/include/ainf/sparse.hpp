#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ainf/field.hpp"

namespace ainf {

using Index = std::uint32_t;

struct Entry {
    Index idx;
    Scalar val;

    friend bool operator==(const Entry& a, const Entry& b) { return a.idx == b.idx && a.val == b.val; }
};

// Sorted by idx, no zero values.
using SparseVec = std::vector<Entry>;

// y += a * x
void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Scalar& a);
SparseVec add(const SparseVec& x, const SparseVec& y);
SparseVec subtract(const SparseVec& x, const SparseVec& y);
Scalar coefficient(const SparseVec& x, Index i);
Scalar dot(const SparseVec& x, const SparseVec& y);
SparseVec unit_vector(Index i, const Field& f);
// Sorts, merges duplicates and drops zeros.
SparseVec canonical(std::vector<Entry> entries);
SparseVec from_dense(const std::vector<Scalar>& d);
std::vector<Scalar> to_dense(const SparseVec& v, std::size_t n, const Field& f);
// Entry-wise coercion into f.
SparseVec in_field(const SparseVec& v, const Field& f);

// Column-major sparse matrix.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols, Field f);

    static SparseMatrix identity(std::size_t n, Field f);
    static SparseMatrix zero(std::size_t rows, std::size_t cols, Field f) { return SparseMatrix(rows, cols, f); }
    static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows, std::size_t ncols, Field f);
    static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVec> cols, Field f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    const Field& field() const { return field_; }

    const SparseVec& column(std::size_t j) const { return cols_[j]; }
    void set_column(std::size_t j, SparseVec v);
    void add_entry(std::size_t r, std::size_t c, const Scalar& v);  // accumulates
    Scalar at(std::size_t r, std::size_t c) const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& a) const;
    SparseVec apply(const SparseVec& v) const;
    // Columns of this followed by columns of o.
    SparseMatrix hconcat(const SparseMatrix& o) const;
    SparseMatrix select_columns(const std::vector<std::size_t>& which) const;

    bool is_zero() const;
    std::size_t nnz() const;
    std::vector<std::vector<Scalar>> to_dense() const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    Field field_;
    std::vector<SparseVec> cols_;
};

}  // namespace ainf
