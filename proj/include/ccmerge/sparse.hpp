#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ccmerge/types.hpp"

namespace ccm {

// One nonzero in the 1-based (row, col, value) interchange encoding used by
// the JSON formats and the fixture listings.
struct Triple {
    index_t row;
    index_t col;
    coeff_t value;

    friend bool operator==(const Triple&, const Triple&) = default;
};

// Sparse signed column; entries sorted by row, values nonzero.
struct ColumnVector {
    index_t length = 0;
    std::vector<std::pair<index_t, coeff_t>> entries;  // (0-based row, value)

    friend bool operator==(const ColumnVector&, const ColumnVector&) = default;
};

// Integer sparse matrix in compressed-column form. Incidence and coboundary
// operators live here with coefficients in {-1,+1}; general products may hold
// any nonzero integer. Entry order is (col, row) ascending, which makes
// column slicing cheap and serialized output bit-stable.
class SignedSparseMatrix {
public:
    SignedSparseMatrix() : col_ptr_(1, 0) {}
    SignedSparseMatrix(index_t nrows, index_t ncols)
        : nrows_(nrows), ncols_(ncols), col_ptr_(static_cast<std::size_t>(ncols) + 1, 0) {}

    // Builds from 1-based triples. Rejects out-of-range indices, duplicate
    // (row, col) pairs and zero values.
    static SignedSparseMatrix from_triples(index_t nrows, index_t ncols,
                                           std::span<const Triple> triples);

    // Internal-format builder: raw CSC arrays, 0-based, rows ascending in
    // each column, values nonzero. Used by the algebra routines.
    static SignedSparseMatrix from_csc(index_t nrows, index_t ncols,
                                       std::vector<index_t> col_ptr,
                                       std::vector<index_t> rows,
                                       std::vector<coeff_t> values);

    index_t nrows() const { return nrows_; }
    index_t ncols() const { return ncols_; }
    index_t nnz() const { return static_cast<index_t>(rows_.size()); }

    std::span<const index_t> column_rows(index_t col) const {
        return {rows_.data() + col_ptr_[col], rows_.data() + col_ptr_[col + 1]};
    }
    std::span<const coeff_t> column_values(index_t col) const {
        return {values_.data() + col_ptr_[col], values_.data() + col_ptr_[col + 1]};
    }
    index_t column_nnz(index_t col) const { return col_ptr_[col + 1] - col_ptr_[col]; }

    ColumnVector column(index_t col) const;

    // 1-based triples sorted by (col, row); inverse of from_triples.
    std::vector<Triple> to_triples() const;

    friend bool operator==(const SignedSparseMatrix&, const SignedSparseMatrix&) = default;

private:
    index_t nrows_ = 0;
    index_t ncols_ = 0;
    std::vector<index_t> col_ptr_;  // size ncols_ + 1
    std::vector<index_t> rows_;     // ascending within each column
    std::vector<coeff_t> values_;
};

SignedSparseMatrix transpose(const SignedSparseMatrix& m);

// Integer product a * b; stores only nonzeros. Throws on inner-dimension
// mismatch.
SignedSparseMatrix matmul(const SignedSparseMatrix& a, const SignedSparseMatrix& b);

// New matrix made of the listed columns, in the given order.
SignedSparseMatrix select_columns(const SignedSparseMatrix& m, std::span<const index_t> cols);

// Column-class reduction: output column k is the signed accumulation
// sum over members m of class k of sign(m) * column(m), with exact
// cancellations dropped. An accumulated coefficient of magnitude > 1 means
// the input orientations are inconsistent and raises ValidationError.
// Classes may be processed in parallel; output column order is class order.
SignedSparseMatrix merge_columns(const SignedSparseMatrix& m, const SignedClassMap& classes,
                                 unsigned threads = 1);

// v split as sign * canonical where the canonical vector's first entry (the
// one with the smallest row) has value +1. Used to deduplicate oriented
// cells up to a global sign flip. Throws on the zero vector.
struct SignSplit {
    ColumnVector canonical;
    int sign = 1;
};

SignSplit signed_column_signature(const ColumnVector& v);

}  // namespace ccm
