#include "ccmerge/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "ccmerge/parallel.hpp"

namespace ccm {

ClassPartition ClassPartition::identity(index_t n) {
    ClassPartition p;
    p.classes.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) p.classes[i] = {i};
    return p;
}

void ClassPartition::validate(index_t n, const std::string& what) const {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    index_t covered = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& cls = classes[k];
        if (cls.empty()) {
            throw SchemaError("PARTITION_INVALID: " + what + " class " + std::to_string(k + 1) +
                              " is empty");
        }
        for (index_t member : cls) {
            if (member < 0 || member >= n) {
                throw SchemaError("PARTITION_INVALID: " + what + " member " +
                                  std::to_string(member + 1) + " outside 1.." + std::to_string(n));
            }
            if (seen[member]) {
                throw SchemaError("PARTITION_INVALID: " + what + " member " +
                                  std::to_string(member + 1) + " appears twice");
            }
            seen[member] = 1;
            ++covered;
        }
    }
    if (covered != n) {
        throw SchemaError("PARTITION_INVALID: " + what + " covers " + std::to_string(covered) +
                          " of " + std::to_string(n) + " indices");
    }
}

SignedClassMap SignedClassMap::all_positive(ClassPartition p) {
    SignedClassMap m;
    m.signs.resize(p.classes.size());
    for (std::size_t k = 0; k < p.classes.size(); ++k) {
        m.signs[k].assign(p.classes[k].size(), 1);
    }
    m.partition = std::move(p);
    return m;
}

void SignedClassMap::validate(index_t n, const std::string& what) const {
    partition.validate(n, what);
    if (signs.empty()) return;  // sign-lossy map
    if (signs.size() != partition.classes.size()) {
        throw SchemaError("SIGNS_INVALID: " + what + " has " + std::to_string(signs.size()) +
                          " sign lists for " + std::to_string(partition.classes.size()) +
                          " classes");
    }
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (signs[k].size() != partition.classes[k].size()) {
            throw SchemaError("SIGNS_INVALID: " + what + " class " + std::to_string(k + 1) +
                              " sign count mismatch");
        }
        for (std::int8_t s : signs[k]) {
            if (s != 1 && s != -1) {
                throw SchemaError("SIGNS_INVALID: " + what + " sign must be +1 or -1");
            }
        }
        if (signs[k].front() != 1) {
            throw SchemaError("SIGNS_INVALID: " + what + " class " + std::to_string(k + 1) +
                              " seed sign must be +1");
        }
    }
}

SignedSparseMatrix SignedSparseMatrix::from_triples(index_t nrows, index_t ncols,
                                                    std::span<const Triple> triples) {
    if (nrows < 0 || ncols < 0) {
        throw SchemaError("DIMENSION_INVALID: negative matrix dimension");
    }
    for (const Triple& t : triples) {
        if (t.row < 1 || t.row > nrows) {
            throw SchemaError("INDEX_RANGE: row index " + std::to_string(t.row) +
                              " outside 1.." + std::to_string(nrows));
        }
        if (t.col < 1 || t.col > ncols) {
            throw SchemaError("INDEX_RANGE: column index " + std::to_string(t.col) +
                              " outside 1.." + std::to_string(ncols));
        }
        if (t.value == 0) {
            throw SchemaError("ZERO_COEFF: explicit zero at (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ")");
        }
    }
    std::vector<Triple> sorted(triples.begin(), triples.end());
    std::sort(sorted.begin(), sorted.end(), [](const Triple& a, const Triple& b) {
        return std::pair{a.col, a.row} < std::pair{b.col, b.row};
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].row == sorted[i - 1].row && sorted[i].col == sorted[i - 1].col) {
            throw SchemaError("DUPLICATE_ENTRY: repeated coordinate (" +
                              std::to_string(sorted[i].row) + ", " + std::to_string(sorted[i].col) +
                              ")");
        }
    }
    SignedSparseMatrix m(nrows, ncols);
    m.rows_.reserve(sorted.size());
    m.values_.reserve(sorted.size());
    for (const Triple& t : sorted) {
        ++m.col_ptr_[t.col];  // count per column, shifted by the 1-based col
        m.rows_.push_back(t.row - 1);
        m.values_.push_back(t.value);
    }
    std::partial_sum(m.col_ptr_.begin(), m.col_ptr_.end(), m.col_ptr_.begin());
    return m;
}

SignedSparseMatrix SignedSparseMatrix::from_csc(index_t nrows, index_t ncols,
                                                std::vector<index_t> col_ptr,
                                                std::vector<index_t> rows,
                                                std::vector<coeff_t> values) {
    SignedSparseMatrix m;
    m.nrows_ = nrows;
    m.ncols_ = ncols;
    m.col_ptr_ = std::move(col_ptr);
    m.rows_ = std::move(rows);
    m.values_ = std::move(values);
    return m;
}

ColumnVector SignedSparseMatrix::column(index_t col) const {
    ColumnVector v;
    v.length = nrows_;
    auto rs = column_rows(col);
    auto vs = column_values(col);
    v.entries.reserve(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) v.entries.emplace_back(rs[i], vs[i]);
    return v;
}

std::vector<Triple> SignedSparseMatrix::to_triples() const {
    std::vector<Triple> out;
    out.reserve(rows_.size());
    for (index_t c = 0; c < ncols_; ++c) {
        for (index_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
            out.push_back({rows_[k] + 1, c + 1, values_[k]});
        }
    }
    return out;
}

SignedSparseMatrix transpose(const SignedSparseMatrix& m) {
    const index_t nr = m.nrows();
    const index_t nc = m.ncols();
    std::vector<index_t> col_ptr(static_cast<std::size_t>(nr) + 1, 0);
    for (index_t c = 0; c < nc; ++c) {
        for (index_t r : m.column_rows(c)) ++col_ptr[r + 1];
    }
    std::partial_sum(col_ptr.begin(), col_ptr.end(), col_ptr.begin());
    std::vector<index_t> rows(static_cast<std::size_t>(m.nnz()));
    std::vector<coeff_t> values(static_cast<std::size_t>(m.nnz()));
    std::vector<index_t> fill(col_ptr.begin(), col_ptr.end() - 1);
    // Column-major scan of m emits ascending column indices per output
    // column, so the result is already in canonical order.
    for (index_t c = 0; c < nc; ++c) {
        auto rs = m.column_rows(c);
        auto vs = m.column_values(c);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            index_t slot = fill[rs[i]]++;
            rows[slot] = c;
            values[slot] = vs[i];
        }
    }
    return SignedSparseMatrix::from_csc(nc, nr, std::move(col_ptr), std::move(rows),
                                        std::move(values));
}

SignedSparseMatrix matmul(const SignedSparseMatrix& a, const SignedSparseMatrix& b) {
    if (a.ncols() != b.nrows()) {
        throw SchemaError("DIMENSION_MISMATCH: cannot multiply " + std::to_string(a.nrows()) +
                          "x" + std::to_string(a.ncols()) + " by " + std::to_string(b.nrows()) +
                          "x" + std::to_string(b.ncols()));
    }
    const index_t nr = a.nrows();
    const index_t nc = b.ncols();
    std::vector<index_t> col_ptr(static_cast<std::size_t>(nc) + 1, 0);
    std::vector<index_t> rows;
    std::vector<coeff_t> values;
    // Gustavson's algorithm: dense accumulator over the rows of a.
    std::vector<coeff_t> accum(static_cast<std::size_t>(nr), 0);
    std::vector<index_t> touched;
    for (index_t c = 0; c < nc; ++c) {
        touched.clear();
        auto brows = b.column_rows(c);
        auto bvals = b.column_values(c);
        for (std::size_t i = 0; i < brows.size(); ++i) {
            const index_t k = brows[i];
            const coeff_t bv = bvals[i];
            auto arows = a.column_rows(k);
            auto avals = a.column_values(k);
            for (std::size_t j = 0; j < arows.size(); ++j) {
                if (accum[arows[j]] == 0) touched.push_back(arows[j]);
                accum[arows[j]] += avals[j] * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (index_t r : touched) {
            if (accum[r] != 0) {
                rows.push_back(r);
                values.push_back(accum[r]);
            }
            accum[r] = 0;
        }
        col_ptr[c + 1] = static_cast<index_t>(rows.size());
    }
    return SignedSparseMatrix::from_csc(nr, nc, std::move(col_ptr), std::move(rows),
                                        std::move(values));
}

SignedSparseMatrix select_columns(const SignedSparseMatrix& m, std::span<const index_t> cols) {
    std::vector<index_t> col_ptr(cols.size() + 1, 0);
    std::vector<index_t> rows;
    std::vector<coeff_t> values;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const index_t c = cols[k];
        if (c < 0 || c >= m.ncols()) {
            throw InternalError("COLUMN_RANGE: selected column " + std::to_string(c + 1) +
                                " outside 1.." + std::to_string(m.ncols()));
        }
        auto rs = m.column_rows(c);
        auto vs = m.column_values(c);
        rows.insert(rows.end(), rs.begin(), rs.end());
        values.insert(values.end(), vs.begin(), vs.end());
        col_ptr[k + 1] = static_cast<index_t>(rows.size());
    }
    return SignedSparseMatrix::from_csc(m.nrows(), static_cast<index_t>(cols.size()),
                                        std::move(col_ptr), std::move(rows), std::move(values));
}

SignedSparseMatrix merge_columns(const SignedSparseMatrix& m, const SignedClassMap& classes,
                                 unsigned threads) {
    classes.validate(m.ncols(), "column classes");
    const bool signed_map = classes.has_signs();
    const index_t nclasses = classes.partition.class_count();
    std::vector<ColumnVector> merged(static_cast<std::size_t>(nclasses));
    parallel_for(nclasses, threads, [&](index_t k) {
        const auto& members = classes.partition.classes[k];
        // Gather all signed entries of the member columns, then combine runs
        // of equal rows. Member columns usually live in disjoint row blocks,
        // so this is a plain union; same-row entries accumulate and must
        // cancel or stay within {-1,+1}.
        std::vector<std::pair<index_t, coeff_t>> entries;
        for (std::size_t j = 0; j < members.size(); ++j) {
            const index_t col = members[j];
            const coeff_t sign = signed_map ? classes.signs[k][j] : 1;
            auto rs = m.column_rows(col);
            auto vs = m.column_values(col);
            for (std::size_t i = 0; i < rs.size(); ++i) {
                entries.emplace_back(rs[i], sign * vs[i]);
            }
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        ColumnVector& out = merged[k];
        out.length = m.nrows();
        for (std::size_t i = 0; i < entries.size();) {
            index_t row = entries[i].first;
            coeff_t sum = 0;
            for (; i < entries.size() && entries[i].first == row; ++i) sum += entries[i].second;
            if (sum == 0) continue;
            if (sum > 1 || sum < -1) {
                throw ValidationError(
                    "ORIENTATION_INCONSISTENT: merging column class " + std::to_string(k + 1) +
                    " accumulates coefficient " + std::to_string(sum) + " at row " +
                    std::to_string(row + 1) + " (exceeds magnitude 1)");
            }
            out.entries.emplace_back(row, sum);
        }
    });
    std::vector<index_t> col_ptr(static_cast<std::size_t>(nclasses) + 1, 0);
    std::vector<index_t> rows;
    std::vector<coeff_t> values;
    for (index_t k = 0; k < nclasses; ++k) {
        for (const auto& [r, v] : merged[k].entries) {
            rows.push_back(r);
            values.push_back(v);
        }
        col_ptr[k + 1] = static_cast<index_t>(rows.size());
    }
    return SignedSparseMatrix::from_csc(m.nrows(), nclasses, std::move(col_ptr), std::move(rows),
                                        std::move(values));
}

SignSplit signed_column_signature(const ColumnVector& v) {
    if (v.entries.empty()) {
        throw SchemaError("ZERO_VECTOR: cannot take the signature of a zero vector");
    }
    SignSplit split;
    split.sign = v.entries.front().second > 0 ? 1 : -1;
    split.canonical.length = v.length;
    split.canonical.entries.reserve(v.entries.size());
    for (const auto& [row, value] : v.entries) {
        split.canonical.entries.emplace_back(row, split.sign * value);
    }
    return split;
}

}  // namespace ccm
