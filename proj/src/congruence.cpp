#include "ccmerge/congruence.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "ccmerge/parallel.hpp"

namespace ccm {

namespace {

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t value) {
    h ^= value + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

struct KeyHash {
    std::size_t operator()(const std::vector<index_t>& v) const {
        std::uint64_t h = v.size();
        for (index_t x : v) h = hash_mix(h, static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const std::vector<std::pair<index_t, coeff_t>>& v) const {
        std::uint64_t h = v.size();
        for (const auto& [row, value] : v) {
            h = hash_mix(hash_mix(h, static_cast<std::uint64_t>(row)),
                         static_cast<std::uint64_t>(static_cast<std::int64_t>(value)));
        }
        return static_cast<std::size_t>(h);
    }
};

std::vector<index_t> facet_class_lookup(const ClassPartition& classes, index_t n) {
    std::vector<index_t> lookup(static_cast<std::size_t>(n), -1);
    for (index_t k = 0; k < classes.class_count(); ++k) {
        for (index_t member : classes.classes[k]) lookup[member] = k;
    }
    return lookup;
}

}  // namespace

void AccumulatorComplex::validate() const {
    if (vertices.dim != 3) {
        throw SchemaError("DIMENSION_INVALID: accumulator vertices must be 3-dimensional");
    }
    if (delta0.ncols() != vertices.npoints()) {
        throw SchemaError("SHAPE_MISMATCH: delta0 has " + std::to_string(delta0.ncols()) +
                          " columns for " + std::to_string(vertices.npoints()) +
                          " vertex instances");
    }
    if (delta1.ncols() != delta0.nrows()) {
        throw SchemaError("SHAPE_MISMATCH: delta1 has " + std::to_string(delta1.ncols()) +
                          " columns for " + std::to_string(delta0.nrows()) + " local edges");
    }
    for (double c : vertices.coords) {
        if (!std::isfinite(c)) {
            throw SchemaError("COORD_NONFINITE: accumulator vertex coordinate is not finite");
        }
    }
    const SignedSparseMatrix d0t = transpose(delta0);
    for (index_t e = 0; e < d0t.ncols(); ++e) {
        auto vals = d0t.column_values(e);
        if (vals.size() != 2 || vals[0] + vals[1] != 0 || (vals[0] != 1 && vals[0] != -1)) {
            throw SchemaError("EDGE_ROW_INVALID: delta0 row " + std::to_string(e + 1) +
                              " must hold exactly one -1 and one +1");
        }
    }
    const SignedSparseMatrix d1t = transpose(delta1);
    for (index_t f = 0; f < d1t.ncols(); ++f) {
        auto vals = d1t.column_values(f);
        if (vals.size() < 3) {
            throw SchemaError("FACE_ROW_INVALID: delta1 row " + std::to_string(f + 1) +
                              " has fewer than 3 incident edges");
        }
        for (coeff_t v : vals) {
            if (v != 1 && v != -1) {
                throw SchemaError("COEFF_INVALID: delta1 row " + std::to_string(f + 1) +
                                  " holds a coefficient outside {-1,+1}");
            }
        }
    }
}

AaCellCongruence cell_congruence_aa(const SignedSparseMatrix& delta,
                                    const ClassPartition& facet_classes, int dim,
                                    unsigned threads) {
    facet_classes.validate(delta.ncols(), "facet classes");
    const std::vector<index_t> lookup = facet_class_lookup(facet_classes, delta.ncols());
    const SignedSparseMatrix rows = transpose(delta);  // columns of `rows` are cells
    const index_t ncells = rows.ncols();

    // Step 1+2: translate each cell to facet classes and keep the distinct
    // sorted set when it still has more than `dim` facets.
    std::vector<std::vector<index_t>> keys(static_cast<std::size_t>(ncells));
    parallel_for(ncells, threads, [&](index_t cell) {
        std::vector<index_t> facets;
        facets.reserve(rows.column_nnz(cell));
        for (index_t facet : rows.column_rows(cell)) facets.push_back(lookup[facet]);
        std::sort(facets.begin(), facets.end());
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
        if (static_cast<int>(facets.size()) > dim) keys[cell] = std::move(facets);
    });

    // Step 3+4: first occurrence of a facet set defines the output cell,
    // later occurrences join its class. Survivor indices are renumbered.
    AaCellCongruence out;
    std::unordered_map<std::vector<index_t>, index_t, KeyHash> first_seen;
    for (index_t cell = 0; cell < ncells; ++cell) {
        if (keys[cell].empty()) {
            out.dropped.push_back(cell);
            continue;
        }
        const index_t renumbered = static_cast<index_t>(out.survivors.size());
        out.survivors.push_back(cell);
        auto [it, inserted] =
            first_seen.try_emplace(keys[cell], static_cast<index_t>(out.cells.cells.size()));
        if (inserted) {
            out.cells.cells.push_back(keys[cell]);
            out.classes.classes.push_back({renumbered});
        } else {
            out.classes.classes[it->second].push_back(renumbered);
        }
    }
    return out;
}

SparseCellCongruence cell_congruence_sparse(const SignedSparseMatrix& delta,
                                            const SignedClassMap& facet_classes, int dim,
                                            unsigned threads) {
    const SignedSparseMatrix merged = merge_columns(delta, facet_classes, threads);
    const SignedSparseMatrix rows = transpose(merged);  // columns are cells
    const index_t ncells = rows.ncols();

    // Signatures can be computed independently; class formation below scans
    // ascending so the output order never depends on scheduling.
    std::vector<SignSplit> sig(static_cast<std::size_t>(ncells));
    std::vector<char> degenerate(static_cast<std::size_t>(ncells), 0);
    parallel_for(ncells, threads, [&](index_t cell) {
        if (rows.column_nnz(cell) < dim + 1) {
            degenerate[cell] = 1;
            return;
        }
        sig[cell] = signed_column_signature(rows.column(cell));
    });

    SparseCellCongruence out;
    std::unordered_map<std::vector<std::pair<index_t, coeff_t>>, index_t, KeyHash> first_seen;
    std::vector<index_t> seed_cell;   // original cell index per class
    std::vector<int> seed_sign;       // signature sign of each class seed
    for (index_t cell = 0; cell < ncells; ++cell) {
        if (degenerate[cell]) {
            out.dropped.push_back(cell);
            continue;
        }
        const index_t renumbered = static_cast<index_t>(out.survivors.size());
        out.survivors.push_back(cell);
        auto [it, inserted] = first_seen.try_emplace(sig[cell].canonical.entries,
                                                     static_cast<index_t>(seed_cell.size()));
        if (inserted) {
            seed_cell.push_back(cell);
            seed_sign.push_back(sig[cell].sign);
            out.classes.partition.classes.push_back({renumbered});
            out.classes.signs.push_back({1});
        } else {
            const index_t k = it->second;
            out.classes.partition.classes[k].push_back(renumbered);
            // row(cell) = sig.sign * canonical and row(seed) = seed_sign *
            // canonical, so the orientation relative to the seed is their
            // product.
            out.classes.signs[k].push_back(
                static_cast<std::int8_t>(sig[cell].sign * seed_sign[k]));
        }
    }

    // Representative rows, in class order, keep the seed's own orientation.
    std::vector<Triple> triples;
    for (std::size_t k = 0; k < seed_cell.size(); ++k) {
        auto rs = rows.column_rows(seed_cell[k]);
        auto vs = rows.column_values(seed_cell[k]);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            triples.push_back({static_cast<index_t>(k + 1), rs[i] + 1, vs[i]});
        }
    }
    out.reduced = SignedSparseMatrix::from_triples(static_cast<index_t>(seed_cell.size()),
                                                   merged.ncols(), triples);
    return out;
}

namespace {

// Unsigned facet lists of the representative rows, for the cell arrays the
// sparse engine shares with the AA engine.
CellArray rows_to_cells(const SignedSparseMatrix& m) {
    const SignedSparseMatrix rows = transpose(m);
    CellArray out;
    out.cells.resize(static_cast<std::size_t>(rows.ncols()));
    for (index_t cell = 0; cell < rows.ncols(); ++cell) {
        auto rs = rows.column_rows(cell);
        out.cells[cell].assign(rs.begin(), rs.end());
    }
    return out;
}

}  // namespace

QuotientComplex chain_congruence(const AccumulatorComplex& acc, const MergeOptions& opts) {
    acc.validate();
    QuotientComplex q;

    VertexCongruence vc = vertex_congruence(acc.vertices, opts.tolerance);
    q.vertices = std::move(vc.centroids);
    q.vclasses = std::move(vc.classes);

    if (opts.engine == Engine::aa) {
        AaCellCongruence rank1 = cell_congruence_aa(acc.delta0, q.vclasses, 1, opts.threads);
        q.ev = std::move(rank1.cells);
        q.eclasses.partition = std::move(rank1.classes);
        q.dropped_edges = std::move(rank1.dropped);

        const SignedSparseMatrix delta1_live = select_columns(acc.delta1, rank1.survivors);
        AaCellCongruence rank2 =
            cell_congruence_aa(delta1_live, q.eclasses.partition, 2, opts.threads);
        q.fe = std::move(rank2.cells);
        q.fclasses.partition = std::move(rank2.classes);
        q.dropped_faces = std::move(rank2.dropped);
        return q;
    }

    SparseCellCongruence rank1 = cell_congruence_sparse(
        acc.delta0, SignedClassMap::all_positive(q.vclasses), 1, opts.threads);
    q.ev = rows_to_cells(rank1.reduced);
    q.eclasses = std::move(rank1.classes);
    q.dropped_edges = std::move(rank1.dropped);
    q.delta0 = std::move(rank1.reduced);

    const SignedSparseMatrix delta1_live = select_columns(acc.delta1, rank1.survivors);
    SparseCellCongruence rank2 = cell_congruence_sparse(delta1_live, q.eclasses, 2, opts.threads);
    q.fe = rows_to_cells(rank2.reduced);
    q.fclasses = std::move(rank2.classes);
    q.dropped_faces = std::move(rank2.dropped);
    q.delta1 = std::move(rank2.reduced);

    if (opts.self_check) {
        const SignedSparseMatrix dd = matmul(*q.delta1, *q.delta0);
        if (dd.nnz() != 0) {
            throw ValidationError("DD_NONZERO: [d1][d0] has " + std::to_string(dd.nnz()) +
                                  " nonzero entries; the merged complex is not a chain complex");
        }
    }
    return q;
}

}  // namespace ccm
