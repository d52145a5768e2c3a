#pragma once

#include <optional>
#include <vector>

#include "ccmerge/cluster.hpp"
#include "ccmerge/sparse.hpp"
#include "ccmerge/types.hpp"

namespace ccm {

// Cells-by-facets arrays (EV: edges by vertices, FE: faces by edges). Each
// cell's facet list is sorted ascending with distinct 0-based entries.
struct CellArray {
    std::vector<std::vector<index_t>> cells;

    index_t size() const { return static_cast<index_t>(cells.size()); }

    friend bool operator==(const CellArray&, const CellArray&) = default;
};

// Block-diagonal union of the local chain complexes, one block per input
// 2-cell: vertex instances plus the local coboundary accumulators.
struct AccumulatorComplex {
    PointCloud vertices;        // 3 x (#vertex instances)
    SignedSparseMatrix delta0;  // (#local edges) x (#vertex instances)
    SignedSparseMatrix delta1;  // (#local faces) x (#local edges)

    // Structural invariants: shapes chain up, coefficients are +-1, every
    // edge row is one -1 and one +1, every face row has >= 3 entries.
    void validate() const;
};

// Merged global complex. The array-of-arrays engine fills the cell arrays
// and unsigned class maps only (it is sign-lossy); the sparse engine also
// fills the global coboundary operators and member signs.
struct QuotientComplex {
    PointCloud vertices;  // class centroids
    CellArray ev;
    CellArray fe;
    std::optional<SignedSparseMatrix> delta0;  // (#edges) x (#vertices)
    std::optional<SignedSparseMatrix> delta1;  // (#faces) x (#edges)
    ClassPartition vclasses;                   // over vertex instances
    SignedClassMap eclasses;                   // over surviving local edges, renumbered
    SignedClassMap fclasses;                   // over surviving local faces, renumbered
    std::vector<index_t> dropped_edges;        // original local-edge indices, ascending
    std::vector<index_t> dropped_faces;        // original local-face indices, ascending
};

enum class Engine { aa, sparse };

struct MergeOptions {
    Tolerance tolerance{};
    Engine engine = Engine::sparse;
    bool self_check = true;  // verify [d1][d0] = 0 after a sparse merge
    unsigned threads = 1;
};

struct AaCellCongruence {
    CellArray cells;           // one facet list per class, first-occurrence order
    ClassPartition classes;    // over surviving old cells, renumbered
    std::vector<index_t> survivors;  // original row index per renumbered index
    std::vector<index_t> dropped;    // original row indices of degenerate cells
};

struct SparseCellCongruence {
    SignedSparseMatrix reduced;  // one representative row per class
    SignedClassMap classes;      // renumbered survivors with orientation signs
    std::vector<index_t> survivors;
    std::vector<index_t> dropped;
};

// Array-of-arrays engine for one rank: rewrite each cell (row of delta, read
// as its incident facet columns) over the facet classes, drop cells with
// <= dim distinct facets, and unite cells that share the same sorted facet
// set. Classes come out in first-occurrence order over ascending old rows.
AaCellCongruence cell_congruence_aa(const SignedSparseMatrix& delta,
                                    const ClassPartition& facet_classes, int dim,
                                    unsigned threads = 1);

// Sparse engine for one rank: merge columns per facet class with sign
// alignment, drop rows left with < dim+1 nonzeros (including rows emptied by
// exact cancellation), and unite rows equal up to a global sign, recording
// each member's orientation relative to its class seed.
SparseCellCongruence cell_congruence_sparse(const SignedSparseMatrix& delta,
                                            const SignedClassMap& facet_classes, int dim,
                                            unsigned threads = 1);

// Full pipeline: vertex congruence, then cell congruence at ranks 1 and 2
// with classes threaded upward (columns of the next accumulator restricted
// to surviving cells first). With the sparse engine, when self_check is on,
// throws ValidationError(DD_NONZERO) if [d1][d0] != 0.
QuotientComplex chain_congruence(const AccumulatorComplex& acc, const MergeOptions& opts = {});

}  // namespace ccm
