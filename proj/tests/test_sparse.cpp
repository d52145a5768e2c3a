#include <doctest.h>

#include <random>

#include "ccmerge/sparse.hpp"
#include "support/cube_fixture.hpp"
#include "support/oracles.hpp"

using namespace ccm;

namespace {

SignedSparseMatrix diag_pm() {
    return SignedSparseMatrix::from_triples(2, 2, std::vector<Triple>{{1, 1, 1}, {2, 2, -1}});
}

}  // namespace

TEST_CASE("from_triples builds the stated nonzeros") {
    const SignedSparseMatrix m = diag_pm();
    CHECK(m.nrows() == 2);
    CHECK(m.ncols() == 2);
    CHECK(m.nnz() == 2);
    CHECK(m.to_triples() == std::vector<Triple>{{1, 1, 1}, {2, 2, -1}});
}

TEST_CASE("from_triples accepts the cube delta0 listing") {
    const auto acc = fixture::cube_accumulator();
    CHECK(acc.delta0.nrows() == 24);
    CHECK(acc.delta0.ncols() == 24);
    CHECK(acc.delta0.nnz() == 48);
}

TEST_CASE("from_triples rejects bad input") {
    CHECK_THROWS_AS(SignedSparseMatrix::from_triples(3, 3, std::vector<Triple>{{1, 4, 1}}),
                    SchemaError);
    CHECK_THROWS_AS(SignedSparseMatrix::from_triples(3, 3, std::vector<Triple>{{0, 1, 1}}),
                    SchemaError);
    CHECK_THROWS_AS(SignedSparseMatrix::from_triples(3, 3, std::vector<Triple>{{1, 1, 0}}),
                    SchemaError);
    CHECK_THROWS_AS(
        SignedSparseMatrix::from_triples(3, 3, std::vector<Triple>{{2, 2, 1}, {2, 2, -1}}),
        SchemaError);
}

TEST_CASE("transpose swaps coordinates") {
    CHECK(transpose(diag_pm()) == diag_pm());

    const SignedSparseMatrix m =
        SignedSparseMatrix::from_triples(2, 3, std::vector<Triple>{{1, 3, -1}});
    const SignedSparseMatrix t = transpose(m);
    CHECK(t.nrows() == 3);
    CHECK(t.ncols() == 2);
    CHECK(t.to_triples() == std::vector<Triple>{{3, 1, -1}});
}

TEST_CASE("transpose is an involution") {
    std::mt19937 rng(101);
    for (int i = 0; i < 120; ++i) {
        const SignedSparseMatrix m = oracle::random_matrix(rng);
        CHECK(transpose(transpose(m)) == m);
    }
}

TEST_CASE("matmul matches hand arithmetic and identity") {
    const SignedSparseMatrix a = SignedSparseMatrix::from_triples(
        2, 2, std::vector<Triple>{{1, 1, 1}, {1, 2, -1}, {2, 2, 1}});
    const SignedSparseMatrix b = SignedSparseMatrix::from_triples(
        2, 2, std::vector<Triple>{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}});
    // [[1,-1],[0,1]] * [[1,0],[1,1]] = [[0,-1],[1,1]]
    const SignedSparseMatrix expected = SignedSparseMatrix::from_triples(
        2, 2, std::vector<Triple>{{2, 1, 1}, {1, 2, -1}, {2, 2, 1}});
    CHECK(matmul(a, b) == expected);

    const SignedSparseMatrix identity =
        SignedSparseMatrix::from_triples(2, 2, std::vector<Triple>{{1, 1, 1}, {2, 2, 1}});
    CHECK(matmul(a, identity) == a);

    CHECK_THROWS_AS(matmul(a, SignedSparseMatrix::from_triples(3, 2, {})), SchemaError);
}

TEST_CASE("matmul agrees with the dense oracle") {
    std::mt19937 rng(202);
    for (int i = 0; i < 120; ++i) {
        const SignedSparseMatrix a = oracle::random_matrix(rng);
        SignedSparseMatrix b = oracle::random_matrix(rng);
        // Force compatible inner dimensions.
        std::vector<Triple> fixed;
        for (const Triple& t : b.to_triples()) {
            if (t.row <= a.ncols()) fixed.push_back(t);
        }
        b = SignedSparseMatrix::from_triples(a.ncols(), b.ncols(), fixed);
        CHECK(oracle::dense(matmul(a, b)) == oracle::dense_matmul(oracle::dense(a), oracle::dense(b)));
    }
}

TEST_CASE("merge_columns with the identity partition is the identity") {
    std::mt19937 rng(303);
    for (int i = 0; i < 100; ++i) {
        const SignedSparseMatrix m = oracle::random_matrix(rng, 12, 0.4);
        const auto identity = SignedClassMap::all_positive(ClassPartition::identity(m.ncols()));
        CHECK(merge_columns(m, identity) == m);
    }
}

TEST_CASE("merge_columns accumulates signed member columns") {
    // Columns c and -c with signs +1,-1 align to the same column; the
    // accumulation doubles it, which is an orientation error by contract.
    const SignedSparseMatrix two_aligned = SignedSparseMatrix::from_triples(
        3, 2, std::vector<Triple>{{1, 1, 1}, {3, 1, -1}, {1, 2, 1}, {3, 2, -1}});
    SignedClassMap one_class;
    one_class.partition.classes = {{0, 1}};
    one_class.signs = {{1, 1}};
    CHECK_THROWS_AS(merge_columns(two_aligned, one_class), ValidationError);
    CHECK_THROWS_WITH_AS(merge_columns(two_aligned, one_class),
                         doctest::Contains("ORIENTATION_INCONSISTENT"), ValidationError);

    // Opposite columns with equal signs cancel exactly.
    const SignedSparseMatrix opposing = SignedSparseMatrix::from_triples(
        3, 2, std::vector<Triple>{{1, 1, 1}, {3, 1, -1}, {1, 2, -1}, {3, 2, 1}});
    const SignedSparseMatrix merged = merge_columns(opposing, one_class);
    CHECK(merged.ncols() == 1);
    CHECK(merged.nnz() == 0);

    // Disjoint member columns union into one.
    const SignedSparseMatrix disjoint = SignedSparseMatrix::from_triples(
        4, 2, std::vector<Triple>{{1, 1, 1}, {2, 1, -1}, {3, 2, -1}, {4, 2, 1}});
    SignedClassMap flipped;
    flipped.partition.classes = {{0, 1}};
    flipped.signs = {{1, -1}};
    const SignedSparseMatrix unioned = merge_columns(disjoint, flipped);
    CHECK(unioned.to_triples() ==
          std::vector<Triple>{{1, 1, 1}, {2, 1, -1}, {3, 1, 1}, {4, 1, -1}});
}

TEST_CASE("merge_columns matches dense accumulation on the cube's edge classes") {
    // Reduce the cube's delta1 over its 12 edge classes and compare against
    // a dense signed accumulation done by hand.
    const auto acc = fixture::cube_accumulator();
    SignedClassMap eclasses;
    eclasses.partition.classes = {{0, 8},  {1, 12}, {2, 16}, {3, 20}, {4, 9},  {5, 13},
                                  {6, 17}, {7, 21}, {10, 18}, {11, 22}, {14, 19}, {15, 23}};
    for (std::size_t k = 0; k < 12; ++k) eclasses.signs.push_back({1, 1});

    const SignedSparseMatrix merged = merge_columns(acc.delta1, eclasses);
    const auto dense_in = oracle::dense(acc.delta1);
    for (index_t cls = 0; cls < 12; ++cls) {
        for (index_t row = 0; row < 6; ++row) {
            int expected = 0;
            for (std::size_t j = 0; j < eclasses.partition.classes[cls].size(); ++j) {
                expected += eclasses.signs[cls][j] *
                            dense_in[row][eclasses.partition.classes[cls][j]];
            }
            CHECK(oracle::dense(merged)[row][cls] == expected);
        }
    }
    // Each geometric edge is shared by exactly two faces.
    for (index_t cls = 0; cls < 12; ++cls) CHECK(merged.column_nnz(cls) == 2);
}

TEST_CASE("merge_columns rejects non-partitions") {
    const SignedSparseMatrix m = diag_pm();
    SignedClassMap overlap;
    overlap.partition.classes = {{0, 1}, {1}};
    overlap.signs = {{1, 1}, {1}};
    CHECK_THROWS_AS(merge_columns(m, overlap), SchemaError);

    SignedClassMap bad_seed;
    bad_seed.partition.classes = {{0, 1}};
    bad_seed.signs = {{-1, 1}};
    CHECK_THROWS_AS(merge_columns(m, bad_seed), SchemaError);
}

TEST_CASE("signed_column_signature canonicalizes the leading entry") {
    ColumnVector v;
    v.length = 6;
    v.entries = {{1, -1}, {4, 1}};
    const SignSplit split = signed_column_signature(v);
    CHECK(split.sign == -1);
    CHECK(split.canonical.entries ==
          std::vector<std::pair<index_t, coeff_t>>{{1, 1}, {4, -1}});

    ColumnVector already;
    already.length = 4;
    already.entries = {{0, 1}, {2, -1}};
    const SignSplit same = signed_column_signature(already);
    CHECK(same.sign == 1);
    CHECK(same.canonical == already);

    CHECK_THROWS_AS(signed_column_signature(ColumnVector{}), SchemaError);
}

TEST_CASE("signature is invariant under global sign flips") {
    std::mt19937 rng(404);
    for (int i = 0; i < 150; ++i) {
        const ColumnVector v = oracle::random_column(rng);
        const SignSplit a = signed_column_signature(v);
        const SignSplit b = signed_column_signature(oracle::negate(v));
        CHECK(a.canonical == b.canonical);
        CHECK(a.sign == -b.sign);
    }
}

TEST_CASE("select_columns keeps the requested slice") {
    const auto acc = fixture::cube_accumulator();
    const std::vector<index_t> cols = {3, 0, 7};
    const SignedSparseMatrix picked = select_columns(acc.delta0, cols);
    CHECK(picked.ncols() == 3);
    CHECK(picked.column(0) == acc.delta0.column(3));
    CHECK(picked.column(1) == acc.delta0.column(0));
    CHECK(picked.column(2) == acc.delta0.column(7));
}
