#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccmerge/congruence.hpp"
#include "ccmerge/sparse.hpp"

namespace ccm {

struct ValidationReport {
    std::optional<bool> dd_zero;  // absent when the quotient carries no operators
    long long euler_value = 0;
    std::optional<long long> euler_expected;
    bool partitions_ok = true;
    std::array<index_t, 3> counts{0, 0, 0};   // #V, #E, #F
    std::array<index_t, 3> dropped{0, 0, 0};  // degenerate cells per rank
    std::vector<std::string> violations;

    bool passed() const { return partitions_ok && dd_zero.value_or(true); }
};

// True iff the product [d1][d0] has no nonzeros. Dimension mismatch throws.
bool check_dd_zero(const SignedSparseMatrix& delta0, const SignedSparseMatrix& delta1);

// Alternating sum of per-rank cell counts, starting at rank 0.
long long euler_characteristic(std::span<const index_t> counts);

// True iff each class map of q is a disjoint cover of its surviving cells,
// with survivors plus recorded degenerate drops accounting for the input
// sizes (#vertex instances, #local edges, #local faces). Diagnostics are
// appended to `violations` when given.
bool check_partitions(const QuotientComplex& q, const std::array<index_t, 3>& input_sizes,
                      std::vector<std::string>* violations = nullptr);

// Full advisory report. Input sizes default to the ones recorded in the
// quotient's own class maps. The Euler value is always reported and never
// fails the check; dd and partition coverage are the hard criteria.
ValidationReport validate_quotient(const QuotientComplex& q,
                                   std::optional<std::array<index_t, 3>> input_sizes = {},
                                   std::optional<long long> euler_expected = {});

}  // namespace ccm
