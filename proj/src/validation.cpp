#include "ccmerge/validation.hpp"

#include <algorithm>

namespace ccm {

bool check_dd_zero(const SignedSparseMatrix& delta0, const SignedSparseMatrix& delta1) {
    return matmul(delta1, delta0).nnz() == 0;
}

long long euler_characteristic(std::span<const index_t> counts) {
    long long chi = 0;
    long long sign = 1;
    for (index_t c : counts) {
        chi += sign * c;
        sign = -sign;
    }
    return chi;
}

namespace {

bool check_one_partition(const ClassPartition& classes, index_t survivors, index_t dropped,
                         index_t input_size, const std::string& rank,
                         std::vector<std::string>* violations) {
    auto fail = [&](const std::string& msg) {
        if (violations) violations->push_back(rank + ": " + msg);
        return false;
    };
    if (survivors + dropped != input_size) {
        return fail("classes cover " + std::to_string(survivors) + " survivors and " +
                    std::to_string(dropped) + " dropped cells, but the input had " +
                    std::to_string(input_size));
    }
    std::vector<char> seen(static_cast<std::size_t>(survivors), 0);
    for (const auto& cls : classes.classes) {
        if (cls.empty()) return fail("empty class");
        for (index_t member : cls) {
            if (member < 0 || member >= survivors) {
                return fail("member " + std::to_string(member + 1) + " outside 1.." +
                            std::to_string(survivors));
            }
            if (seen[member]) {
                return fail("member " + std::to_string(member + 1) + " appears in two classes");
            }
            seen[member] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        return fail("some surviving cells belong to no class");
    }
    return true;
}

}  // namespace

bool check_partitions(const QuotientComplex& q, const std::array<index_t, 3>& input_sizes,
                      std::vector<std::string>* violations) {
    bool ok = true;
    ok &= check_one_partition(q.vclasses, q.vclasses.member_count(), 0, input_sizes[0],
                              "vertex classes", violations);
    ok &= check_one_partition(q.eclasses.partition, q.eclasses.partition.member_count(),
                              static_cast<index_t>(q.dropped_edges.size()), input_sizes[1],
                              "edge classes", violations);
    ok &= check_one_partition(q.fclasses.partition, q.fclasses.partition.member_count(),
                              static_cast<index_t>(q.dropped_faces.size()), input_sizes[2],
                              "face classes", violations);
    return ok;
}

ValidationReport validate_quotient(const QuotientComplex& q,
                                   std::optional<std::array<index_t, 3>> input_sizes,
                                   std::optional<long long> euler_expected) {
    ValidationReport report;
    report.counts = {q.vertices.npoints(), q.ev.size(), q.fe.size()};
    report.dropped = {0, static_cast<index_t>(q.dropped_edges.size()),
                      static_cast<index_t>(q.dropped_faces.size())};
    report.euler_value = euler_characteristic(report.counts);
    report.euler_expected = euler_expected;
    if (euler_expected && *euler_expected != report.euler_value) {
        report.violations.push_back("euler: value " + std::to_string(report.euler_value) +
                                    " differs from expected " + std::to_string(*euler_expected) +
                                    " (advisory)");
    }

    const std::array<index_t, 3> sizes = input_sizes.value_or(std::array<index_t, 3>{
        q.vclasses.member_count(),
        static_cast<index_t>(q.eclasses.partition.member_count() + q.dropped_edges.size()),
        static_cast<index_t>(q.fclasses.partition.member_count() + q.dropped_faces.size())});
    report.partitions_ok = check_partitions(q, sizes, &report.violations);

    if (q.delta0 && q.delta1) {
        if (q.delta0->nrows() != q.delta1->ncols()) {
            report.dd_zero = false;
            report.violations.push_back("dd: delta1 has " + std::to_string(q.delta1->ncols()) +
                                        " columns, delta0 has " + std::to_string(q.delta0->nrows()) +
                                        " rows");
        } else {
            report.dd_zero = check_dd_zero(*q.delta0, *q.delta1);
            if (!*report.dd_zero) {
                report.violations.push_back("dd: [d1][d0] is not the zero matrix");
            }
        }
    }
    return report;
}

}  // namespace ccm
