#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccm {

// Cell/point indices are 0-based everywhere in memory; the JSON interchange
// formats and the triple encoding are 1-based (see io.hpp).
using index_t = std::int32_t;
using coeff_t = std::int32_t;

// Error taxonomy maps onto the CLI exit codes: SchemaError -> 2 (bad input
// data or parameters), ValidationError -> 1 (topological check failed on
// well-formed input), InternalError -> 3 (broken internal invariant).
// Messages start with a stable machine-parsable code token, e.g.
// "DD_NONZERO: ...".
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

// Clustering tolerance in model length units.
struct Tolerance {
    double epsilon = 1e-6;

    Tolerance() = default;
    explicit Tolerance(double eps) : epsilon(eps) {
        if (!std::isfinite(eps) || eps <= 0.0) {
            throw SchemaError("EPSILON_INVALID: epsilon must be finite and > 0, got " +
                              std::to_string(eps));
        }
    }
};

// Ordered partition of {0..n-1}. Classes are ordered by their seed (first)
// member; within a class the seed comes first.
struct ClassPartition {
    std::vector<std::vector<index_t>> classes;

    index_t class_count() const { return static_cast<index_t>(classes.size()); }
    index_t member_count() const {
        std::size_t n = 0;
        for (const auto& c : classes) n += c.size();
        return static_cast<index_t>(n);
    }

    static ClassPartition identity(index_t n);

    // Throws SchemaError unless the classes are nonempty, pairwise disjoint
    // and cover {0..n-1} exactly.
    void validate(index_t n, const std::string& what) const;
};

// Partition plus a per-member orientation sign; the seed of every class
// carries +1. `signs` is empty for sign-lossy (array-of-arrays) results.
struct SignedClassMap {
    ClassPartition partition;
    std::vector<std::vector<std::int8_t>> signs;

    bool has_signs() const { return !signs.empty(); }

    static SignedClassMap all_positive(ClassPartition p);

    void validate(index_t n, const std::string& what) const;
};

}  // namespace ccm
