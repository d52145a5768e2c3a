#pragma once

#include <cstdint>

#include "ccmerge/congruence.hpp"

namespace ccm {

// Synthetic accumulator fixtures: the 2-cells of a cuboid-grid mesh exploded
// into independent per-face blocks (4 vertex instances, 4 edges and one face
// row each), with a seeded random rigid motion applied to the whole mesh and
// optional per-instance jitter. Fixed seed means bit-identical output.
struct GenSpec {
    enum class Kind { cube, grid };

    Kind kind = Kind::cube;
    int p = 1, q = 1, r = 1;      // grid cell counts per axis (grid kind)
    double jitter = 0.0;          // max per-instance displacement, must be < epsilon/2
    std::uint64_t seed = 0;
    double epsilon = 1e-6;        // clustering tolerance the fixture targets
};

// Closed-form merged counts for a p x q x r grid surface-and-interior mesh.
struct GridCounts {
    index_t vertices;
    index_t edges;
    index_t faces;
};

GridCounts grid_counts(int p, int q, int r);

// Throws SchemaError when sizes < 1, jitter is out of [0, epsilon/2), or the
// mesh's minimum edge length does not exceed 10 * epsilon.
AccumulatorComplex generate_exploded(const GenSpec& spec);

}  // namespace ccm
