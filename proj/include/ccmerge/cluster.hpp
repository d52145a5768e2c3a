#pragma once

#include <span>
#include <vector>

#include "ccmerge/types.hpp"

namespace ccm {

// Dense dim x n coordinate matrix, one point per column. The CLI pins
// dim = 3; the clustering below works for any dimension.
struct PointCloud {
    int dim = 3;
    std::vector<double> coords;  // point-major: point i occupies [i*dim, (i+1)*dim)

    PointCloud() = default;
    PointCloud(int dimension, index_t npoints)
        : dim(dimension), coords(static_cast<std::size_t>(dimension) * npoints, 0.0) {}

    index_t npoints() const { return static_cast<index_t>(coords.size() / dim); }
    std::span<const double> point(index_t i) const {
        return {coords.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> point(index_t i) {
        return {coords.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }

    friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// k-d tree over a snapshot of the cloud, answering exact closed-ball range
// queries: every index i with d(q, p_i) <= r, no approximation. Read-only
// after construction, safe for concurrent queries.
class SpatialIndex {
public:
    explicit SpatialIndex(const PointCloud& cloud);

    // Indices within the closed Euclidean ball, ascending.
    std::vector<index_t> range_query(std::span<const double> q, double radius) const;

    index_t size() const { return static_cast<index_t>(order_.size()); }

private:
    struct Node {
        index_t begin;
        index_t end;      // leaf covers order_[begin..end)
        index_t left = -1;
        index_t right = -1;
        std::vector<double> box_lo;
        std::vector<double> box_hi;
    };

    index_t build(index_t begin, index_t end);
    void query(index_t node, std::span<const double> q, double radius_sq,
               std::vector<index_t>& out) const;

    PointCloud points_;
    std::vector<index_t> order_;  // permutation of point indices
    std::vector<Node> nodes_;
    index_t root_ = -1;
};

struct VertexCongruence {
    PointCloud centroids;     // one column per class, mean of member coordinates
    ClassPartition classes;   // classes in seed (scan) order
};

// Greedy epsilon-clustering: scan points in index order; every unvisited
// point seeds a class made of the not-yet-visited points within epsilon of
// it. Output is a true partition and a pure function of (coords, epsilon).
VertexCongruence vertex_congruence(const PointCloud& cloud, Tolerance tol);

}  // namespace ccm
