#include "ccmerge/cluster.hpp"

#include <algorithm>
#include <cmath>

namespace ccm {

namespace {

constexpr index_t kLeafSize = 16;

void check_finite(const PointCloud& cloud) {
    for (double c : cloud.coords) {
        if (!std::isfinite(c)) {
            throw SchemaError("COORD_NONFINITE: point cloud contains a non-finite coordinate");
        }
    }
}

// Squared distance from q to the axis-aligned box. Each per-axis term is
// bounded by the matching term of squared_distance(q, p) for any p inside,
// and both sums accumulate in axis order, so box pruning can never discard
// a point that the exact leaf test would accept.
double box_distance_sq(std::span<const double> q, std::span<const double> lo,
                       std::span<const double> hi) {
    double d = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) {
        double excess = 0.0;
        if (q[a] < lo[a]) {
            excess = lo[a] - q[a];
        } else if (q[a] > hi[a]) {
            excess = q[a] - hi[a];
        }
        d += excess * excess;
    }
    return d;
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

SpatialIndex::SpatialIndex(const PointCloud& cloud) : points_(cloud) {
    if (cloud.npoints() == 0) {
        throw SchemaError("EMPTY_CLOUD: cannot index an empty point cloud");
    }
    check_finite(cloud);
    order_.resize(static_cast<std::size_t>(cloud.npoints()));
    for (index_t i = 0; i < cloud.npoints(); ++i) order_[i] = i;
    nodes_.reserve(static_cast<std::size_t>(2 * cloud.npoints() / kLeafSize + 2));
    root_ = build(0, cloud.npoints());
}

index_t SpatialIndex::build(index_t begin, index_t end) {
    const int dim = points_.dim;
    Node node;
    node.begin = begin;
    node.end = end;
    node.box_lo.assign(points_.point(order_[begin]).begin(), points_.point(order_[begin]).end());
    node.box_hi = node.box_lo;
    for (index_t i = begin + 1; i < end; ++i) {
        auto p = points_.point(order_[i]);
        for (int a = 0; a < dim; ++a) {
            node.box_lo[a] = std::min(node.box_lo[a], p[a]);
            node.box_hi[a] = std::max(node.box_hi[a], p[a]);
        }
    }
    const index_t self = static_cast<index_t>(nodes_.size());
    nodes_.push_back(std::move(node));
    if (end - begin <= kLeafSize) return self;

    // Split at the median along the widest axis.
    int axis = 0;
    double widest = -1.0;
    for (int a = 0; a < dim; ++a) {
        const double extent = nodes_[self].box_hi[a] - nodes_[self].box_lo[a];
        if (extent > widest) {
            widest = extent;
            axis = a;
        }
    }
    if (widest <= 0.0) return self;  // all points coincide, keep as leaf

    const index_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](index_t lhs, index_t rhs) {
                         const double la = points_.point(lhs)[axis];
                         const double ra = points_.point(rhs)[axis];
                         if (la != ra) return la < ra;
                         return lhs < rhs;
                     });
    const index_t left = build(begin, mid);
    const index_t right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void SpatialIndex::query(index_t node_id, std::span<const double> q, double radius_sq,
                         std::vector<index_t>& out) const {
    const Node& node = nodes_[node_id];
    if (box_distance_sq(q, node.box_lo, node.box_hi) > radius_sq) return;
    if (node.left < 0) {
        for (index_t i = node.begin; i < node.end; ++i) {
            const index_t idx = order_[i];
            if (squared_distance(q, points_.point(idx)) <= radius_sq) out.push_back(idx);
        }
        return;
    }
    query(node.left, q, radius_sq, out);
    query(node.right, q, radius_sq, out);
}

std::vector<index_t> SpatialIndex::range_query(std::span<const double> q, double radius) const {
    if (radius < 0.0) {
        throw SchemaError("RADIUS_INVALID: range query radius must be >= 0");
    }
    std::vector<index_t> out;
    query(root_, q, radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

VertexCongruence vertex_congruence(const PointCloud& cloud, Tolerance tol) {
    if (cloud.npoints() == 0) {
        throw SchemaError("EMPTY_CLOUD: vertex congruence needs at least one point");
    }
    check_finite(cloud);
    const SpatialIndex index(cloud);
    const index_t n = cloud.npoints();

    VertexCongruence result;
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    for (index_t seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        std::vector<index_t> members;
        // Everything below the seed is already visited, so the ascending
        // query result keeps the seed first.
        for (index_t near : index.range_query(cloud.point(seed), tol.epsilon)) {
            if (!visited[near]) {
                visited[near] = 1;
                members.push_back(near);
            }
        }
        result.classes.classes.push_back(std::move(members));
    }

    const index_t nclasses = result.classes.class_count();
    result.centroids = PointCloud(cloud.dim, nclasses);
    for (index_t k = 0; k < nclasses; ++k) {
        const auto& members = result.classes.classes[k];
        auto centroid = result.centroids.point(k);
        for (index_t m : members) {
            auto p = cloud.point(m);
            for (int a = 0; a < cloud.dim; ++a) centroid[a] += p[a];
        }
        for (int a = 0; a < cloud.dim; ++a) centroid[a] /= static_cast<double>(members.size());
    }
    return result;
}

}  // namespace ccm
