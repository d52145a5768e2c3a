#include "ccmerge/generate.hpp"

#include <array>
#include <cmath>
#include <random>

namespace ccm {

namespace {

// All randomness goes through explicit mappings of raw mt19937_64 output so
// generated fixtures do not depend on the standard library's distribution
// implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_pm1(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

// Uniform random rotation from a normalized quaternion.
std::array<std::array<double, 3>, 3> random_rotation(std::mt19937_64& rng) {
    double q[4];
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& c : q) {
            // Box-Muller, one gaussian per pair member.
            const double u = uniform01(rng);
            const double v = uniform01(rng);
            c = std::sqrt(-2.0 * std::log(u + 1e-300)) * std::cos(2.0 * M_PI * v);
            norm += c * c;
        }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    const double w = q[0] / norm, x = q[1] / norm, y = q[2] / norm, z = q[3] / norm;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

}  // namespace

GridCounts grid_counts(int p, int q, int r) {
    const auto v = static_cast<index_t>((p + 1) * (q + 1) * (r + 1));
    const auto e = static_cast<index_t>(p * (q + 1) * (r + 1) + q * (p + 1) * (r + 1) +
                                        r * (p + 1) * (q + 1));
    const auto f =
        static_cast<index_t>(p * q * (r + 1) + p * r * (q + 1) + q * r * (p + 1));
    return {v, e, f};
}

AccumulatorComplex generate_exploded(const GenSpec& spec) {
    int dims[3] = {spec.p, spec.q, spec.r};
    if (spec.kind == GenSpec::Kind::cube) {
        dims[0] = dims[1] = dims[2] = 1;
    }
    for (int d : dims) {
        if (d < 1) {
            throw SchemaError("PARAM_INVALID: grid sizes must be >= 1");
        }
    }
    Tolerance tol(spec.epsilon);
    if (!(spec.jitter >= 0.0) || spec.jitter >= tol.epsilon / 2.0) {
        throw SchemaError("PARAM_INVALID: jitter must satisfy 0 <= jitter < epsilon/2");
    }

    std::mt19937_64 rng(spec.seed);
    double scale = 1.0;
    if (spec.kind == GenSpec::Kind::cube) {
        scale = 0.5 + uniform01(rng);  // random cube size in [0.5, 1.5)
    }
    if (scale <= 10.0 * tol.epsilon) {
        throw SchemaError("PARAM_INVALID: minimum edge length " + std::to_string(scale) +
                          " does not exceed 10 * epsilon");
    }
    const auto rot = random_rotation(rng);
    const double shift[3] = {uniform_pm1(rng), uniform_pm1(rng), uniform_pm1(rng)};

    // One block per grid face: corners in plane-axis order (v1 v2 / v3 v4),
    // edges v1->v2, v3->v4, v1->v3, v2->v4 and the face +e1 -e2 -e3 +e4.
    std::vector<std::array<std::array<int, 3>, 4>> faces;
    for (int normal = 0; normal < 3; ++normal) {
        const int b = normal == 0 ? 1 : 0;
        const int c = normal == 2 ? 1 : 2;
        for (int plane = 0; plane <= dims[normal]; ++plane) {
            for (int u = 0; u < dims[b]; ++u) {
                for (int v = 0; v < dims[c]; ++v) {
                    std::array<std::array<int, 3>, 4> corners;
                    for (int k = 0; k < 4; ++k) {
                        std::array<int, 3> lattice{};
                        lattice[normal] = plane;
                        lattice[b] = u + (k & 1);
                        lattice[c] = v + (k >> 1);
                        corners[k] = lattice;
                    }
                    faces.push_back(corners);
                }
            }
        }
    }

    const index_t nfaces = static_cast<index_t>(faces.size());
    AccumulatorComplex acc;
    acc.vertices = PointCloud(3, 4 * nfaces);
    std::vector<Triple> d0;
    std::vector<Triple> d1;
    d0.reserve(static_cast<std::size_t>(8 * nfaces));
    d1.reserve(static_cast<std::size_t>(4 * nfaces));
    const double jitter_axis = spec.jitter / std::sqrt(3.0);
    for (index_t f = 0; f < nfaces; ++f) {
        const index_t v0 = 4 * f;  // first vertex instance of this block, 0-based
        const index_t e0 = 4 * f;
        for (int k = 0; k < 4; ++k) {
            auto out = acc.vertices.point(v0 + k);
            const auto& lat = faces[f][k];
            for (int a = 0; a < 3; ++a) {
                double coord = shift[a];
                for (int j = 0; j < 3; ++j) coord += rot[a][j] * (scale * lat[j]);
                out[a] = coord;
            }
            for (int a = 0; a < 3; ++a) out[a] += jitter_axis * uniform_pm1(rng);
        }
        const int edge_ends[4][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
        for (int k = 0; k < 4; ++k) {
            d0.push_back({e0 + k + 1, v0 + edge_ends[k][0] + 1, -1});
            d0.push_back({e0 + k + 1, v0 + edge_ends[k][1] + 1, +1});
        }
        const coeff_t face_coeff[4] = {+1, -1, -1, +1};
        for (int k = 0; k < 4; ++k) {
            d1.push_back({f + 1, e0 + k + 1, face_coeff[k]});
        }
    }
    acc.delta0 = SignedSparseMatrix::from_triples(4 * nfaces, 4 * nfaces, d0);
    acc.delta1 = SignedSparseMatrix::from_triples(nfaces, 4 * nfaces, d1);
    return acc;
}

}  // namespace ccm
