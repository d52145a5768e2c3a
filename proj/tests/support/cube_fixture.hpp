#pragma once

// Golden fixture: a randomly rotated cube whose six faces were generated
// independently, giving 24 vertex instances, 24 local edges and 6 local
// faces. Merging with epsilon = 1e-6 must yield 8 vertices, 12 edges and
// 6 faces.

#include <algorithm>
#include <array>
#include <vector>

#include "ccmerge/congruence.hpp"

namespace fixture {

inline const std::array<std::array<double, 3>, 24> kCubeInstances = {{
    {0.5310492999999998, 0.8659989999999999, 0.14191280000000003},
    {1.0146684, 0.6827212999999999, 0.2169682},
    {0.3477716, 0.5268921, 0.4947971000000001},
    {0.8313907882395298, 0.3436144447063971, 0.5698524407571428},
    {0.6061046999999998, 1.2188832999999994, 0.5200012},
    {1.0897237999999998, 1.0356056999999999, 0.5950565999999999},
    {0.42282699999999984, 0.8797763999999998, 0.8728855},
    {0.9064461979373597, 0.6964987903021808, 0.9479408896095312},
    {0.5310493, 0.8659989999999999, 0.14191279999999987},
    {1.0146684000000001, 0.6827213, 0.21696819999999994},
    {0.6061047, 1.2188833, 0.5200011999999999},
    {1.0897237772434623, 1.035605657895053, 0.5950566438156151},
    {0.3477716, 0.5268921, 0.4947971},
    {0.8313908, 0.3436145, 0.5698525000000001},
    {0.422827, 0.8797764000000001, 0.8728855},
    {0.9064462, 0.6964988, 0.9479409},
    {0.5310493, 0.8659989999999999, 0.14191280000000006},
    {0.34777160000000007, 0.5268920999999999, 0.4947971000000001},
    {0.6061047, 1.2188833, 0.5200012000000002},
    {0.4228270000000002, 0.8797764, 0.8728855000000001},
    {1.0146684, 0.6827213, 0.21696819999999994},
    {0.8313908, 0.3436145, 0.5698525000000001},
    {1.0897238, 1.0356057, 0.5950565999999999},
    {0.9064461675456482, 0.6964988122992563, 0.9479408949632379},
}};

// (row, col, value) triples, 1-based.
inline const std::array<std::array<int, 3>, 48> kCubeDelta0 = {{
    {1, 1, -1},   {3, 1, -1},   {1, 2, 1},    {4, 2, -1},   {2, 3, -1},   {3, 3, 1},
    {2, 4, 1},    {4, 4, 1},    {5, 5, -1},   {7, 5, -1},   {5, 6, 1},    {8, 6, -1},
    {6, 7, -1},   {7, 7, 1},    {6, 8, 1},    {8, 8, 1},    {9, 9, -1},   {11, 9, -1},
    {9, 10, 1},   {12, 10, -1}, {10, 11, -1}, {11, 11, 1},  {10, 12, 1},  {12, 12, 1},
    {13, 13, -1}, {15, 13, -1}, {13, 14, 1},  {16, 14, -1}, {14, 15, -1}, {15, 15, 1},
    {14, 16, 1},  {16, 16, 1},  {17, 17, -1}, {19, 17, -1}, {17, 18, 1},  {20, 18, -1},
    {18, 19, -1}, {19, 19, 1},  {18, 20, 1},  {20, 20, 1},  {21, 21, -1}, {23, 21, -1},
    {21, 22, 1},  {24, 22, -1}, {22, 23, -1}, {23, 23, 1},  {22, 24, 1},  {24, 24, 1},
}};

inline const std::array<std::array<int, 3>, 24> kCubeDelta1 = {{
    {1, 1, 1},   {1, 2, -1},  {1, 3, -1},  {1, 4, 1},   {2, 5, 1},   {2, 6, -1},
    {2, 7, -1},  {2, 8, 1},   {3, 9, 1},   {3, 10, -1}, {3, 11, -1}, {3, 12, 1},
    {4, 13, 1},  {4, 14, -1}, {4, 15, -1}, {4, 16, 1},  {5, 17, 1},  {5, 18, -1},
    {5, 19, -1}, {5, 20, 1},  {6, 21, 1},  {6, 22, -1}, {6, 23, -1}, {6, 24, 1},
}};

// Reference centroids of the 8 vertex classes (about 6 significant digits).
inline const std::array<std::array<double, 3>, 8> kCubeCentroids = {{
    {0.531049, 0.865999, 0.141913},
    {1.01467, 0.682721, 0.216968},
    {0.347772, 0.526892, 0.494797},
    {0.831391, 0.343614, 0.569852},
    {0.606105, 1.21888, 0.520001},
    {1.08972, 1.03561, 0.595057},
    {0.422827, 0.879776, 0.872886},
    {0.906446, 0.696499, 0.947941},
}};

// Reference cell arrays, 1-based and listed in lexicographic order. The
// face entries index edges by their first-occurrence number.
inline const std::vector<std::vector<int>> kCubeEvSorted = {
    {1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 6}, {3, 4},
    {3, 7}, {4, 8}, {5, 6}, {5, 7}, {6, 8}, {7, 8}};

inline const std::vector<std::vector<int>> kCubeFeSorted = {
    {1, 2, 3, 4}, {1, 5, 9, 10}, {2, 6, 11, 12}, {3, 7, 9, 11}, {4, 8, 10, 12}, {5, 6, 7, 8}};

// The same data in the engines' first-occurrence order.
inline const std::vector<std::vector<int>> kCubeEv = {
    {1, 2}, {3, 4}, {1, 3}, {2, 4}, {5, 6}, {7, 8},
    {5, 7}, {6, 8}, {1, 5}, {2, 6}, {3, 7}, {4, 8}};

inline const std::vector<std::vector<int>> kCubeFe = {
    {1, 2, 3, 4}, {5, 6, 7, 8}, {1, 5, 9, 10}, {2, 6, 11, 12}, {3, 7, 9, 11}, {4, 8, 10, 12}};

inline const std::vector<std::vector<int>> kCubeVertexClasses = {
    {1, 9, 17}, {2, 10, 21}, {3, 13, 18}, {4, 14, 22},
    {5, 11, 19}, {6, 12, 23}, {7, 15, 20}, {8, 16, 24}};

inline ccm::PointCloud cube_instances() {
    ccm::PointCloud cloud(3, 24);
    for (ccm::index_t i = 0; i < 24; ++i) {
        for (int a = 0; a < 3; ++a) cloud.point(i)[a] = kCubeInstances[i][a];
    }
    return cloud;
}

inline ccm::AccumulatorComplex cube_accumulator() {
    ccm::AccumulatorComplex acc;
    acc.vertices = cube_instances();
    std::vector<ccm::Triple> d0;
    for (const auto& t : kCubeDelta0) d0.push_back({t[0], t[1], t[2]});
    std::vector<ccm::Triple> d1;
    for (const auto& t : kCubeDelta1) d1.push_back({t[0], t[1], t[2]});
    acc.delta0 = ccm::SignedSparseMatrix::from_triples(24, 24, d0);
    acc.delta1 = ccm::SignedSparseMatrix::from_triples(6, 24, d1);
    return acc;
}

// Converts 1-based expectation lists to the library's 0-based cells.
inline ccm::CellArray cells_from_1based(const std::vector<std::vector<int>>& lists) {
    ccm::CellArray out;
    for (const auto& list : lists) {
        std::vector<ccm::index_t> cell;
        for (int v : list) cell.push_back(v - 1);
        out.cells.push_back(std::move(cell));
    }
    return out;
}

inline ccm::CellArray sorted_cells(ccm::CellArray cells) {
    std::sort(cells.cells.begin(), cells.cells.end());
    return cells;
}

}  // namespace fixture
