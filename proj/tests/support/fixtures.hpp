#pragma once

#include <utility>
#include <vector>

#include "cks/graph.hpp"
#include "cks/inequality.hpp"

namespace cks::fixtures {

inline Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e);
}

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    e.emplace_back(0, n - 1);
    return Graph(n, e);
}

/// leaves 0..nleaves-1, center = nleaves
inline Graph star(int nleaves) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < nleaves; ++v) e.emplace_back(v, nleaves);
    return Graph(nleaves + 1, e);
}

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

/// Two triangles {0,1,2} and {4,5,6} glued through vertex 3, which is adjacent
/// to 1,2,4,5.
inline Graph twin_triangles() {
    return Graph(7, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}});
}

/// K_{2,3} between {3,4} and {0,1,2} minus the edge {4,2}: vertex 3 is adjacent
/// to 0,1,2 and vertex 4 to 0,1.
inline Graph k23_minus_edge() {
    return Graph(5, {{0, 3}, {1, 3}, {2, 3}, {0, 4}, {1, 4}});
}

/// Single class c of a path on 5 vertices set to 1/2 on the endpoints and
/// middle, 0 in between.
inline FractionalPoint path5_halves(int k = 1, int cls = 0) {
    FractionalPoint x(5, k);
    x.at(0, cls) = Rat(1, 2);
    x.at(2, cls) = Rat(1, 2);
    x.at(4, cls) = Rat(1, 2);
    return x;
}

/// The twin-triangle point: 1/2 on vertices 0,3,6, 1/16 on 1,4, 1/8 on 2,5.
inline FractionalPoint twin_triangles_point(int k = 1, int cls = 0) {
    FractionalPoint x(7, k);
    x.at(0, cls) = Rat(1, 2);
    x.at(1, cls) = Rat(1, 16);
    x.at(2, cls) = Rat(1, 8);
    x.at(3, cls) = Rat(1, 2);
    x.at(4, cls) = Rat(1, 16);
    x.at(5, cls) = Rat(1, 8);
    x.at(6, cls) = Rat(1, 2);
    return x;
}

/// Star with 3 leaves, k = 2: every leaf 1/2 in both classes, center 1/4.
inline FractionalPoint star3_saturated_point() {
    FractionalPoint x(4, 2);
    for (int v = 0; v < 3; ++v)
        for (int c = 0; c < 2; ++c) x.at(v, c) = Rat(1, 2);
    x.at(3, 0) = Rat(1, 4);
    x.at(3, 1) = Rat(1, 4);
    return x;
}

}  // namespace cks::fixtures
