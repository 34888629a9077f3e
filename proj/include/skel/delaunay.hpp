#ifndef SKEL_DELAUNAY_HPP
#define SKEL_DELAUNAY_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "skel/coord.hpp"

namespace skel {

using EdgePair = std::pair<std::uint32_t, std::uint32_t>;  // i < j

// Finished Delaunay triangulation. Triangles are counterclockwise triples of
// point indices. Half-edge k of triangle t has id 3t+k and runs from
// vertex k to vertex (k+1)%3 of that triangle.
struct Triangulation {
    const PointSet* points = nullptr;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<EdgePair> edge_list;     // sorted, unique; includes hull chains
    std::vector<std::int32_t> he_twin;   // -1 on the hull
    std::vector<std::int32_t> he_next;
    bool degenerate_ties = false;        // a cocircular tie was resolved arbitrarily
};

// Randomized incremental construction; `seed` drives the insertion shuffle
// and nothing else. Throws input_error on n < 2 or duplicate points.
Triangulation triangulate(const PointSet& points, std::uint64_t seed = 0);

// Lexicographically sorted (i, j) pairs, i < j.
const std::vector<EdgePair>& edges(const Triangulation& t);

// Exhaustive exact check of the structural and empty-circumcircle
// invariants; O(n * #triangles).
bool validate(const Triangulation& t);

}  // namespace skel

#endif
