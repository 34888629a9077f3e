#ifndef SKEL_SKELETON_HPP
#define SKEL_SKELETON_HPP

#include <optional>
#include <string>

#include "skel/delaunay.hpp"
#include "skel/region.hpp"

namespace skel {

struct PhaseTimings {
    double dt = 0, build = 0, locate = 0, traverse = 0, post = 0, verify = 0;
    double total() const { return dt + build + locate + traverse + post + verify; }
};

struct RunStats {
    std::string algorithm;
    Beta beta;
    Closure closure = Closure::Open;
    std::size_t m = 0;            // group size (batched only)
    std::size_t group_count = 0;
    PhaseTimings timings;
    bool degenerate_ties = false;  // cocircular tie met while triangulating
    bool verified = false;         // paranoid re-check passed
};

struct SkeletonGraph {
    std::uint32_t n = 0;
    std::vector<EdgePair> edges;  // unique, lexicographically sorted
    RunStats stats;
};

struct AlgoConfig {
    std::optional<std::size_t> group_size_override;
    bool parallel_groups = false;
    bool paranoid_verify = false;
    std::uint64_t rng_seed = 0;
};

// ceil(sqrt(n * log2(max(n, 2)))), clamped to >= 1 — the group size that
// balances the per-group subdivision cost against the location work.
std::size_t choose_group_size(std::size_t n);

// Definition executed literally over all pairs: the ground-truth oracle for
// every beta and both variants. O(n^3).
SkeletonGraph brute_force(const PointSet& points, const Beta& beta, Variant variant,
                          Closure closure);

// Tests every Delaunay edge against all points; lune-based beta > 2 only.
// O(n * |DT|).
SkeletonGraph dt_filter(const PointSet& points, const Beta& beta, Closure closure);

// The batched algorithm: Delaunay candidates, per-group lune arrangements,
// point location, and the dual-graph marking traversal. Lune-based beta > 2.
SkeletonGraph batched(const PointSet& points, const Beta& beta, Closure closure,
                      const AlgoConfig& cfg = {});

}  // namespace skel

#endif
