#ifndef SKEL_TRAPMAP_HPP
#define SKEL_TRAPMAP_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "skel/curves.hpp"
#include "skel/delaunay.hpp"

namespace skel {

using VertId = std::int32_t;
using PieceId = std::int32_t;
using TrapId = std::int32_t;
inline constexpr std::int32_t NIL = -1;

struct OwnerRef {
    std::uint32_t region;
    bool inside_below;
};

// A maximal x-monotone piece of the arrangement input. Coincident inputs are
// merged into one piece carrying every owner; crossings do not split pieces
// (trapezoids reference sub-spans implicitly).
struct Piece {
    Support support;
    VertId a = NIL, b = NIL;  // lex-ordered endpoints
    std::vector<OwnerRef> owners;  // empty for the bbox sentinels
};

struct Trapezoid {
    PieceId top = NIL, bottom = NIL;
    VertId leftv = NIL, rightv = NIL;
    std::int32_t leaf = NIL;
    bool alive = true;
    std::vector<std::uint32_t> pts;  // located input points
};

struct DagNode {
    enum Kind : std::uint8_t { X, Curve, Leaf } kind;
    std::int32_t payload;  // vertex / piece / trapezoid id
    std::int32_t lo = NIL, hi = NIL;  // X: left,right; Curve: below,above
};

// Randomized incremental trapezoidal decomposition of x-monotone curve
// pieces inside a bounding box, with a search DAG for point location and
// the dual-graph machinery for the occupied-lune traversal. Vertical order
// ties are broken by the sheared lexicographic (x, y) order throughout, so
// every vertex has its own wall and vertical segments need no special maps.
class TrapMap {
public:
    TrapMap(const std::vector<CurveSegment>& curves, const Box& bbox, std::uint64_t seed);

    // Trapezoid of a query point strictly inside the bbox; exact for
    // rational queries. Points exactly on a curve are routed below it.
    TrapId locate(const Point& p) const;
    TrapId locate_with_depth(const Point& p, std::size_t* depth) const;

    // Records every point into its trapezoid's point list.
    void locate_points(const PointSet& pts);

    // Region set containing each face, from a dual-graph walk off a seed
    // face whose membership is established by direct exact tests.
    void prepare_membership(const std::vector<Region>& regions);
    const std::vector<std::uint32_t>& membership(TrapId t) const;

    // The depth-first dual traversal with the lune table and active list.
    // occupied[r] ends true iff some located point, not a site of region r,
    // lies in it under `closure`. check_invariants enables the per-step
    // active-list audit (quadratic in map size; tests only).
    std::vector<char> dual_traverse_mark(const std::vector<Region>& regions,
                                         const std::vector<EdgePair>& region_sites,
                                         const PointSet& pts, Closure closure,
                                         bool check_invariants = false);

    const std::vector<Trapezoid>& traps() const { return traps_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<SpecialPoint>& verts() const { return verts_; }
    const Box& bbox() const { return bbox_; }
    std::size_t alive_count() const;

    // structural audit for tests: span sanity, DAG reachability, registry
    // and adjacency symmetry
    bool validate() const;

private:
    Box bbox_;
    std::vector<SpecialPoint> verts_;
    std::vector<Piece> pieces_;
    std::vector<Trapezoid> traps_;
    std::vector<DagNode> dag_;
    std::vector<std::vector<TrapId>> right_of_vert_;  // traps with leftv == v
    std::vector<std::vector<TrapId>> left_of_vert_;   // traps with rightv == v

    struct Adj {
        TrapId other;
        PieceId piece;  // NIL for wall adjacency
        bool down;      // crossing moves from above the piece to below it
    };
    std::vector<std::vector<Adj>> adj_;
    bool adj_built_ = false;

    std::vector<std::vector<std::uint32_t>> membership_;
    TrapId seed_trap_ = NIL;
    Point seed_point_;
    bool membership_ready_ = false;

    struct PointLexLess {
        bool operator()(const SpecialPoint& a, const SpecialPoint& b) const {
            return lex_cmp(a, b) < 0;
        }
    };
    std::map<SpecialPoint, VertId, PointLexLess> vert_index_;

    VertId intern_vertex(const SpecialPoint& p);
    TrapId new_trap(PieceId top, PieceId bottom, VertId l, VertId r);
    void kill(TrapId t);
    std::int32_t new_leaf(TrapId t);
    int side_of_piece(const SpecialPoint& q, PieceId p) const;
    TrapId locate_for_insert(const SpecialPoint& q, const Support& dir) const;
    void insert_piece(PieceId c);
    TrapId split_at_vertex(TrapId t, VertId v);
    TrapId pick_right_neighbor(VertId v, int side_of_new_curve) const;
    void build_adjacency();
    Point find_seed_point(const std::vector<Region>& regions) const;

    friend struct TrapMapTester;
};

}  // namespace skel

#endif
