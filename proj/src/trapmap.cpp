#include "skel/trapmap.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

namespace skel {

namespace {

// canonical (A, B, K) carrier-line key with first nonzero coefficient == 1
struct LineKey {
    Rat a, b, k;
    bool operator<(const LineKey& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return k < o.k;
    }
};

LineKey carrier_key(const SegSupport& s) {
    Rat A = s.y0 - s.y1, B = s.x1 - s.x0, K = A * s.x0 + B * s.y0;
    if (sign(A) != 0) return {Rat(1), B / A, K / A};
    return {Rat(0), Rat(1), K / B};
}

struct ArcKey {
    Rat cx, cy, r_sq;
    bool upper;
    bool operator<(const ArcKey& o) const {
        if (upper != o.upper) return upper < o.upper;
        if (cx != o.cx) return cx < o.cx;
        if (cy != o.cy) return cy < o.cy;
        return r_sq < o.r_sq;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

VertId TrapMap::intern_vertex(const SpecialPoint& p) {
    auto it = vert_index_.find(p);
    if (it != vert_index_.end()) return it->second;
    VertId id = static_cast<VertId>(verts_.size());
    verts_.push_back(p);
    right_of_vert_.emplace_back();
    left_of_vert_.emplace_back();
    vert_index_.emplace(p, id);
    return id;
}

TrapId TrapMap::new_trap(PieceId top, PieceId bottom, VertId l, VertId r) {
    TrapId id = static_cast<TrapId>(traps_.size());
    traps_.push_back(Trapezoid{top, bottom, l, r, NIL, true, {}});
    right_of_vert_[l].push_back(id);
    left_of_vert_[r].push_back(id);
    return id;
}

void TrapMap::kill(TrapId t) { traps_[t].alive = false; }

std::int32_t TrapMap::new_leaf(TrapId t) {
    std::int32_t id = static_cast<std::int32_t>(dag_.size());
    dag_.push_back(DagNode{DagNode::Leaf, t, NIL, NIL});
    traps_[t].leaf = id;
    return id;
}

int TrapMap::side_of_piece(const SpecialPoint& q, PieceId p) const {
    return point_vs_support(q, pieces_[p].support);
}

TrapMap::TrapMap(const std::vector<CurveSegment>& curves, const Box& bbox, std::uint64_t seed)
    : bbox_(bbox) {
    const Rat &xlo = bbox.xlo.exact(), &ylo = bbox.ylo.exact();
    const Rat &xhi = bbox.xhi.exact(), &yhi = bbox.yhi.exact();
    if (sign(xhi - xlo) <= 0 || sign(yhi - ylo) <= 0)
        throw precondition_error("trapmap: empty bounding box");

    // sentinels: pieces 0 (bottom edge) and 1 (top edge)
    pieces_.push_back(Piece{Support::make_seg(xlo, ylo, xhi, ylo),
                            intern_vertex(SpecialPoint::rational(xlo, ylo)),
                            intern_vertex(SpecialPoint::rational(xhi, ylo)),
                            {}});
    pieces_.push_back(Piece{Support::make_seg(xlo, yhi, xhi, yhi),
                            intern_vertex(SpecialPoint::rational(xlo, yhi)),
                            intern_vertex(SpecialPoint::rational(xhi, yhi)),
                            {}});
    TrapId t0 = new_trap(1, 0, pieces_[0].a, pieces_[1].b);
    new_leaf(t0);  // DAG root is node 0

    // merge coincident carriers into multi-owner pieces
    std::map<ArcKey, std::vector<const CurveSegment*>> arc_groups;
    std::map<LineKey, std::vector<const CurveSegment*>> seg_groups;
    for (const CurveSegment& cs : curves) {
        if (lex_cmp(cs.a, cs.b) >= 0)
            throw precondition_error("trapmap: curve piece not lex-monotone");
        if (cs.support.kind == Support::Arc)
            arc_groups[{cs.support.arc.cx, cs.support.arc.cy, cs.support.arc.r_sq,
                        cs.support.arc.upper}]
                .push_back(&cs);
        else
            seg_groups[carrier_key(cs.support.seg)].push_back(&cs);
    }
    std::vector<PieceId> order;
    auto emit_group = [&](const std::vector<const CurveSegment*>& group) {
        if (group.size() == 1) {
            const CurveSegment& cs = *group[0];
            PieceId id = static_cast<PieceId>(pieces_.size());
            pieces_.push_back(Piece{cs.support, intern_vertex(cs.a), intern_vertex(cs.b),
                                    {OwnerRef{cs.owner, cs.inside_below}}});
            order.push_back(id);
            return;
        }
        // overlapping coincident pieces: split at every endpoint, then emit
        // each covered interval once with all covering owners
        std::vector<SpecialPoint> brk;
        for (const CurveSegment* cs : group) {
            brk.push_back(cs->a);
            brk.push_back(cs->b);
        }
        std::sort(brk.begin(), brk.end(),
                  [](const SpecialPoint& u, const SpecialPoint& v) { return lex_cmp(u, v) < 0; });
        brk.erase(std::unique(brk.begin(), brk.end(),
                              [](const SpecialPoint& u, const SpecialPoint& v) {
                                  return lex_cmp(u, v) == 0;
                              }),
                  brk.end());
        for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
            std::vector<OwnerRef> owners;
            for (const CurveSegment* cs : group)
                if (lex_cmp(cs->a, brk[i]) <= 0 && lex_cmp(cs->b, brk[i + 1]) >= 0)
                    owners.push_back(OwnerRef{cs->owner, cs->inside_below});
            if (owners.empty()) continue;
            PieceId id = static_cast<PieceId>(pieces_.size());
            pieces_.push_back(Piece{group[0]->support, intern_vertex(brk[i]),
                                    intern_vertex(brk[i + 1]), std::move(owners)});
            order.push_back(id);
        }
    };
    for (auto& [key, group] : arc_groups) emit_group(group);
    for (auto& [key, group] : seg_groups) emit_group(group);

    SplitMix64 rng(seed ^ 0x93c8f6ab12d4e5f7ULL);
    shuffle(order, rng);
    for (PieceId c : order) insert_piece(c);
}

// ---------------------------------------------------------------------------
// point location
// ---------------------------------------------------------------------------

TrapId TrapMap::locate_for_insert(const SpecialPoint& q, const Support& dir) const {
    std::int32_t node = 0;
    for (;;) {
        const DagNode& nd = dag_[node];
        if (nd.kind == DagNode::Leaf) return nd.payload;
        if (nd.kind == DagNode::X) {
            int c = lex_cmp(q, verts_[nd.payload]);
            node = c < 0 ? nd.lo : nd.hi;  // ties go right: the piece continues rightward
        } else {
            int s = point_vs_support(q, pieces_[nd.payload].support);
            if (s == 0) s = order_rightward(q, dir, pieces_[nd.payload].support);
            assert(s != 0 && "coincident supports reached the DAG");
            node = s > 0 ? nd.hi : nd.lo;
        }
    }
}

TrapId TrapMap::locate_with_depth(const Point& p, std::size_t* depth) const {
    if (!bbox_.strictly_inside(p))
        throw precondition_error("locate: query outside the bounding box");
    double qx = p.x.approx(), qy = p.y.approx();
    std::int32_t node = 0;
    std::size_t steps = 0;
    for (;;) {
        const DagNode& nd = dag_[node];
        ++steps;
        if (nd.kind == DagNode::Leaf) {
            if (depth) *depth = steps;
            return nd.payload;
        }
        if (nd.kind == DagNode::X) {
            const SpecialPoint& v = verts_[nd.payload];
            double mar = 4e-16 * (std::abs(qx) + std::abs(v.xlo) + std::abs(v.xhi));
            if (qx < v.xlo - mar)
                node = nd.lo;
            else if (qx > v.xhi + mar)
                node = nd.hi;
            else {
                int c = quad_cmp(QuadVal(p.x.exact()), v.x());
                if (c == 0) {
                    int cy = quad_cmp(QuadVal(p.y.exact()), v.y());
                    c = cy == 0 ? 0 : cy;
                }
                node = c < 0 ? nd.lo : nd.hi;
            }
        } else {
            bool certain;
            int s = point_vs_support_approx(qx, qy, pieces_[nd.payload].support, &certain);
            if (!certain)
                s = point_vs_support(SpecialPoint::rational(p.x.exact(), p.y.exact()),
                                     pieces_[nd.payload].support);
            node = s > 0 ? nd.hi : nd.lo;  // on-curve queries are routed below
        }
    }
}

TrapId TrapMap::locate(const Point& p) const { return locate_with_depth(p, nullptr); }

void TrapMap::locate_points(const PointSet& pts) {
    for (std::uint32_t i = 0; i < pts.size(); ++i)
        traps_[locate(pts[i])].pts.push_back(i);
}

// ---------------------------------------------------------------------------
// insertion
// ---------------------------------------------------------------------------

TrapId TrapMap::split_at_vertex(TrapId t, VertId v) {
    // copy first: new_trap may reallocate traps_
    PieceId top = traps_[t].top, bottom = traps_[t].bottom;
    VertId lv = traps_[t].leftv, rv = traps_[t].rightv;
    assert(lex_cmp(verts_[lv], verts_[v]) < 0 && lex_cmp(verts_[v], verts_[rv]) < 0);
    TrapId tl = new_trap(top, bottom, lv, v);
    TrapId trt = new_trap(top, bottom, v, rv);
    std::int32_t ll = new_leaf(tl), lr = new_leaf(trt);
    dag_[traps_[t].leaf] = DagNode{DagNode::X, v, ll, lr};
    kill(t);
    return trt;
}

TrapId TrapMap::pick_right_neighbor(VertId v, int side) const {
    // side = +1: the vertex sits above the new curve, so continue into the
    // unique right-side trapezoid whose bottom lies strictly below v (all
    // others are bounded by curves through v); mirrored for side = -1.
    TrapId found = NIL;
    for (TrapId t : right_of_vert_[v]) {
        if (!traps_[t].alive) continue;
        int s = side > 0 ? side_of_piece(verts_[v], traps_[t].bottom)
                         : -side_of_piece(verts_[v], traps_[t].top);
        if (s > 0) {
            assert(found == NIL);
            found = t;
        }
    }
    assert(found != NIL && "walk lost the curve at a wall");
    return found;
}

void TrapMap::insert_piece(PieceId cid) {
    const VertId L = pieces_[cid].a, R = pieces_[cid].b;
    const Support& csup = pieces_[cid].support;

    TrapId cur = locate_for_insert(verts_[L], csup);
    if (traps_[cur].leftv != L) cur = split_at_vertex(cur, L);
    VertId entry = L;

    enum class Term { EndInside, EndAtVert, Thru, Cross };
    for (;;) {  // one run per iteration
        std::vector<TrapId> rtraps{cur};
        std::vector<std::pair<VertId, int>> walls;  // vertex between consecutive traps, side
        Term term;
        VertId term_v = NIL;
        VertId ent = entry;
        for (;;) {  // collect the crossed trapezoids
            const Trapezoid& tr = traps_[rtraps.back()];
            VertId rv = tr.rightv;
            // earliest crossing with the top or bottom piece inside this slab
            bool have_x = false;
            SpecialPoint best;
            for (PieceId side_piece : {tr.top, tr.bottom}) {
                for (SpecialPoint& x : support_crossings(csup, pieces_[side_piece].support)) {
                    if (lex_cmp(x, verts_[ent]) <= 0) continue;
                    if (lex_cmp(x, verts_[rv]) >= 0) continue;
                    if (lex_cmp(x, verts_[L]) <= 0 || lex_cmp(x, verts_[R]) >= 0) continue;
                    if (!have_x || lex_cmp(x, best) < 0) {
                        best = std::move(x);
                        have_x = true;
                    }
                }
            }
            int end_cmp = lex_cmp(verts_[R], verts_[rv]);
            if (have_x) {  // filtered to lie strictly before both R and the wall
                term = Term::Cross;
                term_v = intern_vertex(best);
                break;
            }
            if (end_cmp < 0) {
                term = Term::EndInside;
                term_v = R;
                break;
            }
            if (end_cmp == 0) {
                term = Term::EndAtVert;
                term_v = R;
                break;
            }
            int side = side_of_piece(verts_[rv], cid);
            if (side == 0) {
                term = Term::Thru;
                term_v = rv;
                break;
            }
            walls.push_back({rv, side});
            rtraps.push_back(pick_right_neighbor(rv, side));
            ent = rv;
        }

        // ---- surgery: build merged fragments above and below the curve ----
        struct Frag {
            VertId l, r;
            PieceId carry;          // top piece for above-frags, bottom for below
            std::size_t lo, hi;     // covered range in rtraps
            TrapId trap = NIL;
        };
        auto build_frags = [&](int closing_side, bool above) {
            std::vector<Frag> fr;
            Frag curf{entry, NIL,
                      above ? traps_[rtraps[0]].top : traps_[rtraps[0]].bottom, 0, 0, NIL};
            for (std::size_t k = 0; k < walls.size(); ++k) {
                if (walls[k].second == closing_side) {
                    curf.r = walls[k].first;
                    curf.hi = k;
                    fr.push_back(curf);
                    curf = Frag{walls[k].first, NIL,
                                above ? traps_[rtraps[k + 1]].top : traps_[rtraps[k + 1]].bottom,
                                k + 1, 0, NIL};
                } else {
                    assert((above ? traps_[rtraps[k + 1]].top : traps_[rtraps[k + 1]].bottom) ==
                           curf.carry);
                }
            }
            curf.r = term_v;
            curf.hi = rtraps.size() - 1;
            fr.push_back(curf);
            return fr;
        };
        std::vector<Frag> above = build_frags(+1, true);
        std::vector<Frag> below = build_frags(-1, false);
        for (Frag& f : above) {
            f.trap = new_trap(f.carry, cid, f.l, f.r);
            new_leaf(f.trap);
        }
        for (Frag& f : below) {
            f.trap = new_trap(cid, f.carry, f.l, f.r);
            new_leaf(f.trap);
        }
        TrapId rem = NIL;
        bool new_wall = term == Term::Cross || term == Term::EndInside;
        if (new_wall) {
            PieceId lt = traps_[rtraps.back()].top, lb = traps_[rtraps.back()].bottom;
            VertId lr = traps_[rtraps.back()].rightv;
            rem = new_trap(lt, lb, term_v, lr);
            new_leaf(rem);
        }
        // rewrite each dead trapezoid's DAG leaf in place
        std::size_t ai = 0, bi = 0;
        for (std::size_t k = 0; k < rtraps.size(); ++k) {
            while (above[ai].hi < k) ++ai;
            while (below[bi].hi < k) ++bi;
            std::int32_t cnode;
            std::int32_t old = traps_[rtraps[k]].leaf;
            if (k + 1 == rtraps.size() && new_wall) {
                cnode = static_cast<std::int32_t>(dag_.size());
                dag_.push_back(DagNode{DagNode::Curve, cid, traps_[below[bi].trap].leaf,
                                       traps_[above[ai].trap].leaf});
                dag_[old] = DagNode{DagNode::X, term_v, cnode, traps_[rem].leaf};
            } else {
                dag_[old] = DagNode{DagNode::Curve, cid, traps_[below[bi].trap].leaf,
                                    traps_[above[ai].trap].leaf};
            }
            kill(rtraps[k]);
        }

        if (term == Term::EndInside || term == Term::EndAtVert) return;
        // continue beyond a crossing or a passed-through vertex
        cur = locate_for_insert(verts_[term_v], csup);
        if (traps_[cur].leftv != term_v) cur = split_at_vertex(cur, term_v);
        entry = term_v;
    }
}

// ---------------------------------------------------------------------------
// dual graph
// ---------------------------------------------------------------------------

void TrapMap::build_adjacency() {
    if (adj_built_) return;
    adj_.assign(traps_.size(), {});
    auto add_pair = [&](TrapId above, TrapId below, PieceId piece) {
        adj_[above].push_back(Adj{below, piece, true});
        adj_[below].push_back(Adj{above, piece, false});
    };
    // across curves: traps above a piece vs traps below it, by span overlap
    std::vector<std::vector<TrapId>> above(pieces_.size()), below(pieces_.size());
    for (TrapId t = 0; t < static_cast<TrapId>(traps_.size()); ++t) {
        if (!traps_[t].alive) continue;
        above[traps_[t].bottom].push_back(t);
        below[traps_[t].top].push_back(t);
    }
    auto by_left = [&](TrapId u, TrapId v) {
        return lex_cmp(verts_[traps_[u].leftv], verts_[traps_[v].leftv]) < 0;
    };
    for (PieceId p = 0; p < static_cast<PieceId>(pieces_.size()); ++p) {
        auto &ups = above[p], &dns = below[p];
        if (ups.empty() || dns.empty()) continue;
        std::sort(ups.begin(), ups.end(), by_left);
        std::sort(dns.begin(), dns.end(), by_left);
        std::size_t i = 0, j = 0;
        while (i < ups.size() && j < dns.size()) {
            const Trapezoid &u = traps_[ups[i]], &d = traps_[dns[j]];
            const SpecialPoint& lmax = lex_cmp(verts_[u.leftv], verts_[d.leftv]) >= 0
                                           ? verts_[u.leftv]
                                           : verts_[d.leftv];
            int ru = lex_cmp(verts_[u.rightv], verts_[d.rightv]);
            const SpecialPoint& rmin = ru <= 0 ? verts_[u.rightv] : verts_[d.rightv];
            if (lex_cmp(lmax, rmin) < 0) add_pair(ups[i], dns[j], p);
            if (ru <= 0)
                ++i;
            else
                ++j;
        }
    }
    // across walls: match left and right traps of each vertex per wall part
    for (VertId v = 0; v < static_cast<VertId>(verts_.size()); ++v) {
        TrapId ldn = NIL, lup = NIL, rdn = NIL, rup = NIL;
        auto classify = [&](TrapId t, TrapId& dn, TrapId& up) {
            if (!traps_[t].alive) return;
            int st = side_of_piece(verts_[v], traps_[t].top);
            int sb = side_of_piece(verts_[v], traps_[t].bottom);
            assert(st <= 0 && sb >= 0);
            if (st == 0 && sb == 0) return;  // pinched: point contact only
            if (sb > 0) {
                assert(dn == NIL);
                dn = t;
            }
            if (st < 0) {
                assert(up == NIL);
                up = t;
            }
        };
        for (TrapId t : left_of_vert_[v]) classify(t, ldn, lup);
        for (TrapId t : right_of_vert_[v]) classify(t, rdn, rup);
        if (ldn != NIL && rdn != NIL) add_pair(ldn, rdn, NIL);
        if (lup != NIL && rup != NIL && (lup != ldn || rup != rdn)) add_pair(lup, rup, NIL);
    }
    adj_built_ = true;
}

Point TrapMap::find_seed_point(const std::vector<Region>& regions) const {
    Rat w = bbox_.xhi.exact() - bbox_.xlo.exact();
    Rat h = bbox_.yhi.exact() - bbox_.ylo.exact();
    for (long k = 1;; ++k) {
        // deterministic scatter over the middle of the box
        Rat fx(7919 * k % 104729, 104729);
        Rat fy(104729 * k % 7919, 7919);
        fx.canonicalize();
        fy.canonicalize();
        Point p(Coord(bbox_.xlo.exact() + w * (1 + 2 * fx) / 4),
                Coord(bbox_.ylo.exact() + h * (1 + 2 * fy) / 4));
        bool on_any = false;
        for (const Region& r : regions)
            if (region_boundary_contains(r, p)) {
                on_any = true;
                break;
            }
        if (!on_any) return p;
    }
}

void TrapMap::prepare_membership(const std::vector<Region>& regions) {
    if (membership_ready_) return;
    build_adjacency();
    seed_point_ = find_seed_point(regions);
    seed_trap_ = locate(seed_point_);
    std::vector<std::uint32_t> seed_set;
    for (std::uint32_t i = 0; i < regions.size(); ++i)
        if (region_contains(regions[i], seed_point_, Closure::Open)) seed_set.push_back(i);

    membership_.assign(traps_.size(), {});
    std::vector<char> seen(traps_.size(), 0);
    membership_[seed_trap_] = std::move(seed_set);
    seen[seed_trap_] = 1;
    std::vector<TrapId> queue{seed_trap_};
    while (!queue.empty()) {
        TrapId t = queue.back();
        queue.pop_back();
        for (const Adj& a : adj_[t]) {
            if (seen[a.other]) continue;
            std::set<std::uint32_t> s(membership_[t].begin(), membership_[t].end());
            if (a.piece != NIL)
                for (const OwnerRef& o : pieces_[a.piece].owners) {
                    bool entering = a.down == o.inside_below;
                    if (entering) {
                        bool inserted = s.insert(o.region).second;
                        assert(inserted && "entered a region already containing the face");
                        (void)inserted;
                    } else {
                        s.erase(o.region);
                    }
                }
            membership_[a.other].assign(s.begin(), s.end());
            seen[a.other] = 1;
            queue.push_back(a.other);
        }
    }
    membership_ready_ = true;
}

const std::vector<std::uint32_t>& TrapMap::membership(TrapId t) const {
    if (!membership_ready_) throw precondition_error("membership: call prepare_membership first");
    return membership_[t];
}

std::vector<char> TrapMap::dual_traverse_mark(const std::vector<Region>& regions,
                                              const std::vector<EdgePair>& region_sites,
                                              const PointSet& pts, Closure closure,
                                              bool check_invariants) {
    assert(regions.size() == region_sites.size());
    build_adjacency();
    if (check_invariants) prepare_membership(regions);

    std::uint32_t m = static_cast<std::uint32_t>(regions.size());
    std::vector<char> occupied(m, 0);

    // the active list: doubly linked over region ids, O(1) removal
    std::vector<std::uint32_t> nxt(m + 1), prv(m + 1);
    std::vector<char> in_active(m, 0);
    const std::uint32_t HEAD = m;
    nxt[HEAD] = HEAD;
    prv[HEAD] = HEAD;
    auto list_add = [&](std::uint32_t r) {
        assert(!in_active[r]);
        nxt[r] = nxt[HEAD];
        prv[r] = HEAD;
        prv[nxt[HEAD]] = r;
        nxt[HEAD] = r;
        in_active[r] = 1;
    };
    auto list_remove = [&](std::uint32_t r) {
        assert(in_active[r]);
        nxt[prv[r]] = nxt[r];
        prv[nxt[r]] = prv[r];
        in_active[r] = 0;
    };

    TrapId seed;
    if (membership_ready_) {
        seed = seed_trap_;
        for (std::uint32_t r : membership_[seed]) list_add(r);
    } else {
        Point sp = find_seed_point(regions);
        seed = locate(sp);
        for (std::uint32_t i = 0; i < m; ++i)
            if (region_contains(regions[i], sp, Closure::Open)) list_add(i);
    }

    // crossing `piece` while moving down (or up when !down)
    auto cross_piece = [&](PieceId piece, bool down) {
        for (const OwnerRef& o : pieces_[piece].owners) {
            bool entering = down == o.inside_below;
            if (entering) {
                if (!occupied[o.region] && !in_active[o.region]) list_add(o.region);
            } else {
                if (in_active[o.region]) list_remove(o.region);
            }
        }
    };

    auto mark_at = [&](TrapId t) {
        if (traps_[t].pts.empty()) return;
        std::vector<std::uint32_t> snapshot;
        for (std::uint32_t r = nxt[HEAD]; r != HEAD; r = nxt[r]) snapshot.push_back(r);
        for (std::uint32_t r : snapshot) {
            for (std::uint32_t p : traps_[t].pts) {
                if (p == region_sites[r].first || p == region_sites[r].second) continue;
                if (region_contains(regions[r], pts[p], closure)) {
                    occupied[r] = 1;
                    list_remove(r);
                    break;
                }
            }
        }
    };

    auto audit = [&](TrapId t) {
        if (!check_invariants) return;
        std::set<std::uint32_t> want;
        for (std::uint32_t r : membership_[t])
            if (!occupied[r]) want.insert(r);
        std::set<std::uint32_t> have;
        for (std::uint32_t r = nxt[HEAD]; r != HEAD; r = nxt[r]) have.insert(r);
        assert(want == have && "active list diverged from face membership");
    };

    struct Frame {
        TrapId trap;
        std::size_t next_adj;
        Adj via;  // edge taken to reach this frame (undone on backtrack)
    };
    std::vector<char> visited(traps_.size(), 0);
    std::vector<Frame> stack;
    visited[seed] = 1;
    mark_at(seed);
    audit(seed);
    stack.push_back(Frame{seed, 0, Adj{NIL, NIL, false}});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_adj < adj_[f.trap].size()) {
            Adj a = adj_[f.trap][f.next_adj++];
            if (visited[a.other]) continue;
            if (a.piece != NIL) cross_piece(a.piece, a.down);
            visited[a.other] = 1;
            mark_at(a.other);
            audit(a.other);
            stack.push_back(Frame{a.other, 0, a});
        } else {
            Adj via = f.via;
            stack.pop_back();
            if (via.other != NIL && via.piece != NIL) cross_piece(via.piece, !via.down);
            if (!stack.empty()) audit(stack.back().trap);
        }
    }
    return occupied;
}

// ---------------------------------------------------------------------------
// audits
// ---------------------------------------------------------------------------

std::size_t TrapMap::alive_count() const {
    std::size_t n = 0;
    for (const Trapezoid& t : traps_) n += t.alive;
    return n;
}

bool TrapMap::validate() const {
    // DAG leaves <-> alive trapezoids
    std::set<TrapId> leaves;
    for (const DagNode& nd : dag_) {
        if (nd.kind == DagNode::Leaf) {
            if (!traps_[nd.payload].alive) return false;
            leaves.insert(nd.payload);
        } else if (nd.lo == NIL || nd.hi == NIL) {
            return false;
        }
    }
    for (TrapId t = 0; t < static_cast<TrapId>(traps_.size()); ++t) {
        const Trapezoid& tr = traps_[t];
        if (!tr.alive) continue;
        if (!leaves.count(t)) return false;
        if (dag_[tr.leaf].kind != DagNode::Leaf || dag_[tr.leaf].payload != t) return false;
        if (lex_cmp(verts_[tr.leftv], verts_[tr.rightv]) >= 0) return false;
        const Piece &top = pieces_[tr.top], &bot = pieces_[tr.bottom];
        if (lex_cmp(verts_[top.a], verts_[tr.leftv]) > 0) return false;
        if (lex_cmp(verts_[top.b], verts_[tr.rightv]) < 0) return false;
        if (lex_cmp(verts_[bot.a], verts_[tr.leftv]) > 0) return false;
        if (lex_cmp(verts_[bot.b], verts_[tr.rightv]) < 0) return false;
        // wall vertices sit between the bounding curves
        for (VertId v : {tr.leftv, tr.rightv}) {
            if (side_of_piece(verts_[v], tr.top) > 0) return false;
            if (side_of_piece(verts_[v], tr.bottom) < 0) return false;
        }
    }
    return true;
}

}  // namespace skel
