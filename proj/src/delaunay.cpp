#include "skel/delaunay.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "skel/errors.hpp"
#include "skel/predicates.hpp"

namespace skel {

namespace {

// Vertices -1, -2, -3 are the corners of a symbolic bounding triangle at
// t * u_k for t -> infinity. Predicates involving them are limits: expand the
// determinant as a polynomial in t and take the sign of the leading
// coefficient. The directions are chosen counterclockwise and spanning.
constexpr int SYM0 = -1, SYM1 = -2, SYM2 = -3;
const int UX[3] = {0, -1, 1};
const int UY[3] = {1, -1, -1};

inline bool is_sym(int v) { return v < 0; }
inline int sym_idx(int v) { return -v - 1; }

using Poly = std::vector<Rat>;  // coefficient k of t^k

Poly padd(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}
Poly psub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}
Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}
int plead_sign(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;) {
        int s = sign(p[i]);
        if (s != 0) return s;
    }
    return 0;
}

struct TriRec {
    int v[3];
    std::int32_t nb[3];   // neighbor across edge opposite v[k], -1 if none
    std::int8_t nbe[3];   // index of the shared edge within the neighbor
    std::int32_t child[3];
    std::int8_t nchild;
};

class Builder {
public:
    explicit Builder(const PointSet& pts) : pts_(pts) {}

    const PointSet& pts_;
    std::vector<TriRec> tris_;
    bool ties_ = false;

    const Rat& px(int v) const { return pts_[static_cast<std::size_t>(v)].x.exact(); }
    const Rat& py(int v) const { return pts_[static_cast<std::size_t>(v)].y.exact(); }
    double pxd(int v) const { return pts_.xs()[static_cast<std::size_t>(v)]; }
    double pyd(int v) const { return pts_.ys()[static_cast<std::size_t>(v)]; }

    Poly poly_x(int v) const {
        if (is_sym(v)) return Poly{Rat(0), Rat(UX[sym_idx(v)])};
        return Poly{px(v)};
    }
    Poly poly_y(int v) const {
        if (is_sym(v)) return Poly{Rat(0), Rat(UY[sym_idx(v)])};
        return Poly{py(v)};
    }

    int orient_poly(int a, int b, int c) const {
        Poly bax = psub(poly_x(b), poly_x(a)), bay = psub(poly_y(b), poly_y(a));
        Poly cax = psub(poly_x(c), poly_x(a)), cay = psub(poly_y(c), poly_y(a));
        return plead_sign(psub(pmul(bax, cay), pmul(bay, cax)));
    }

    // sign of cross(u_k, p - q), falling back to cross(p, q) when parallel
    int orient_one_sym(int k, int p, int q) const {
        double wx = pxd(p) - pxd(q), wy = pyd(p) - pyd(q);
        double cr = UX[k] * wy - UY[k] * wx;
        // cancellation in wx/wy scales with the inputs, not the difference
        double m = std::abs(pxd(p)) + std::abs(pyd(p)) + std::abs(pxd(q)) + std::abs(pyd(q));
        if (std::abs(cr) > 2.0e-15 * m) return cr > 0 ? 1 : -1;
        Rat wxe = px(p) - px(q), wye = py(p) - py(q);
        int s = sign(Rat(UX[k]) * wye - Rat(UY[k]) * wxe);
        if (s != 0) return s;
        return sign(px(p) * py(q) - py(p) * px(q));
    }

    int orient_v(int a, int b, int c) const {
        int nsym = is_sym(a) + is_sym(b) + is_sym(c);
        if (nsym == 0) {
            int f = orient2d_filtered(pxd(a), pyd(a), pxd(b), pyd(b), pxd(c), pyd(c));
            if (f != FILTER_FAIL) return f;
            return orient2d_exact(px(a), py(a), px(b), py(b), px(c), py(c));
        }
        if (nsym == 1) {
            // rotate the symbolic point to the front (even permutations only)
            if (is_sym(a)) return orient_one_sym(sym_idx(a), b, c);
            if (is_sym(b)) return orient_one_sym(sym_idx(b), c, a);
            return orient_one_sym(sym_idx(c), a, b);
        }
        if (nsym == 2) {
            // leading term is cross(u_i, u_j), a constant
            int i, j, parity;  // orient(S_i, S_j, finite) * parity
            if (!is_sym(a)) {
                i = sym_idx(b), j = sym_idx(c), parity = 1;  // (b,c,a) even
            } else if (!is_sym(b)) {
                i = sym_idx(c), j = sym_idx(a), parity = 1;  // (c,a,b) even
            } else {
                i = sym_idx(a), j = sym_idx(b), parity = 1;
            }
            int cr = UX[i] * UY[j] - UY[i] * UX[j];
            assert(cr != 0);
            return parity * (cr > 0 ? 1 : -1);
        }
        return orient_poly(a, b, c);
    }

    int incircle_poly(int a, int b, int c, int d) const {
        Poly rows[3][3];
        int vs[3] = {a, b, c};
        for (int i = 0; i < 3; ++i) {
            Poly dx = psub(poly_x(vs[i]), poly_x(d));
            Poly dy = psub(poly_y(vs[i]), poly_y(d));
            rows[i][0] = dx;
            rows[i][1] = dy;
            rows[i][2] = padd(pmul(dx, dx), pmul(dy, dy));
        }
        Poly det = psub(
            padd(pmul(rows[0][0], psub(pmul(rows[1][1], rows[2][2]), pmul(rows[1][2], rows[2][1]))),
                 pmul(rows[0][2], psub(pmul(rows[1][0], rows[2][1]), pmul(rows[1][1], rows[2][0])))),
            pmul(rows[0][1], psub(pmul(rows[1][0], rows[2][2]), pmul(rows[1][2], rows[2][0]))));
        return plead_sign(det);
    }

    // +1 iff d is strictly inside the circumcircle of ccw (a, b, c)
    int incircle_v(int a, int b, int c, int d) {
        int nsym = is_sym(a) + is_sym(b) + is_sym(c) + is_sym(d);
        if (nsym == 0) {
            int f = in_circle_filtered(pxd(a), pyd(a), pxd(b), pyd(b), pxd(c), pyd(c), pxd(d),
                                       pyd(d));
            if (f == FILTER_FAIL)
                f = in_circle_exact(px(a), py(a), px(b), py(b), px(c), py(c), px(d), py(d));
            if (f == 0) ties_ = true;
            return f;
        }
        if (nsym == 1 && !is_sym(d)) {
            // one far vertex: the circumcircle degenerates to the halfplane
            // left of the remaining two; ties go to the slow path
            int s;
            if (is_sym(a))
                s = orient_v(d, b, c);
            else if (is_sym(b))
                s = orient_v(a, d, c);
            else
                s = orient_v(a, b, d);
            if (s != 0) return s;
        }
        int r = incircle_poly(a, b, c, d);
        if (r == 0) ties_ = true;
        return r;
    }

    int new_tri(int a, int b, int c) {
        tris_.push_back(TriRec{{a, b, c}, {-1, -1, -1}, {0, 0, 0}, {-1, -1, -1}, 0});
        return static_cast<int>(tris_.size()) - 1;
    }

    void link(int t, int e, int o, int oe) {
        tris_[t].nb[e] = o;
        tris_[t].nbe[e] = static_cast<std::int8_t>(oe);
        if (o >= 0) {
            tris_[o].nb[oe] = t;
            tris_[o].nbe[oe] = static_cast<std::int8_t>(e);
        }
    }

    bool contains(int t, int p, int* zero_edge) const {
        const TriRec& tr = tris_[t];
        int z = -1;
        for (int k = 0; k < 3; ++k) {
            int s = orient_v(tr.v[(k + 1) % 3], tr.v[(k + 2) % 3], p);
            if (s < 0) return false;
            if (s == 0) z = k;
        }
        *zero_edge = z;
        return true;
    }

    int locate(int p, int* zero_edge) const {
        int t = 0;
        int ze = -1;
        while (tris_[t].nchild > 0) {
            int next = -1;
            for (int i = 0; i < tris_[t].nchild; ++i) {
                int c = tris_[t].child[i];
                if (contains(c, p, &ze)) {
                    next = c;
                    break;
                }
            }
            assert(next >= 0 && "location descent lost the point");
            t = next;
        }
        bool ok = contains(t, p, &ze);
        assert(ok);
        (void)ok;
        *zero_edge = ze;
        return t;
    }

    void legalize(int t0, int e0, int p) {
        std::vector<std::pair<int, int>> stack{{t0, e0}};
        while (!stack.empty()) {
            auto [t, e] = stack.back();
            stack.pop_back();
            assert(tris_[t].v[e] == p);
            int o = tris_[t].nb[e];
            if (o < 0) continue;
            int oe = tris_[t].nbe[e];
            int d = tris_[o].v[oe];
            if (incircle_v(tris_[t].v[0], tris_[t].v[1], tris_[t].v[2], d) <= 0) continue;
            // flip the shared edge: t = (p, b, c), o = (d, c, b)
            int b = tris_[t].v[(e + 1) % 3], c = tris_[t].v[(e + 2) % 3];
            int t1 = new_tri(p, b, d);
            int t2 = new_tri(p, d, c);
            // outer neighbors: t across (p,b) is t.nb[e+2]; o across (b,d) is
            // o.nb[oe+1]; o across (d,c) is o.nb[oe+2]; t across (c,p) is t.nb[e+1]
            link(t1, 2, tris_[t].nb[(e + 2) % 3], tris_[t].nbe[(e + 2) % 3]);
            link(t1, 0, tris_[o].nb[(oe + 1) % 3], tris_[o].nbe[(oe + 1) % 3]);
            link(t2, 0, tris_[o].nb[(oe + 2) % 3], tris_[o].nbe[(oe + 2) % 3]);
            link(t2, 2, tris_[t].nb[(e + 1) % 3], tris_[t].nbe[(e + 1) % 3]);
            link(t1, 1, t2, 2);
            for (int dead : {t, o}) {
                tris_[dead].child[0] = t1;
                tris_[dead].child[1] = t2;
                tris_[dead].nchild = 2;
            }
            stack.push_back({t1, 0});
            stack.push_back({t2, 0});
        }
    }

    void insert(int p) {
        int ze;
        int t = locate(p, &ze);
        if (ze < 0) {
            int a = tris_[t].v[0], b = tris_[t].v[1], c = tris_[t].v[2];
            int t0 = new_tri(p, b, c);
            int t1 = new_tri(p, c, a);
            int t2 = new_tri(p, a, b);
            link(t0, 0, tris_[t].nb[0], tris_[t].nbe[0]);
            link(t1, 0, tris_[t].nb[1], tris_[t].nbe[1]);
            link(t2, 0, tris_[t].nb[2], tris_[t].nbe[2]);
            link(t0, 1, t1, 2);
            link(t1, 1, t2, 2);
            link(t2, 1, t0, 2);
            tris_[t].child[0] = t0;
            tris_[t].child[1] = t1;
            tris_[t].child[2] = t2;
            tris_[t].nchild = 3;
            legalize(t0, 0, p);
            legalize(t1, 0, p);
            legalize(t2, 0, p);
            return;
        }
        // p lies on edge ze, shared with neighbor o
        int o = tris_[t].nb[ze];
        assert(o >= 0 && "point on an unbounded symbolic edge");
        int oe = tris_[t].nbe[ze];
        int av = tris_[t].v[ze];                // apex in t
        int bv = tris_[t].v[(ze + 1) % 3];      // edge endpoints
        int cv = tris_[t].v[(ze + 2) % 3];
        int dv = tris_[o].v[oe];                // apex in o
        int t1 = new_tri(p, cv, av);  // halves of t
        int t2 = new_tri(p, av, bv);
        int o1 = new_tri(p, bv, dv);  // halves of o
        int o2 = new_tri(p, dv, cv);
        link(t1, 0, tris_[t].nb[(ze + 1) % 3], tris_[t].nbe[(ze + 1) % 3]);
        link(t2, 0, tris_[t].nb[(ze + 2) % 3], tris_[t].nbe[(ze + 2) % 3]);
        link(o1, 0, tris_[o].nb[(oe + 1) % 3], tris_[o].nbe[(oe + 1) % 3]);
        link(o2, 0, tris_[o].nb[(oe + 2) % 3], tris_[o].nbe[(oe + 2) % 3]);
        link(t1, 2, o2, 1);
        link(t1, 1, t2, 2);
        link(t2, 1, o1, 2);
        link(o1, 1, o2, 2);
        tris_[t].child[0] = t1;
        tris_[t].child[1] = t2;
        tris_[t].nchild = 2;
        tris_[o].child[0] = o1;
        tris_[o].child[1] = o2;
        tris_[o].nchild = 2;
        legalize(t1, 0, p);
        legalize(t2, 0, p);
        legalize(o1, 0, p);
        legalize(o2, 0, p);
    }
};

}  // namespace

Triangulation triangulate(const PointSet& points, std::uint64_t seed) {
    if (points.size() < 2) throw input_error("triangulate: need at least 2 points");
    if (auto dup = points.find_duplicate())
        throw input_error("triangulate: duplicate points at indices " +
                          std::to_string(dup->first) + " and " + std::to_string(dup->second));

    Builder bld(points);
    bld.new_tri(SYM0, SYM1, SYM2);
    std::vector<int> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    SplitMix64 rng(seed ^ 0x5bf03635979fe8f2ULL);
    shuffle(order, rng);
    for (int idx : order) bld.insert(idx);

    Triangulation out;
    out.points = &points;
    out.degenerate_ties = bld.ties_;
    std::set<EdgePair> edge_set;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int32_t> he_of;
    for (const TriRec& tr : bld.tris_) {
        if (tr.nchild > 0) continue;
        bool finite = !is_sym(tr.v[0]) && !is_sym(tr.v[1]) && !is_sym(tr.v[2]);
        for (int k = 0; k < 3; ++k) {
            int u = tr.v[k], v = tr.v[(k + 1) % 3];
            if (!is_sym(u) && !is_sym(v))
                edge_set.insert({std::min<std::uint32_t>(u, v), std::max<std::uint32_t>(u, v)});
        }
        if (finite)
            out.triangles.push_back({static_cast<std::uint32_t>(tr.v[0]),
                                     static_cast<std::uint32_t>(tr.v[1]),
                                     static_cast<std::uint32_t>(tr.v[2])});
    }
    out.edge_list.assign(edge_set.begin(), edge_set.end());
    out.he_twin.assign(out.triangles.size() * 3, -1);
    out.he_next.assign(out.triangles.size() * 3, -1);
    for (std::size_t t = 0; t < out.triangles.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::int32_t he = static_cast<std::int32_t>(3 * t + k);
            out.he_next[he] = static_cast<std::int32_t>(3 * t + (k + 1) % 3);
            he_of[{out.triangles[t][k], out.triangles[t][(k + 1) % 3]}] = he;
        }
    for (auto& [key, he] : he_of) {
        auto it = he_of.find({key.second, key.first});
        if (it != he_of.end()) out.he_twin[he] = it->second;
    }
    return out;
}

const std::vector<EdgePair>& edges(const Triangulation& t) { return t.edge_list; }

namespace {

// points lying on the convex hull boundary (vertices or on hull edges)
std::size_t hull_boundary_count(const PointSet& pts) {
    std::size_t n = pts.size();
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    // Andrew's monotone chain keeping collinear boundary points
    auto build = [&](bool upper) {
        std::vector<std::uint32_t> h;
        for (std::uint32_t i : idx) {
            while (h.size() >= 2) {
                int s = orient2d(pts[h[h.size() - 2]], pts[h.back()], pts[i]);
                if (upper ? s > 0 : s < 0)
                    h.pop_back();
                else
                    break;
            }
            h.push_back(i);
        }
        return h;
    };
    auto lo = build(false), hi = build(true);
    std::set<std::uint32_t> boundary(lo.begin(), lo.end());
    boundary.insert(hi.begin(), hi.end());
    return boundary.size();
}

}  // namespace

bool validate(const Triangulation& t) {
    if (!t.points) return false;
    const PointSet& pts = *t.points;
    std::size_t n = pts.size();
    // structural: vertex indices, ccw orientation, twin symmetry
    for (const auto& tri : t.triangles) {
        for (auto v : tri)
            if (v >= n) return false;
        if (orient2d(pts[tri[0]], pts[tri[1]], pts[tri[2]]) <= 0) return false;
    }
    for (std::size_t he = 0; he < t.he_twin.size(); ++he) {
        std::int32_t tw = t.he_twin[he];
        if (tw >= 0 && t.he_twin[static_cast<std::size_t>(tw)] != static_cast<std::int32_t>(he))
            return false;
    }
    // empty circumcircle, exact
    for (const auto& tri : t.triangles)
        for (std::uint32_t p = 0; p < n; ++p) {
            if (p == tri[0] || p == tri[1] || p == tri[2]) continue;
            if (in_circle(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[p]) > 0) return false;
        }
    // counts against Euler's formula
    std::size_t h = hull_boundary_count(pts);
    if (h == n && t.triangles.empty()) {
        // possibly all collinear: expect a path of n-1 edges
        bool collinear = true;
        for (std::size_t i = 2; i < n && collinear; ++i)
            collinear = orient2d(pts[0], pts[1], pts[i]) == 0;
        if (collinear) return t.edge_list.size() == n - 1;
    }
    if (t.triangles.size() != 2 * (n - 1) - h) return false;
    if (t.edge_list.size() != 3 * (n - 1) - h) return false;
    if (n >= 3 && t.edge_list.size() > 3 * n - 6) return false;
    return true;
}

}  // namespace skel
