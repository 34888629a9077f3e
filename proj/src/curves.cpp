#include "skel/curves.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "skel/predicates.hpp"

namespace skel {

namespace {

constexpr double EPS = 0.5 * std::numeric_limits<double>::epsilon();

// ---- exact point-vs-curve tests ------------------------------------------

int arc_side(const SpecialPoint& q, const ArcSupport& a) {
    Rat dxr = q.ax - a.cx, dyr = q.ay - a.cy;
    const Rat& dxb = q.bx;
    const Rat& dyb = q.by;
    Rat circ_rat = dxr * dxr + dyr * dyr + (dxb * dxb + dyb * dyb) * q.d - a.r_sq;
    Rat circ_rad = 2 * (dxr * dxb + dyr * dyb);
    int s_circ = quad_sign(circ_rat, circ_rad, q.d);
    int s_dy = quad_sign(dyr, dyb, q.d);
    if (a.upper) {
        if (s_circ == 0) return s_dy >= 0 ? 0 : -1;
        return (s_dy > 0 && s_circ > 0) ? 1 : -1;
    }
    if (s_circ == 0) return s_dy <= 0 ? 0 : 1;
    return (s_dy < 0 && s_circ > 0) ? -1 : 1;
}

int seg_side(const SpecialPoint& q, const SegSupport& s) {
    if (s.vertical()) {
        int c = quad_cmp(q.x(), QuadVal(s.x0));
        return c < 0 ? 1 : (c > 0 ? -1 : 0);  // left of a vertical piece is "above"
    }
    Rat dx = s.x1 - s.x0, dy = s.y1 - s.y0;
    Rat cr_rat = dx * (q.ay - s.y0) - dy * (q.ax - s.x0);
    Rat cr_rad = dx * q.by - dy * q.bx;
    return quad_sign(cr_rat, cr_rad, q.d);  // dx > 0 by lex ordering
}

}  // namespace

bool same_support(const Support& a, const Support& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Support::Arc)
        return a.arc.upper == b.arc.upper && a.arc.cx == b.arc.cx && a.arc.cy == b.arc.cy &&
               a.arc.r_sq == b.arc.r_sq;
    // same carrier line
    Rat adx = a.seg.x1 - a.seg.x0, ady = a.seg.y1 - a.seg.y0;
    Rat bdx = b.seg.x1 - b.seg.x0, bdy = b.seg.y1 - b.seg.y0;
    if (sign(adx * bdy - ady * bdx) != 0) return false;
    return sign(adx * (b.seg.y0 - a.seg.y0) - ady * (b.seg.x0 - a.seg.x0)) == 0;
}

int point_vs_support(const SpecialPoint& q, const Support& s) {
    return s.kind == Support::Arc ? arc_side(q, s.arc) : seg_side(q, s.seg);
}

// The cached doubles are rounded rationals (off by up to one ulp each), so
// the bounds below cover input perturbation as well as arithmetic rounding.
int point_vs_support_approx(double qx, double qy, const Support& s, bool* certain) {
    *certain = true;
    if (s.kind == Support::Arc) {
        const ArcSupport& a = s.arc;
        double dx = qx - a.cxd, dy = qy - a.cyd;
        double sq = dx * dx + dy * dy;
        double circ = sq - a.r_sqd;
        double m = std::max(std::max(std::abs(qx), std::abs(qy)),
                            std::max(std::abs(a.cxd), std::abs(a.cyd)));
        double err_c = EPS * (64.0 * m * m + 4.0 * std::abs(a.r_sqd));
        double err_y = 8.0 * EPS * m;
        bool c_out = circ > err_c, c_in = circ < -err_c;
        bool y_pos = dy > err_y, y_neg = dy < -err_y;
        if (a.upper) {
            if (c_in || y_neg) return -1;       // inside circle or under center line
            if (c_out && y_pos) return 1;
        } else {
            if (c_in || y_pos) return 1;
            if (c_out && y_neg) return -1;
        }
        *certain = false;
        return 0;
    }
    const SegSupport& g = s.seg;
    if (g.verticald) {
        double diff = qx - g.x0d;
        if (std::abs(diff) > 8.0 * EPS * (std::abs(qx) + std::abs(g.x0d)))
            return diff < 0 ? 1 : -1;
        *certain = false;
        return 0;
    }
    double det = (g.x1d - g.x0d) * (qy - g.y0d) - (g.y1d - g.y0d) * (qx - g.x0d);
    double mx = std::max(std::abs(qx), std::max(std::abs(g.x0d), std::abs(g.x1d)));
    double my = std::max(std::abs(qy), std::max(std::abs(g.y0d), std::abs(g.y1d)));
    if (std::abs(det) > 64.0 * EPS * mx * my) return det > 0 ? 1 : -1;
    *certain = false;
    return 0;
}

namespace {

// ---- order of curves just right of a shared point -------------------------

// -1/0/+1/2 classes: -1 arc dropping vertically, 0 finite slope, +1 arc
// rising vertically, +2 vertical segment.
int jet_class(const SpecialPoint& p, const Support& s) {
    if (s.kind == Support::Seg) return s.seg.vertical() ? 2 : 0;
    const ArcSupport& a = s.arc;
    int s_dy = quad_sign(p.ay - a.cy, p.by, p.d);
    if (s_dy != 0) return 0;
    return a.upper ? 1 : -1;
}

struct Slope {
    QuadVal num, den;  // slope = num/den, den != 0
};

Slope jet_slope(const SpecialPoint& p, const Support& s) {
    if (s.kind == Support::Seg)
        return {QuadVal(s.seg.y1 - s.seg.y0), QuadVal(s.seg.x1 - s.seg.x0)};
    const ArcSupport& a = s.arc;
    // y' = -(x-cx)/(y-cy)
    QuadVal num{a.cx - p.ax, -p.bx, p.d};
    QuadVal den{p.ay - a.cy, p.by, p.d};
    return {num, den};
}

}  // namespace

int order_rightward(const SpecialPoint& p, const Support& a, const Support& b) {
    int ca = jet_class(p, a), cb = jet_class(p, b);
    if (ca != cb) return ca < cb ? -1 : 1;
    if (ca == 2) {
        assert(false && "coincident vertical carriers must be merged");
        return 0;
    }
    if (ca == 1 || ca == -1) {
        int r = sign(a.arc.r_sq - b.arc.r_sq);  // larger radius rises/falls slower
        assert(r != 0 && "coincident circles must be merged");
        return ca == 1 ? r : -r;
    }
    Slope sa = jet_slope(p, a), sb = jet_slope(p, b);
    QuadVal diff = quad_sub(quad_mul(sa.num, sb.den), quad_mul(sb.num, sa.den));
    int s = quad_sign(diff) * quad_sign(sa.den) * quad_sign(sb.den);
    if (s != 0) return s;
    // equal tangents: compare curvature key -1/h, h = p.y - cy (0 for lines)
    bool aa = a.kind == Support::Arc, bb = b.kind == Support::Arc;
    if (!aa && !bb) {
        assert(false && "coincident line carriers must be merged");
        return 0;
    }
    if (aa != bb) {
        const ArcSupport& arc = aa ? a.arc : b.arc;
        int sh = quad_sign(p.ay - arc.cy, p.by, p.d);
        return aa ? -sh : sh;  // seg beats arc on the side sign(h) points to
    }
    QuadVal ha{p.ay - a.arc.cy, p.by, p.d};
    QuadVal hb{p.ay - b.arc.cy, p.by, p.d};
    int r = quad_sign(quad_sub(ha, hb)) * quad_sign(ha) * quad_sign(hb);
    assert(r != 0 && "tangent equal-curvature circles must coincide");
    return r;
}

namespace {

// ---- intersections ---------------------------------------------------------

// crossings of the line A x + B y = K with circle (c, r_sq)
void line_circle(const Rat& A, const Rat& B, const Rat& K, const Rat& cx, const Rat& cy,
                 const Rat& r_sq, std::vector<SpecialPoint>& out) {
    Rat nrm = A * A + B * B;
    Rat t = (K - A * cx - B * cy) / nrm;
    Rat q = r_sq / nrm - t * t;
    if (sign(q) <= 0) return;  // missing or tangent: not a crossing
    Rat fx = cx + t * A, fy = cy + t * B;
    out.push_back(SpecialPoint::quad(fx, -B, fy, A, q));
    out.push_back(SpecialPoint::quad(fx, B, fy, -A, q));
}

void carrier_line(const SegSupport& s, Rat& A, Rat& B, Rat& K) {
    A = s.y0 - s.y1;
    B = s.x1 - s.x0;
    K = A * s.x0 + B * s.y0;
}

bool on_half(const SpecialPoint& p, const ArcSupport& a) {
    int s_dy = quad_sign(p.ay - a.cy, p.by, p.d);
    return a.upper ? s_dy >= 0 : s_dy <= 0;
}

}  // namespace

std::vector<SpecialPoint> support_crossings(const Support& a, const Support& b) {
    std::vector<SpecialPoint> pts, out;
    if (a.kind == Support::Arc && b.kind == Support::Arc) {
        const ArcSupport &u = a.arc, &v = b.arc;
        if (u.cx == v.cx && u.cy == v.cy) return out;  // concentric or identical
        Rat A = 2 * (v.cx - u.cx), B = 2 * (v.cy - u.cy);
        Rat K = (v.cx * v.cx + v.cy * v.cy - v.r_sq) - (u.cx * u.cx + u.cy * u.cy - u.r_sq);
        line_circle(A, B, K, u.cx, u.cy, u.r_sq, pts);
        for (auto& p : pts)
            if (on_half(p, u) && on_half(p, v)) out.push_back(std::move(p));
        return out;
    }
    if (a.kind == Support::Seg && b.kind == Support::Seg) {
        Rat A1, B1, K1, A2, B2, K2;
        carrier_line(a.seg, A1, B1, K1);
        carrier_line(b.seg, A2, B2, K2);
        Rat det = A1 * B2 - A2 * B1;
        if (sign(det) == 0) return out;  // parallel (coincident handled upstream)
        Rat x = (K1 * B2 - K2 * B1) / det;
        Rat y = (A1 * K2 - A2 * K1) / det;
        out.push_back(SpecialPoint::rational(std::move(x), std::move(y)));
        return out;
    }
    const ArcSupport& arc = a.kind == Support::Arc ? a.arc : b.arc;
    const SegSupport& seg = a.kind == Support::Seg ? a.seg : b.seg;
    Rat A, B, K;
    carrier_line(seg, A, B, K);
    line_circle(A, B, K, arc.cx, arc.cy, arc.r_sq, pts);
    for (auto& p : pts)
        if (on_half(p, arc)) out.push_back(std::move(p));
    return out;
}

namespace {

// ---- boundary decomposition ------------------------------------------------

bool circle_strictly_inside(const Rat& cx, const Rat& cy, const Rat& r_sq, const Box& b) {
    auto fits = [&](const Rat& margin) { return sign(margin) > 0 && margin * margin > r_sq; };
    return fits(cx - b.xlo.exact()) && fits(b.xhi.exact() - cx) && fits(cy - b.ylo.exact()) &&
           fits(b.yhi.exact() - cy);
}

// extremum (cx + sx*sqrt(r_sq), cy) of a circle
SpecialPoint extremum_point(const Rat& cx, const Rat& cy, const Rat& r_sq, int sx) {
    return SpecialPoint::quad(cx, Rat(sx), cy, Rat(0), r_sq);
}

// is the extremum strictly inside the other disc?
bool extremum_strictly_in(const Rat& cx, const Rat& cy, const Rat& r_sq, int sx, const Rat& ox,
                          const Rat& oy, const Rat& o_r_sq) {
    Rat gx = cx - ox, gy = cy - oy;
    return quad_sign(gx * gx + gy * gy + r_sq - o_r_sq, Rat(2 * sx) * gx, r_sq) < 0;
}

void emit_arc(std::vector<CurveSegment>& out, const Rat& cx, const Rat& cy, const Rat& r_sq,
              SpecialPoint lo, SpecialPoint hi, bool upper, std::uint32_t owner) {
    CurveSegment cs;
    cs.support = Support::make_arc(cx, cy, r_sq, upper);
    cs.a = std::move(lo);
    cs.b = std::move(hi);
    cs.owner = owner;
    cs.inside_below = upper;  // a lune sits inside its circles
    assert(lex_cmp(cs.a, cs.b) < 0);
    out.push_back(std::move(cs));
}

// Pieces of the arc of circle (cx, cy, r_sq) between the two lune corners,
// on the side inside the other disc; splits at an interior x-extremum.
void lune_arc_pieces(std::vector<CurveSegment>& out, const Rat& cx, const Rat& cy,
                     const Rat& r_sq, const Rat& ox, const Rat& oy, const Rat& o_r_sq,
                     const SpecialPoint& corner_a, const SpecialPoint& corner_b,
                     std::uint32_t owner) {
    const SpecialPoint& lo = lex_cmp(corner_a, corner_b) < 0 ? corner_a : corner_b;
    const SpecialPoint& hi = lex_cmp(corner_a, corner_b) < 0 ? corner_b : corner_a;
    int interior_ext = 0;  // -1 left, +1 right, 0 none
    if (extremum_strictly_in(cx, cy, r_sq, -1, ox, oy, o_r_sq))
        interior_ext = -1;
    else if (extremum_strictly_in(cx, cy, r_sq, +1, ox, oy, o_r_sq))
        interior_ext = +1;

    auto corner_dy = [&](const SpecialPoint& p) { return quad_sign(p.ay - cy, p.by, p.d); };
    if (interior_ext == 0) {
        int h = corner_dy(lo);
        if (h == 0) h = corner_dy(hi);
        assert(h != 0 && "degenerate semicircle arc");
        emit_arc(out, cx, cy, r_sq, lo, hi, h > 0, owner);
        return;
    }
    SpecialPoint ext = extremum_point(cx, cy, r_sq, interior_ext);
    int ha = corner_dy(lo), hb = corner_dy(hi);
    assert(ha != 0 && hb != 0 && ha == -hb);
    if (interior_ext < 0) {  // leftmost point: extremum is lex-least
        emit_arc(out, cx, cy, r_sq, ext, lo, ha > 0, owner);
        emit_arc(out, cx, cy, r_sq, ext, hi, hb > 0, owner);
    } else {
        emit_arc(out, cx, cy, r_sq, lo, ext, ha > 0, owner);
        emit_arc(out, cx, cy, r_sq, hi, ext, hb > 0, owner);
    }
}

void strip_line_pieces(std::vector<CurveSegment>& out, const Point& through, const Point& sx,
                       const Point& sy, const Box& bbox, std::uint32_t owner) {
    // line through `through` with direction w = perp(y - x)
    Rat vx = sy.x.exact() - sx.x.exact(), vy = sy.y.exact() - sx.y.exact();
    Rat wx = -vy, wy = vx;
    Rat px = through.x.exact(), py = through.y.exact();
    // clip p(t) = through + t*w to bbox
    Rat tlo, thi;
    bool has = false;
    auto clip = [&](const Rat& w1, const Rat& p1, const Rat& lo, const Rat& hi) {
        if (sign(w1) == 0) return;
        Rat t0 = (lo - p1) / w1, t1 = (hi - p1) / w1;
        if (t0 > t1) std::swap(t0, t1);
        if (!has) {
            tlo = t0;
            thi = t1;
            has = true;
        } else {
            tlo = std::max(tlo, t0);
            thi = std::min(thi, t1);
        }
    };
    clip(wx, px, bbox.xlo.exact(), bbox.xhi.exact());
    clip(wy, py, bbox.ylo.exact(), bbox.yhi.exact());
    assert(has && tlo < thi);
    Rat x0 = px + tlo * wx, y0 = py + tlo * wy;
    Rat x1 = px + thi * wx, y1 = py + thi * wy;
    if (x0 > x1 || (x0 == x1 && y0 > y1)) {
        std::swap(x0, x1);
        std::swap(y0, y1);
    }
    CurveSegment cs;
    cs.support = Support::make_seg(x0, y0, x1, y1);
    cs.a = SpecialPoint::rational(x0, y0);
    cs.b = SpecialPoint::rational(x1, y1);
    cs.owner = owner;
    // midpoint of the sites is inside the strip
    Rat mx = (sx.x.exact() + sy.x.exact()) / 2, my = (sx.y.exact() + sy.y.exact()) / 2;
    if (sign(wx) == 0) {
        cs.inside_below = mx > px;  // vertical boundary: inside on the right
    } else {
        Rat cr = wx * (my - py) - wy * (mx - px);
        cs.inside_below = sign(cr) * sign(wx) < 0;
    }
    out.push_back(std::move(cs));
}

}  // namespace

std::vector<CurveSegment> boundary_curves(const Region& r, const Box& bbox, std::uint32_t owner) {
    std::vector<CurveSegment> out;
    if (const auto* lune = std::get_if<LuneRegion>(&r)) {
        const Rat& c1x = lune->d1.center.x.exact();
        const Rat& c1y = lune->d1.center.y.exact();
        const Rat& c2x = lune->d2.center.x.exact();
        const Rat& c2y = lune->d2.center.y.exact();
        const Rat& r_sq = lune->d1.r_sq.exact();
        if (!circle_strictly_inside(c1x, c1y, r_sq, bbox) ||
            !circle_strictly_inside(c2x, c2y, r_sq, bbox))
            throw precondition_error("boundary_curves: lune not strictly inside bbox");
        if (c1x == c2x && c1y == c2y) {
            // beta = 1: the lune is a disc; boundary = whole circle
            SpecialPoint el = extremum_point(c1x, c1y, r_sq, -1);
            SpecialPoint er = extremum_point(c1x, c1y, r_sq, +1);
            emit_arc(out, c1x, c1y, r_sq, el, er, true, owner);
            emit_arc(out, c1x, c1y, r_sq, std::move(el), std::move(er), false, owner);
            return out;
        }
        // corners = full circle-circle intersections (ignore the half filter)
        Rat A = 2 * (c2x - c1x), B = 2 * (c2y - c1y);
        Rat K = (c2x * c2x + c2y * c2y) - (c1x * c1x + c1y * c1y);
        std::vector<SpecialPoint> corners;
        {
            std::vector<SpecialPoint> pts;
            Rat nrm = A * A + B * B;
            Rat t = (K - A * c1x - B * c1y) / nrm;
            Rat q = r_sq / nrm - t * t;
            if (sign(q) <= 0)
                throw precondition_error("boundary_curves: lune circles do not cross");
            Rat fx = c1x + t * A, fy = c1y + t * B;
            corners.push_back(SpecialPoint::quad(fx, -B, fy, A, q));
            corners.push_back(SpecialPoint::quad(fx, B, fy, -A, q));
        }
        lune_arc_pieces(out, c1x, c1y, r_sq, c2x, c2y, r_sq, corners[0], corners[1], owner);
        lune_arc_pieces(out, c2x, c2y, r_sq, c1x, c1y, r_sq, corners[0], corners[1], owner);
        return out;
    }
    if (const auto* strip = std::get_if<StripRegion>(&r)) {
        if (!bbox.strictly_inside(strip->x) || !bbox.strictly_inside(strip->y))
            throw precondition_error("boundary_curves: strip sites not strictly inside bbox");
        strip_line_pieces(out, strip->x, strip->x, strip->y, bbox, owner);
        strip_line_pieces(out, strip->y, strip->x, strip->y, bbox, owner);
        return out;
    }
    throw precondition_error("boundary_curves: region must be a lune or strip");
}

}  // namespace skel
