#ifndef SKEL_CURVES_HPP
#define SKEL_CURVES_HPP

#include <cstdint>
#include <vector>

#include "skel/quadfield.hpp"
#include "skel/region.hpp"

namespace skel {

// Supporting geometry of an x-monotone piece: half of a circle, or a
// straight segment (vertical allowed; verticals sort by the sheared
// lexicographic order like everything else). The *d members cache rounded
// doubles for the filtered fast path.
struct ArcSupport {
    Rat cx, cy, r_sq;
    bool upper;  // upper half: y >= cy
    double cxd = 0, cyd = 0, r_sqd = 0;
};
struct SegSupport {
    Rat x0, y0, x1, y1;  // (x0,y0) lex-before (x1,y1)
    double x0d = 0, y0d = 0, x1d = 0, y1d = 0;
    bool verticald = false;
    bool vertical() const { return x0 == x1; }
};

struct Support {
    enum Kind : std::uint8_t { Arc, Seg } kind;
    ArcSupport arc;
    SegSupport seg;

    static Support make_arc(Rat cx, Rat cy, Rat r_sq, bool upper) {
        Support s;
        s.kind = Arc;
        s.arc = {std::move(cx), std::move(cy), std::move(r_sq), upper};
        s.arc.cxd = s.arc.cx.get_d();
        s.arc.cyd = s.arc.cy.get_d();
        s.arc.r_sqd = s.arc.r_sq.get_d();
        return s;
    }
    static Support make_seg(Rat x0, Rat y0, Rat x1, Rat y1) {
        Support s;
        s.kind = Seg;
        s.seg = {std::move(x0), std::move(y0), std::move(x1), std::move(y1)};
        s.seg.x0d = s.seg.x0.get_d();
        s.seg.y0d = s.seg.y0.get_d();
        s.seg.x1d = s.seg.x1.get_d();
        s.seg.y1d = s.seg.y1.get_d();
        s.seg.verticald = s.seg.vertical();
        return s;
    }
};

// Same supporting curve (identical circle half / collinear carrier line)?
bool same_support(const Support& a, const Support& b);

// Vertical position of q relative to the piece's supporting curve, valid
// while q's sheared x lies within the piece's span: -1 below, 0 on, +1 above.
// For vertical segments "above" is the left side.
int point_vs_support(const SpecialPoint& q, const Support& s);

// Fast double version for rational queries: returns -1/0(+uncertain)/+1 via
// *certain; when *certain is false the caller must fall back to the exact
// test above.
int point_vs_support_approx(double qx, double qy, const Support& s, bool* certain);

// Orders two distinct supporting curves just right (in sheared x) of a
// common point p on both: -1 if a is below b, +1 if above. Exact; asserts
// the jets actually differ (coincident supports must be merged upstream).
int order_rightward(const SpecialPoint& p, const Support& a, const Support& b);

// Proper (transversal) intersection points of two supports. Tangencies and
// coincident carriers yield nothing: an even-multiplicity touch never swaps
// sides, so the subdivision may ignore it.
std::vector<SpecialPoint> support_crossings(const Support& a, const Support& b);

// An x-monotone piece of a region boundary.
struct CurveSegment {
    Support support;
    SpecialPoint a, b;  // endpoints, lex_cmp(a, b) < 0
    std::uint32_t owner;
    bool inside_below;  // owner's region lies below (right of, for verticals)
};

// Decomposes the boundary of a Lune or Strip region into x-monotone pieces.
// Lunes must lie strictly inside bbox; strips are clipped to it.
std::vector<CurveSegment> boundary_curves(const Region& r, const Box& bbox,
                                          std::uint32_t owner = 0);

}  // namespace skel

#endif
