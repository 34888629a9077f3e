#include "skel/predicates.hpp"

#include <cmath>
#include <limits>

namespace skel {

namespace {

constexpr double EPS = 0.5 * std::numeric_limits<double>::epsilon();
// Shewchuk's static bounds for the A-stage filters.
constexpr double ORIENT_BOUND = (3.0 + 16.0 * EPS) * EPS;
constexpr double INCIRCLE_BOUND = (10.0 + 96.0 * EPS) * EPS;

}  // namespace

int orient2d_filtered(double px, double py, double qx, double qy, double rx, double ry) {
    double detl = (qx - px) * (ry - py);
    double detr = (qy - py) * (rx - px);
    double det = detl - detr;
    double detsum = std::abs(detl) + std::abs(detr);
    if (std::abs(det) > ORIENT_BOUND * detsum) return det > 0 ? 1 : -1;
    if (det == 0.0 && detsum == 0.0) return 0;  // exact zeros, nothing to lose
    return FILTER_FAIL;
}

int orient2d_exact(const Rat& px, const Rat& py, const Rat& qx, const Rat& qy,
                   const Rat& rx, const Rat& ry) {
    Rat det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    return sign(det);
}

int orient2d(const Point& p, const Point& q, const Point& r) {
    int f = orient2d_filtered(p.x.approx(), p.y.approx(), q.x.approx(), q.y.approx(),
                              r.x.approx(), r.y.approx());
    if (f != FILTER_FAIL) return f;
    return orient2d_exact(p.x.exact(), p.y.exact(), q.x.exact(), q.y.exact(),
                          r.x.exact(), r.y.exact());
}

int in_circle_filtered(double ax, double ay, double bx, double by, double cx, double cy,
                       double px, double py) {
    double adx = ax - px, ady = ay - py;
    double bdx = bx - px, bdy = by - py;
    double cdx = cx - px, cdy = cy - py;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;
    double bxcy = bdx * cdy, cxby = cdx * bdy;
    double cxay = cdx * ady, axcy = adx * cdy;
    double axby = adx * bdy, bxay = bdx * ady;
    double det = alift * (bxcy - cxby) + blift * (cxay - axcy) + clift * (axby - bxay);
    double permanent = alift * (std::abs(bxcy) + std::abs(cxby)) +
                       blift * (std::abs(cxay) + std::abs(axcy)) +
                       clift * (std::abs(axby) + std::abs(bxay));
    if (std::abs(det) > INCIRCLE_BOUND * permanent) return det > 0 ? 1 : -1;
    if (det == 0.0 && permanent == 0.0) return 0;
    return FILTER_FAIL;
}

int in_circle_exact(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
                    const Rat& cx, const Rat& cy, const Rat& px, const Rat& py) {
    Rat adx = ax - px, ady = ay - py;
    Rat bdx = bx - px, bdy = by - py;
    Rat cdx = cx - px, cdy = cy - py;
    Rat det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
              (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
              (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    return sign(det);
}

int in_circle(const Point& a, const Point& b, const Point& c, const Point& p) {
    int orient = orient2d(a, b, c);
    if (orient == 0) throw precondition_error("in_circle: a, b, c are collinear");
    int f = in_circle_filtered(a.x.approx(), a.y.approx(), b.x.approx(), b.y.approx(),
                               c.x.approx(), c.y.approx(), p.x.approx(), p.y.approx());
    if (f == FILTER_FAIL)
        f = in_circle_exact(a.x.exact(), a.y.exact(), b.x.exact(), b.y.exact(),
                            c.x.exact(), c.y.exact(), p.x.exact(), p.y.exact());
    return orient > 0 ? f : -f;
}

int side_of_circle(const Point& p, const Circle& c) {
    double dx = p.x.approx() - c.center.x.approx();
    double dy = p.y.approx() - c.center.y.approx();
    double dx2 = dx * dx, dy2 = dy * dy;
    double diff = c.r_sq.approx() - (dx2 + dy2);
    // one subtraction per square plus the sum: 4 rounding steps, bound is loose
    double mag = dx2 + dy2 + std::abs(c.r_sq.approx());
    if (std::abs(diff) > 16.0 * EPS * mag) return diff > 0 ? 1 : -1;
    Rat ex = p.x.exact() - c.center.x.exact();
    Rat ey = p.y.exact() - c.center.y.exact();
    return sign(c.r_sq.exact() - ex * ex - ey * ey);
}

}  // namespace skel
