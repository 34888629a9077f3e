#ifndef SKEL_PREDICATES_HPP
#define SKEL_PREDICATES_HPP

#include "skel/coord.hpp"

namespace skel {

// Sign of the signed area of triangle pqr: +1 counterclockwise, 0 collinear,
// -1 clockwise. Exact (double filter, rational fallback).
int orient2d(const Point& p, const Point& q, const Point& r);

// +1 if p lies strictly inside the circumcircle of a, b, c; 0 on it; -1
// outside. Orientation of (a, b, c) is normalized internally; collinear
// a, b, c raise precondition_error.
int in_circle(const Point& a, const Point& b, const Point& c, const Point& p);

// Sign of r_sq - |p - center|^2: +1 inside, 0 on boundary, -1 outside.
int side_of_circle(const Point& p, const Circle& c);

// Raw double-filtered kernels over shadows; return +1/0/-1 or FILTER_FAIL
// when the static error bound cannot decide. Exposed for hot paths that keep
// their own exact fallback.
inline constexpr int FILTER_FAIL = 2;

int orient2d_filtered(double px, double py, double qx, double qy, double rx, double ry);
int in_circle_filtered(double ax, double ay, double bx, double by, double cx, double cy,
                       double px, double py);

int orient2d_exact(const Rat& px, const Rat& py, const Rat& qx, const Rat& qy,
                   const Rat& rx, const Rat& ry);
int in_circle_exact(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
                    const Rat& cx, const Rat& cy, const Rat& px, const Rat& py);

}  // namespace skel

#endif
