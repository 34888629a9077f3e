#ifndef SKEL_QUADFIELD_HPP
#define SKEL_QUADFIELD_HPP

#include "skel/rational.hpp"

namespace skel {

// Element of Q(sqrt(d)): value = a + b*sqrt(d), with rational a, b and d >= 0.
// Everything an arrangement of circles and lines produces (arc endpoints,
// crossings, x-extrema) lives in such a field, so comparisons can be decided
// exactly by at most two squarings — no iterative refinement needed.
struct QuadVal {
    Rat a, b, d;

    QuadVal() : a(0), b(0), d(0) {}
    explicit QuadVal(Rat r) : a(std::move(r)), b(0), d(0) {}
    QuadVal(Rat a_, Rat b_, Rat d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}

    bool is_rational() const { return sign(b) == 0 || sign(d) == 0; }
};

// sign of a + b*sqrt(d)
int quad_sign(const Rat& a, const Rat& b, const Rat& d);
inline int quad_sign(const QuadVal& v) { return quad_sign(v.a, v.b, v.d); }

// sign of (u - v); u and v may come from different fields
int quad_cmp(const QuadVal& u, const QuadVal& v);

// Product within one field: (a1 + b1 s)(a2 + b2 s), s = sqrt(d).
inline QuadVal quad_mul(const QuadVal& u, const QuadVal& v) {
    return {u.a * v.a + u.b * v.b * u.d, u.a * v.b + u.b * v.a, u.d};
}
inline QuadVal quad_add(const QuadVal& u, const QuadVal& v) {
    return {u.a + v.a, u.b + v.b, u.d};
}
inline QuadVal quad_sub(const QuadVal& u, const QuadVal& v) {
    return {u.a - v.a, u.b - v.b, u.d};
}

// Conservative double interval for a + b*sqrt(d).
DInterval quad_interval(const Rat& a, const Rat& b, const Rat& d);

// A point with both coordinates in one quadratic field:
//   x = ax + bx*sqrt(d),  y = ay + by*sqrt(d).
// Rational points use bx = by = d = 0. Cached double intervals give a fast
// path for comparisons; exact arithmetic settles overlaps.
struct SpecialPoint {
    Rat ax, bx, ay, by, d;
    double xlo, xhi, ylo, yhi;

    SpecialPoint() : ax(0), bx(0), ay(0), by(0), d(0), xlo(0), xhi(0), ylo(0), yhi(0) {}

    static SpecialPoint rational(Rat x, Rat y);
    static SpecialPoint quad(Rat ax, Rat bx, Rat ay, Rat by, Rat d);

    QuadVal x() const { return {ax, bx, d}; }
    QuadVal y() const { return {ay, by, d}; }
    bool is_rational() const { return (sign(bx) == 0 && sign(by) == 0) || sign(d) == 0; }

    double x_mid() const { return 0.5 * (xlo + xhi); }
    double y_mid() const { return 0.5 * (ylo + yhi); }
};

// Lexicographic (x, then y) comparison — the sheared order that makes every
// curve piece strictly monotone, vertical segments included.
int lex_cmp(const SpecialPoint& p, const SpecialPoint& q);

bool points_equal(const SpecialPoint& p, const SpecialPoint& q);

}  // namespace skel

#endif
