#include "skel/quadfield.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace skel {

namespace {

const double INF = std::numeric_limits<double>::infinity();

double up(double v) { return std::nextafter(v, INF); }
double down(double v) { return std::nextafter(v, -INF); }

DInterval iv_add(DInterval u, DInterval v) { return {down(u.lo + v.lo), up(u.hi + v.hi)}; }

DInterval iv_mul(DInterval u, DInterval v) {
    double c[4] = {u.lo * v.lo, u.lo * v.hi, u.hi * v.lo, u.hi * v.hi};
    double lo = c[0], hi = c[0];
    for (double x : c) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {down(lo), up(hi)};
}

DInterval iv_sqrt(DInterval v) {
    double lo = v.lo <= 0 ? 0.0 : down(std::sqrt(v.lo));
    double hi = up(std::sqrt(std::max(v.hi, 0.0)));
    return {lo, hi};
}

}  // namespace

int quad_sign(const Rat& a, const Rat& b, const Rat& d) {
    int sb = sign(b), sd = sign(d);
    if (sb == 0 || sd == 0) return sign(a);
    int sa = sign(a);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: |a| vs |b| sqrt(d)
    int st = sign(a * a - b * b * d);
    return sa > 0 ? st : -st;
}

int quad_cmp(const QuadVal& u, const QuadVal& v) {
    bool ur = u.is_rational(), vr = v.is_rational();
    if (ur && vr) return sign(u.a - v.a);
    if (ur) return quad_sign(u.a - v.a, -v.b, v.d);
    if (vr) return quad_sign(u.a - v.a, u.b, u.d);
    if (u.d == v.d) return quad_sign(u.a - v.a, u.b - v.b, u.d);
    // A + B sqrt(d1) vs -C sqrt(d2) with A = u.a - v.a, B = u.b, C = -v.b
    Rat A = u.a - v.a;
    int s1 = quad_sign(A, u.b, u.d);
    int s2 = -sign(v.b);  // sign of -v.b * sqrt(v.d)
    if (s2 == 0) return s1;
    if (s1 == 0) return s2;
    if (s1 == s2) return s1;
    // compare squares: (A + B sqrt(d1))^2 vs C^2 d2
    Rat rat_part = A * A + u.b * u.b * u.d - v.b * v.b * v.d;
    int su = quad_sign(rat_part, 2 * A * u.b, u.d);
    if (su == 0) return 0;
    return su > 0 ? s1 : s2;
}

DInterval quad_interval(const Rat& a, const Rat& b, const Rat& d) {
    DInterval r = rat_to_interval(a);
    if (sign(b) == 0 || sign(d) == 0) return r;
    return iv_add(r, iv_mul(rat_to_interval(b), iv_sqrt(rat_to_interval(d))));
}

SpecialPoint SpecialPoint::rational(Rat x, Rat y) {
    SpecialPoint p;
    p.ax = std::move(x);
    p.ay = std::move(y);
    DInterval ix = rat_to_interval(p.ax), iy = rat_to_interval(p.ay);
    p.xlo = ix.lo;
    p.xhi = ix.hi;
    p.ylo = iy.lo;
    p.yhi = iy.hi;
    return p;
}

SpecialPoint SpecialPoint::quad(Rat ax, Rat bx, Rat ay, Rat by, Rat d) {
    assert(sign(d) >= 0);
    SpecialPoint p;
    p.ax = std::move(ax);
    p.bx = std::move(bx);
    p.ay = std::move(ay);
    p.by = std::move(by);
    p.d = std::move(d);
    DInterval ix = quad_interval(p.ax, p.bx, p.d), iy = quad_interval(p.ay, p.by, p.d);
    p.xlo = ix.lo;
    p.xhi = ix.hi;
    p.ylo = iy.lo;
    p.yhi = iy.hi;
    return p;
}

int lex_cmp(const SpecialPoint& p, const SpecialPoint& q) {
    if (p.xhi < q.xlo) return -1;
    if (p.xlo > q.xhi) return 1;
    int cx = quad_cmp(p.x(), q.x());
    if (cx != 0) return cx;
    if (p.yhi < q.ylo) return -1;
    if (p.ylo > q.yhi) return 1;
    return quad_cmp(p.y(), q.y());
}

bool points_equal(const SpecialPoint& p, const SpecialPoint& q) { return lex_cmp(p, q) == 0; }

}  // namespace skel
