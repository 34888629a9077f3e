#include "skel/region.hpp"

#include "skel/quadfield.hpp"

namespace skel {

Beta Beta::parse(std::string_view s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
    return of(rat_from_text(s));
}

std::string Beta::to_string() const { return inf_ ? "inf" : rat_to_string(v_); }

namespace {

Point affine_mix(const Point& x, const Point& y, const Rat& wx, const Rat& wy) {
    return Point(Coord(wx * x.x.exact() + wy * y.x.exact()),
                 Coord(wx * x.y.exact() + wy * y.y.exact()));
}

Rat dist_sq(const Point& a, const Point& b) {
    Rat dx = a.x.exact() - b.x.exact();
    Rat dy = a.y.exact() - b.y.exact();
    return dx * dx + dy * dy;
}

// sign of (p-x).(p-y) + s*sqrt(lam_sq)*cross(y-x, p-x) — the chord-circle
// form; negative strictly inside the disc selected by s.
int chord_disc_side(const Point& x, const Point& y, const Rat& lam_sq, int s, const Point& p) {
    Rat dot = (p.x.exact() - x.x.exact()) * (p.x.exact() - y.x.exact()) +
              (p.y.exact() - x.y.exact()) * (p.y.exact() - y.y.exact());
    Rat cr = (y.x.exact() - x.x.exact()) * (p.y.exact() - x.y.exact()) -
             (y.y.exact() - x.y.exact()) * (p.x.exact() - x.x.exact());
    return quad_sign(dot, s > 0 ? cr : -cr, lam_sq);
}

// projection parameter of p onto xy, scaled by |xy|^2: 0 at x, d^2 at y
Rat strip_param(const Point& x, const Point& y, const Point& p) {
    return (p.x.exact() - x.x.exact()) * (y.x.exact() - x.x.exact()) +
           (p.y.exact() - x.y.exact()) * (y.y.exact() - x.y.exact());
}

bool inside(int side, Closure c) {
    return c == Closure::Open ? side > 0 : side >= 0;
}

}  // namespace

Region make_region(const Point& x, const Point& y, const Beta& beta, Variant variant) {
    if (x.same_location(y)) throw input_error("make_region: x == y");
    if (variant == Variant::CircleBased) {
        if (beta.is_infinite())
            throw unsupported_error("circle-based region undefined for beta = inf");
        if (beta < Rat(1))
            throw unsupported_error("circle-based region requires beta >= 1");
        Rat b = beta.value();
        return CircleUnionRegion{x, y, b * b - 1};
    }
    if (beta.is_infinite()) return StripRegion{x, y};
    const Rat& b = beta.value();
    if (sign(b) == 0) return SegmentRegion{x, y};
    if (b < 1) {
        // two discs of radius d/(2 beta) through both x and y
        return LensRegion{x, y, Rat(1) / (b * b) - 1};
    }
    // lune: discs of radius beta*d/2 centered at (1-b/2)x + (b/2)y and its mirror
    Rat half = b / 2;
    Point c1 = affine_mix(x, y, 1 - half, half);
    Point c2 = affine_mix(x, y, half, 1 - half);
    Rat r_sq = b * b * dist_sq(x, y) / 4;
    return LuneRegion{x, y, Circle(c1, Coord(r_sq)), Circle(c2, Coord(r_sq))};
}

bool region_contains(const Region& r, const Point& p, Closure closure) {
    return std::visit(
        [&](const auto& reg) -> bool {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, SegmentRegion>) {
                if (orient2d(reg.x, reg.y, p) != 0) return false;
                Rat t = strip_param(reg.x, reg.y, p);
                Rat d2 = dist_sq(reg.x, reg.y);
                if (closure == Closure::Open) return sign(t) > 0 && t < d2;
                return sign(t) >= 0 && t <= d2;
            } else if constexpr (std::is_same_v<T, LensRegion>) {
                int s1 = chord_disc_side(reg.x, reg.y, reg.lam_sq, +1, p);
                int s2 = chord_disc_side(reg.x, reg.y, reg.lam_sq, -1, p);
                return inside(-s1, closure) && inside(-s2, closure);
            } else if constexpr (std::is_same_v<T, LuneRegion>) {
                int s1 = side_of_circle(p, reg.d1);
                if (!inside(s1, closure)) return false;
                return inside(side_of_circle(p, reg.d2), closure);
            } else if constexpr (std::is_same_v<T, StripRegion>) {
                Rat t = strip_param(reg.x, reg.y, p);
                Rat d2 = dist_sq(reg.x, reg.y);
                if (closure == Closure::Open) return sign(t) > 0 && t < d2;
                return sign(t) >= 0 && t <= d2;
            } else {
                static_assert(std::is_same_v<T, CircleUnionRegion>);
                int s1 = chord_disc_side(reg.x, reg.y, reg.lam_sq, +1, p);
                int s2 = chord_disc_side(reg.x, reg.y, reg.lam_sq, -1, p);
                return inside(-s1, closure) || inside(-s2, closure);
            }
        },
        r);
}

bool region_boundary_contains(const Region& r, const Point& p) {
    return region_contains(r, p, Closure::Closed) && !region_contains(r, p, Closure::Open);
}

const Point& region_site_x(const Region& r) {
    return std::visit([](const auto& reg) -> const Point& { return reg.x; }, r);
}

const Point& region_site_y(const Region& r) {
    return std::visit([](const auto& reg) -> const Point& { return reg.y; }, r);
}

}  // namespace skel
