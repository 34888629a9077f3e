#ifndef SKEL_REGION_HPP
#define SKEL_REGION_HPP

#include <variant>

#include "skel/coord.hpp"
#include "skel/predicates.hpp"

namespace skel {

// The beta parameter: a nonnegative rational or infinity.
class Beta {
public:
    Beta() : inf_(false), v_(0) {}
    static Beta infinity() {
        Beta b;
        b.inf_ = true;
        return b;
    }
    static Beta of(Rat v) {
        if (sign(v) < 0) throw precondition_error("beta must be >= 0");
        Beta b;
        b.v_ = std::move(v);
        return b;
    }
    static Beta parse(std::string_view s);  // decimal, p/q, or "inf"

    bool is_infinite() const { return inf_; }
    const Rat& value() const { return v_; }

    bool operator<(const Rat& r) const { return !inf_ && v_ < r; }
    bool operator<=(const Rat& r) const { return !inf_ && v_ <= r; }
    bool operator>(const Rat& r) const { return inf_ || v_ > r; }
    bool operator>=(const Rat& r) const { return inf_ || v_ >= r; }
    bool operator==(const Beta& o) const { return inf_ == o.inf_ && (inf_ || v_ == o.v_); }

    std::string to_string() const;

private:
    bool inf_;
    Rat v_;
};

enum class Closure { Open, Closed };
enum class Variant { LuneBased, CircleBased };

// R(x, y, beta) variants. Lune circles have rational centers and squared
// radii. Lens and CircleUnion circles pass through x and y with radii whose
// centers are irrational for general rational beta, so those regions are
// kept in the chord-circle form
//     Q_s(p) = (p-x).(p-y) + s*sqrt(lam_sq)*cross(y-x, p-x),  s = +-1,
// whose sign is exactly decidable; each sign of s selects one disc.
struct SegmentRegion {
    Point x, y;
};
struct LensRegion {
    Point x, y;
    Rat lam_sq;  // 1/beta^2 - 1
};
struct LuneRegion {
    Point x, y;
    Circle d1, d2;  // d1 passes through x, d2 through y
};
struct StripRegion {
    Point x, y;  // between the two perpendiculars to xy at x and y
};
struct CircleUnionRegion {
    Point x, y;
    Rat lam_sq;  // beta^2 - 1
};

using Region = std::variant<SegmentRegion, LensRegion, LuneRegion, StripRegion, CircleUnionRegion>;

Region make_region(const Point& x, const Point& y, const Beta& beta, Variant variant);

bool region_contains(const Region& r, const Point& p, Closure closure);

// True iff p lies exactly on the region's boundary (closed \ open).
bool region_boundary_contains(const Region& r, const Point& p);

const Point& region_site_x(const Region& r);
const Point& region_site_y(const Region& r);

}  // namespace skel

#endif
