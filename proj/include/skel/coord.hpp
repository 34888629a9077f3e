#ifndef SKEL_COORD_HPP
#define SKEL_COORD_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "skel/errors.hpp"
#include "skel/rational.hpp"

namespace skel {

// Exact rational scalar with a double shadow. The shadow is always the
// rounded value of the exact rational, so filtered code may assume it is
// within one ulp.
class Coord {
public:
    Coord() : exact_(0), shadow_(0.0) {}
    Coord(int v) : exact_(v), shadow_(static_cast<double>(v)) {}
    Coord(long v) : exact_(static_cast<long>(v)), shadow_(static_cast<double>(v)) {}
    explicit Coord(Rat v) : exact_(std::move(v)), shadow_(exact_.get_d()) {}

    static Coord from_double(double d) { return Coord(Rat(d)); }
    static Coord from_decimal(std::string_view s) { return Coord(rat_from_decimal(s)); }

    const Rat& exact() const { return exact_; }
    double approx() const { return shadow_; }

    Coord operator+(const Coord& o) const { return Coord(exact_ + o.exact_); }
    Coord operator-(const Coord& o) const { return Coord(exact_ - o.exact_); }
    Coord operator*(const Coord& o) const { return Coord(exact_ * o.exact_); }
    Coord operator/(const Coord& o) const { return Coord(exact_ / o.exact_); }
    Coord operator-() const { return Coord(-exact_); }

    bool operator==(const Coord& o) const { return exact_ == o.exact_; }
    bool operator!=(const Coord& o) const { return exact_ != o.exact_; }
    bool operator<(const Coord& o) const { return exact_ < o.exact_; }
    bool operator<=(const Coord& o) const { return exact_ <= o.exact_; }
    bool operator>(const Coord& o) const { return exact_ > o.exact_; }
    bool operator>=(const Coord& o) const { return exact_ >= o.exact_; }

    int sgn() const { return sign(exact_); }

private:
    Rat exact_;
    double shadow_;
};

struct Point {
    Coord x, y;
    std::optional<std::uint32_t> id;

    Point() = default;
    Point(Coord px, Coord py) : x(std::move(px)), y(std::move(py)) {}
    Point(Coord px, Coord py, std::uint32_t pid)
        : x(std::move(px)), y(std::move(py)), id(pid) {}

    bool same_location(const Point& o) const { return x == o.x && y == o.y; }
};

// Circle stored by center and squared radius; beta*d/2 may be irrational but
// its square is rational for rational beta.
struct Circle {
    Point center;
    Coord r_sq;

    Circle(Point c, Coord rsq) : center(std::move(c)), r_sq(std::move(rsq)) {
        if (r_sq.sgn() <= 0) throw precondition_error("circle needs r_sq > 0");
    }
};

struct Box {
    Coord xlo, ylo, xhi, yhi;

    bool strictly_inside(const Point& p) const {
        return p.x > xlo && p.x < xhi && p.y > ylo && p.y < yhi;
    }
};

class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts) {
        pts_.reserve(pts.size());
        for (auto& p : pts) push(std::move(p.x), std::move(p.y));
    }

    void push(Coord x, Coord y) {
        std::uint32_t id = static_cast<std::uint32_t>(pts_.size());
        xs_.push_back(x.approx());
        ys_.push_back(y.approx());
        pts_.emplace_back(std::move(x), std::move(y), id);
    }

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }

    // packed shadows for hot loops
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

    // Returns indices (i, j), i < j, of some duplicate pair, if any.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> find_duplicate() const;

    Box bounding_box() const;        // tight; requires nonempty
    Box inflated_box() const;        // tight box grown 10% per side plus 1

private:
    std::vector<Point> pts_;
    std::vector<double> xs_, ys_;
};

inline std::optional<std::pair<std::uint32_t, std::uint32_t>> PointSet::find_duplicate() const {
    std::vector<std::uint32_t> order(pts_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (xs_[a] != xs_[b]) return xs_[a] < xs_[b];
        return ys_[a] < ys_[b];
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        // shadows equal is necessary for exact equality; confirm exactly
        std::uint32_t a = order[i - 1], b = order[i];
        if (xs_[a] == xs_[b] && ys_[a] == ys_[b] && pts_[a].same_location(pts_[b]))
            return std::make_pair(std::min(a, b), std::max(a, b));
    }
    return std::nullopt;
}

inline Box PointSet::bounding_box() const {
    if (pts_.empty()) throw precondition_error("bounding_box of empty set");
    Coord xlo = pts_[0].x, xhi = pts_[0].x, ylo = pts_[0].y, yhi = pts_[0].y;
    for (const auto& p : pts_) {
        if (p.x < xlo) xlo = p.x;
        if (p.x > xhi) xhi = p.x;
        if (p.y < ylo) ylo = p.y;
        if (p.y > yhi) yhi = p.y;
    }
    return {xlo, ylo, xhi, yhi};
}

inline Box PointSet::inflated_box() const {
    Box b = bounding_box();
    Coord ten(10), one(1);
    Coord dx = (b.xhi - b.xlo) / ten + one;
    Coord dy = (b.yhi - b.ylo) / ten + one;
    return {b.xlo - dx, b.ylo - dy, b.xhi + dx, b.yhi + dy};
}

}  // namespace skel

#endif
