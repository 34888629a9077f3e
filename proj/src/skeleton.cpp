#include "skel/skeleton.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "skel/curves.hpp"
#include "skel/trapmap.hpp"

namespace skel {

namespace {

constexpr double EPS = 0.5 * std::numeric_limits<double>::epsilon();

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void require_beta_gt2(const Beta& beta, const char* algo) {
    if (!(beta > Rat(2)))
        throw unsupported_error(std::string(algo) + " requires beta > 2 (lune-based)");
}

// Double-filtered membership test for lunes and strips; everything within
// the error band falls back to the exact rational test, so closure
// distinctions are always decided exactly.
class FastBlockTester {
public:
    FastBlockTester(const Region& r, Closure closure) : region_(&r), closure_(closure) {
        if (const auto* lune = std::get_if<LuneRegion>(&r)) {
            kind_ = Kind::Lune;
            c1x_ = lune->d1.center.x.approx();
            c1y_ = lune->d1.center.y.approx();
            c2x_ = lune->d2.center.x.approx();
            c2y_ = lune->d2.center.y.approx();
            r2_ = lune->d1.r_sq.approx();
            double rad = std::sqrt(r2_) * (1 + 1e-12) + 1e-300;
            blo_x_ = std::min(c1x_, c2x_) - rad;
            bhi_x_ = std::max(c1x_, c2x_) + rad;
            blo_y_ = std::min(c1y_, c2y_) - rad;
            bhi_y_ = std::max(c1y_, c2y_) + rad;
            csq_ = c1x_ * c1x_ + c1y_ * c1y_ + c2x_ * c2x_ + c2y_ * c2y_ + std::abs(r2_);
        } else if (const auto* strip = std::get_if<StripRegion>(&r)) {
            kind_ = Kind::Strip;
            c1x_ = strip->x.x.approx();
            c1y_ = strip->x.y.approx();
            c2x_ = strip->y.x.approx() - c1x_;  // direction vector
            c2y_ = strip->y.y.approx() - c1y_;
            r2_ = c2x_ * c2x_ + c2y_ * c2y_;
            csq_ = c1x_ * c1x_ + c1y_ * c1y_ + c2x_ * c2x_ + c2y_ * c2y_ + std::abs(r2_);
        } else {
            kind_ = Kind::Exact;
        }
    }

    // true iff p (index into the packed arrays) blocks the edge
    bool blocked(const PointSet& pts, std::uint32_t p) const {
        double px = pts.xs()[p], py = pts.ys()[p];
        if (kind_ == Kind::Lune) {
            if (px < blo_x_ || px > bhi_x_ || py < blo_y_ || py > bhi_y_) return false;
            double band = 256.0 * EPS * (1 + px * px + py * py + csq_);
            double d1 = (px - c1x_) * (px - c1x_) + (py - c1y_) * (py - c1y_) - r2_;
            if (d1 > band) return false;
            double d2 = (px - c2x_) * (px - c2x_) + (py - c2y_) * (py - c2y_) - r2_;
            if (d2 > band) return false;
            if (d1 < -band && d2 < -band) return true;
        } else if (kind_ == Kind::Strip) {
            double t = (px - c1x_) * c2x_ + (py - c1y_) * c2y_;
            double band = 256.0 * EPS * (1 + px * px + py * py + csq_);
            if (t < -band || t > r2_ + band) return false;
            if (t > band && t < r2_ - band) return true;
        }
        return region_contains(*region_, pts[p], closure_);
    }

private:
    enum class Kind { Lune, Strip, Exact } kind_;
    const Region* region_;
    Closure closure_;
    double c1x_ = 0, c1y_ = 0, c2x_ = 0, c2y_ = 0, r2_ = 0, csq_ = 0;
    double blo_x_ = 0, bhi_x_ = 0, blo_y_ = 0, bhi_y_ = 0;
};

void check_input(const PointSet& points) {
    if (points.size() < 2) throw input_error("need at least 2 points");
    if (auto dup = points.find_duplicate())
        throw input_error("duplicate points at indices " + std::to_string(dup->first) + " and " +
                          std::to_string(dup->second));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 s(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    return s.next();
}

}  // namespace

std::size_t choose_group_size(std::size_t n) {
    double nn = static_cast<double>(n);
    double lg = std::log2(std::max(nn, 2.0));
    auto m = static_cast<std::size_t>(std::ceil(std::sqrt(nn * lg)));
    return std::max<std::size_t>(1, m);
}

SkeletonGraph brute_force(const PointSet& points, const Beta& beta, Variant variant,
                          Closure closure) {
    check_input(points);
    if (variant == Variant::CircleBased && (beta.is_infinite() || beta < Rat(1)))
        throw unsupported_error("circle-based variant requires 1 <= beta < inf");
    double t0 = now_s();
    SkeletonGraph g;
    g.n = static_cast<std::uint32_t>(points.size());
    g.stats.algorithm = "bruteforce";
    g.stats.beta = beta;
    g.stats.closure = closure;
    std::uint32_t n = g.n;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            Region r = make_region(points[i], points[j], beta, variant);
            FastBlockTester tester(r, closure);
            bool blocked = false;
            for (std::uint32_t k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                blocked = tester.blocked(points, k);
            }
            if (!blocked) g.edges.push_back({i, j});
        }
    g.stats.timings.traverse = now_s() - t0;
    return g;
}

SkeletonGraph dt_filter(const PointSet& points, const Beta& beta, Closure closure) {
    check_input(points);
    require_beta_gt2(beta, "dt_filter");
    SkeletonGraph g;
    g.n = static_cast<std::uint32_t>(points.size());
    g.stats.algorithm = "dt-filter";
    g.stats.beta = beta;
    g.stats.closure = closure;
    double t0 = now_s();
    Triangulation dt = triangulate(points, 0);
    g.stats.degenerate_ties = dt.degenerate_ties;
    g.stats.timings.dt = now_s() - t0;
    t0 = now_s();
    std::uint32_t n = g.n;
    for (const EdgePair& e : dt.edge_list) {
        Region r = make_region(points[e.first], points[e.second], beta, Variant::LuneBased);
        FastBlockTester tester(r, closure);
        bool blocked = false;
        for (std::uint32_t k = 0; k < n && !blocked; ++k) {
            if (k == e.first || k == e.second) continue;
            blocked = tester.blocked(points, k);
        }
        if (!blocked) g.edges.push_back(e);
    }
    g.stats.timings.traverse = now_s() - t0;
    return g;
}

namespace {

// strict cover of every lune in the group plus all input points
Box group_box(const PointSet& points, const std::vector<Region>& regions) {
    Box b = points.bounding_box();
    Rat xlo = b.xlo.exact(), ylo = b.ylo.exact(), xhi = b.xhi.exact(), yhi = b.yhi.exact();
    for (const Region& r : regions) {
        if (const auto* lune = std::get_if<LuneRegion>(&r)) {
            Rat rad = sqrt_upper_bound(lune->d1.r_sq.exact());
            for (const Circle* c : {&lune->d1, &lune->d2}) {
                xlo = std::min(xlo, Rat(c->center.x.exact() - rad));
                xhi = std::max(xhi, Rat(c->center.x.exact() + rad));
                ylo = std::min(ylo, Rat(c->center.y.exact() - rad));
                yhi = std::max(yhi, Rat(c->center.y.exact() + rad));
            }
        }
    }
    Rat dx = (xhi - xlo) / 10 + 1, dy = (yhi - ylo) / 10 + 1;
    return Box{Coord(xlo - dx), Coord(ylo - dy), Coord(xhi + dx), Coord(yhi + dy)};
}

struct GroupResult {
    PhaseTimings times;
};

}  // namespace

SkeletonGraph batched(const PointSet& points, const Beta& beta, Closure closure,
                      const AlgoConfig& cfg) {
    check_input(points);
    require_beta_gt2(beta, "batched");
    SkeletonGraph g;
    g.n = static_cast<std::uint32_t>(points.size());
    g.stats.algorithm = "batched";
    g.stats.beta = beta;
    g.stats.closure = closure;

    double t0 = now_s();
    Triangulation dt = triangulate(points, cfg.rng_seed);
    g.stats.degenerate_ties = dt.degenerate_ties;
    g.stats.timings.dt = now_s() - t0;

    const std::vector<EdgePair>& all_edges = dt.edge_list;
    std::size_t m = cfg.group_size_override.value_or(choose_group_size(points.size()));
    if (m < 1) throw precondition_error("group size must be >= 1");
    std::size_t groups = (all_edges.size() + m - 1) / m;
    g.stats.m = m;
    g.stats.group_count = groups;
    std::vector<char> occupied(all_edges.size(), 0);
    const bool log = std::getenv("SKEL_LOG") != nullptr;

    std::mutex merge_mu;
    auto run_group = [&](std::size_t gi) {
        double tb = now_s();
        std::size_t lo = gi * m, hi = std::min(all_edges.size(), lo + m);
        std::vector<Region> regions;
        std::vector<EdgePair> sites;
        regions.reserve(hi - lo);
        for (std::size_t e = lo; e < hi; ++e) {
            const EdgePair& ep = all_edges[e];
            regions.push_back(make_region(points[ep.first], points[ep.second], beta,
                                          Variant::LuneBased));
            sites.push_back(ep);
        }
        Box bbox = group_box(points, regions);
        std::vector<CurveSegment> curves;
        for (std::uint32_t i = 0; i < regions.size(); ++i) {
            auto cs = boundary_curves(regions[i], bbox, i);
            curves.insert(curves.end(), std::make_move_iterator(cs.begin()),
                          std::make_move_iterator(cs.end()));
        }
        TrapMap map(curves, bbox, mix_seed(cfg.rng_seed, gi + 1));
        double tl = now_s();
        map.locate_points(points);
        double tt = now_s();
        std::vector<char> occ = map.dual_traverse_mark(regions, sites, points, closure);
        double te = now_s();
        {
            std::lock_guard<std::mutex> lk(merge_mu);
            for (std::size_t i = 0; i < occ.size(); ++i)
                if (occ[i]) occupied[lo + i] = 1;
            g.stats.timings.build += tl - tb;
            g.stats.timings.locate += tt - tl;
            g.stats.timings.traverse += te - tt;
        }
        if (log)
            std::fprintf(stderr, "[skel] group %zu/%zu: lunes=%zu traps=%zu %.3fs\n", gi + 1,
                         groups, hi - lo, map.alive_count(), te - tb);
    };

    if (cfg.parallel_groups && groups > 1) {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < std::min<std::size_t>(hw, groups); ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t gi = next.fetch_add(1);
                    if (gi >= groups) return;
                    run_group(gi);
                }
            });
        for (auto& th : workers) th.join();
    } else {
        for (std::size_t gi = 0; gi < groups; ++gi) run_group(gi);
    }

    for (std::size_t e = 0; e < all_edges.size(); ++e)
        if (!occupied[e]) g.edges.push_back(all_edges[e]);

    if (closure == Closure::Closed) {
        // points exactly on a surviving lune's boundary may have been routed
        // to a face outside it; exact boundary tests finish the job
        double tp = now_s();
        std::vector<EdgePair> kept;
        for (const EdgePair& ep : g.edges) {
            Region r = make_region(points[ep.first], points[ep.second], beta, Variant::LuneBased);
            bool blocked = false;
            for (std::uint32_t k = 0; k < g.n && !blocked; ++k) {
                if (k == ep.first || k == ep.second) continue;
                blocked = region_boundary_contains(r, points[k]);
            }
            if (!blocked) kept.push_back(ep);
        }
        g.edges = std::move(kept);
        g.stats.timings.post = now_s() - tp;
    }

    if (cfg.paranoid_verify) {
        double tv = now_s();
        SkeletonGraph ref = dt_filter(points, beta, closure);
        if (ref.edges != g.edges) {
            std::size_t k = 0;
            while (k < std::min(ref.edges.size(), g.edges.size()) && ref.edges[k] == g.edges[k])
                ++k;
            std::string diff = k < ref.edges.size()
                                   ? "(" + std::to_string(ref.edges[k].first) + "," +
                                         std::to_string(ref.edges[k].second) + ")"
                                   : "(end)";
            throw std::runtime_error("batched/dt-filter mismatch near edge " + diff);
        }
        g.stats.verified = true;
        g.stats.timings.verify = now_s() - tv;
    }
    return g;
}

}  // namespace skel
