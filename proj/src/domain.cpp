#include "mixlap/domain.hpp"

#include <algorithm>
#include <cmath>

#include "mixlap/errors.hpp"

namespace mixlap {

double dist(const Point& a, const Point& b, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw ConfigError("interval requires a < b");
    Domain d;
    d.kind_ = DomainKind::Interval;
    d.n_ = 1;
    d.lo_ = {a, 0.0};
    d.hi_ = {b, 0.0};
    d.center_ = {0.5 * (a + b), 0.0};
    return d;
}

Domain Domain::ball(Point center, double radius) {
    if (!(radius > 0.0)) throw ConfigError("ball requires radius > 0");
    Domain d;
    d.kind_ = DomainKind::Ball;
    d.n_ = 2;
    d.center_ = center;
    d.radius_ = radius;
    d.lo_ = {center[0] - radius, center[1] - radius};
    d.hi_ = {center[0] + radius, center[1] + radius};
    return d;
}

Domain Domain::rectangle(Point lo, Point hi) {
    if (!(lo[0] < hi[0] && lo[1] < hi[1]))
        throw ConfigError("rectangle requires lo < hi componentwise");
    Domain d;
    d.kind_ = DomainKind::Rectangle;
    d.n_ = 2;
    d.lo_ = lo;
    d.hi_ = hi;
    d.center_ = {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
    return d;
}

double Domain::diameter() const {
    switch (kind_) {
        case DomainKind::Interval: return hi_[0] - lo_[0];
        case DomainKind::Ball: return 2.0 * radius_;
        case DomainKind::Rectangle:
            return std::hypot(hi_[0] - lo_[0], hi_[1] - lo_[1]);
    }
    return 0.0;
}

Point Domain::center() const { return center_; }

bool Domain::contains(const Point& p) const {
    switch (kind_) {
        case DomainKind::Interval: return p[0] > lo_[0] && p[0] < hi_[0];
        case DomainKind::Ball: return dist(p, center_, 2) < radius_;
        case DomainKind::Rectangle:
            return p[0] > lo_[0] && p[0] < hi_[0] && p[1] > lo_[1] && p[1] < hi_[1];
    }
    return false;
}

double Domain::signed_boundary_distance(const Point& p) const {
    switch (kind_) {
        case DomainKind::Interval:
            return std::min(p[0] - lo_[0], hi_[0] - p[0]);
        case DomainKind::Ball:
            return radius_ - dist(p, center_, 2);
        case DomainKind::Rectangle: {
            const double dx = std::min(p[0] - lo_[0], hi_[0] - p[0]);
            const double dy = std::min(p[1] - lo_[1], hi_[1] - p[1]);
            if (dx >= 0.0 && dy >= 0.0) return std::min(dx, dy);
            // outside: Euclidean distance to the box
            const double ox = std::max(0.0, -dx);
            const double oy = std::max(0.0, -dy);
            return -std::hypot(ox, oy);
        }
    }
    return 0.0;
}

double Domain::distance_to_closure(const Point& p) const {
    const double d = signed_boundary_distance(p);
    return d >= 0.0 ? 0.0 : -d;
}

std::array<Point, 2> Domain::bounding_box() const { return {lo_, hi_}; }

std::vector<Point> Domain::boundary_samples(int count) const {
    std::vector<Point> out;
    if (count < 1) return out;
    switch (kind_) {
        case DomainKind::Interval:
            out.push_back({lo_[0], 0.0});
            out.push_back({hi_[0], 0.0});
            break;
        case DomainKind::Ball:
            for (int i = 0; i < count; ++i) {
                const double t = 2.0 * M_PI * i / count;
                out.push_back({center_[0] + radius_ * std::cos(t),
                               center_[1] + radius_ * std::sin(t)});
            }
            break;
        case DomainKind::Rectangle: {
            const int m = std::max(1, count / 4);
            for (int i = 0; i <= m; ++i) {
                const double tx = lo_[0] + (hi_[0] - lo_[0]) * i / m;
                const double ty = lo_[1] + (hi_[1] - lo_[1]) * i / m;
                out.push_back({tx, lo_[1]});
                out.push_back({tx, hi_[1]});
                out.push_back({lo_[0], ty});
                out.push_back({hi_[0], ty});
            }
            break;
        }
    }
    return out;
}

void Domain::set_annulus_hint(AnnulusHint hint) {
    // Every boundary point must satisfy R/4 < |x - x0| < 3R/4.
    for (const Point& p : boundary_samples(256)) {
        const double r = dist(p, hint.x0, n_);
        if (!(r > 0.25 * hint.R && r < 0.75 * hint.R))
            throw AnnulusFailure("boundary sample violates R/4 < |x-x0| < 3R/4");
    }
    annulus_ = hint;
}

}  // namespace mixlap
