#pragma once

#include <array>
#include <optional>
#include <vector>

namespace mixlap {

/// A point in R^n, n <= 2. For n == 1 only x[0] is meaningful.
using Point = std::array<double, 2>;

double dist(const Point& a, const Point& b, int n);

/// Annulus data: closure(Omega) must sit inside B_{3R/4}(x0) \ B_{R/4}(x0).
struct AnnulusHint {
    Point x0{0.0, 0.0};
    double R = 0.0;
};

enum class DomainKind { Interval, Ball, Rectangle };

/// Bounded open domain: interval [a,b] (n=1), ball(center,radius) or
/// axis-aligned rectangle [lo,hi] (n=2). Exterior condition u = 0 holds on
/// all of R^n minus the domain, so geometric predicates are exact on purpose.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain ball(Point center, double radius);
    static Domain rectangle(Point lo, Point hi);

    DomainKind kind() const { return kind_; }
    int dim() const { return n_; }
    double diameter() const;
    Point center() const;

    /// Strict interior membership.
    bool contains(const Point& p) const;
    /// Exact distance to the boundary (positive inside, negative outside).
    double signed_boundary_distance(const Point& p) const;
    /// Distance from p to the closure of the domain (0 if inside).
    double distance_to_closure(const Point& p) const;

    /// Axis-aligned bounding box [lo, hi].
    std::array<Point, 2> bounding_box() const;
    /// Deterministic samples on the boundary (per_side per edge/arc segment).
    std::vector<Point> boundary_samples(int count) const;

    const std::optional<AnnulusHint>& annulus_hint() const { return annulus_; }
    void set_annulus_hint(AnnulusHint hint);

    // Interval accessors (valid when kind == Interval)
    double a() const { return lo_[0]; }
    double b() const { return hi_[0]; }
    // Ball accessors
    double radius() const { return radius_; }
    Point ball_center() const { return center_; }
    // Rectangle accessors
    Point lo() const { return lo_; }
    Point hi() const { return hi_; }

private:
    Domain() = default;
    DomainKind kind_ = DomainKind::Interval;
    int n_ = 1;
    Point lo_{0.0, 0.0}, hi_{0.0, 0.0}, center_{0.0, 0.0};
    double radius_ = 0.0;
    std::optional<AnnulusHint> annulus_;
};

}  // namespace mixlap
