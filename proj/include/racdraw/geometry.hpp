#pragma once

#include <optional>
#include <stdexcept>
#include <tuple>
#include <variant>

#include "racdraw/scalar.hpp"

namespace racdraw {

struct Point {
    Scalar x;
    Scalar y;

    friend bool operator==(const Point&, const Point&) = default;
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const Scalar& s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << '(' << p.x << ", " << p.y << ')';
}

struct PointKeyLess {
    bool operator()(const Point& a, const Point& b) const {
        ScalarKeyLess less;
        if (less(a.x, b.x)) return true;
        if (less(b.x, a.x)) return false;
        return less(a.y, b.y);
    }
};

inline Scalar dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
inline Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Segment {
public:
    Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_ == b_) throw GeometryError("zero-length segment");
    }
    const Point& a() const { return a_; }
    const Point& b() const { return b_; }
    Point direction() const { return b_ - a_; }

private:
    Point a_;
    Point b_;
};

/// Sign of (b - a) x (c - b); +1 is a left turn.
inline int turn_sign(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - b).sign();
}

inline int orientation(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a).sign();
}

inline bool is_perpendicular(const Segment& s1, const Segment& s2) {
    return dot(s1.direction(), s2.direction()).is_zero();
}

/// True when p lies on the closed segment.
inline bool on_segment(const Segment& s, const Point& p) {
    if (orientation(s.a(), s.b(), p) != 0) return false;
    const Point d = s.direction();
    const Scalar t = dot(p - s.a(), d);
    return t.sign() >= 0 && (t - dot(d, d)).sign() <= 0;
}

/// True when p lies on the segment strictly between its endpoints.
inline bool in_segment_interior(const Segment& s, const Point& p) {
    return on_segment(s, p) && p != s.a() && p != s.b();
}

struct NoIntersection {
    friend bool operator==(const NoIntersection&, const NoIntersection&) = default;
};
struct PointIntersection {
    Point p;
    bool on_interior_of_s1;
    bool on_interior_of_s2;
    friend bool operator==(const PointIntersection&, const PointIntersection&) = default;
};
struct OverlapIntersection {
    friend bool operator==(const OverlapIntersection&, const OverlapIntersection&) = default;
};

using IntersectionKind = std::variant<NoIntersection, PointIntersection, OverlapIntersection>;

namespace detail {

inline bool boxes_disjoint(const Segment& s1, const Segment& s2) {
    auto lo_hi = [](const Scalar& u, const Scalar& v) {
        return u <= v ? std::pair<const Scalar&, const Scalar&>(u, v)
                      : std::pair<const Scalar&, const Scalar&>(v, u);
    };
    auto [ax0, ax1] = lo_hi(s1.a().x, s1.b().x);
    auto [bx0, bx1] = lo_hi(s2.a().x, s2.b().x);
    if (ax1 < bx0 || bx1 < ax0) return true;
    auto [ay0, ay1] = lo_hi(s1.a().y, s1.b().y);
    auto [by0, by1] = lo_hi(s2.a().y, s2.b().y);
    return ay1 < by0 || by1 < ay0;
}

}  // namespace detail

/// Exact classification of the intersection of two closed segments.
inline IntersectionKind seg_intersection(const Segment& s1, const Segment& s2) {
    if (detail::boxes_disjoint(s1, s2)) return NoIntersection{};
    const Point d1 = s1.direction();
    const Point d2 = s2.direction();
    const Scalar denom = cross(d1, d2);
    if (denom.is_zero()) {
        if (orientation(s1.a(), s1.b(), s2.a()) != 0) return NoIntersection{};
        // collinear: project onto d1
        const Scalar len = dot(d1, d1);
        Scalar t0 = dot(s2.a() - s1.a(), d1);
        Scalar t1 = dot(s2.b() - s1.a(), d1);
        if (t1 < t0) std::swap(t0, t1);
        const Scalar lo = t0 > Scalar(0) ? t0 : Scalar(0);
        const Scalar hi = t1 < len ? t1 : len;
        const int c = (hi - lo).sign();
        if (c < 0) return NoIntersection{};
        if (c > 0) return OverlapIntersection{};
        // touching at a single shared endpoint
        const Point p = lo.is_zero() ? s1.a() : s1.b();
        return PointIntersection{p, false, in_segment_interior(s2, p)};
    }
    const Point w = s2.a() - s1.a();
    const Scalar t = cross(w, d2) / denom;
    const Scalar u = cross(w, d1) / denom;
    const Scalar zero(0);
    const Scalar one(1);
    if (t < zero || t > one || u < zero || u > one) return NoIntersection{};
    Point p = s1.a() + t * d1;
    const bool in1 = t > zero && t < one;
    const bool in2 = u > zero && u < one;
    return PointIntersection{std::move(p), in1, in2};
}

/// Half-plane index used for exact angular sorting: 0 for directions with
/// angle in [0, pi), 1 for [pi, 2 pi).
inline int angle_half(const Point& d) {
    const int sy = d.y.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return d.x.sign() > 0 ? 0 : 1;
}

/// Strict counterclockwise angular order of nonzero direction vectors,
/// starting from the positive x axis.
inline bool angle_less(const Point& u, const Point& v) {
    const int hu = angle_half(u);
    const int hv = angle_half(v);
    if (hu != hv) return hu < hv;
    return cross(u, v).sign() > 0;
}

}  // namespace racdraw
