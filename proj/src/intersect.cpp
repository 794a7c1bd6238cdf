#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

namespace {

void push_unique(std::vector<Vec2>& pts, Vec2 p, double tol) {
    for (const auto& q : pts) {
        if (norm(q - p) <= tol) return;
    }
    pts.push_back(p);
}

std::vector<Vec2> circle_circle(const CircleGeom& a, const CircleGeom& b, const Arc& arc_a, const Arc& arc_b,
                                double tol) {
    std::vector<Vec2> out;
    const Vec2 dc = b.center - a.center;
    const double d = norm(dc);
    if (d <= tol && std::abs(a.radius - b.radius) <= tol) {
        // same circle: overlap endpoints
        for (Vec2 p : {arc_a.start(), arc_a.end()}) out.push_back(p);
        for (Vec2 p : {arc_b.start(), arc_b.end()}) out.push_back(p);
        return out;
    }
    if (d <= tol) return out;
    if (d > a.radius + b.radius + tol || d < std::abs(a.radius - b.radius) - tol) return out;
    const double along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    const double h2 = a.radius * a.radius - along * along;
    const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    const Vec2 u = (1.0 / d) * dc;
    const Vec2 base = a.center + along * u;
    out.push_back(base + h * left_normal(u));
    out.push_back(base - h * left_normal(u));
    return out;
}

std::vector<Vec2> segment_circle(const SegmentGeom& s, const CircleGeom& c) {
    std::vector<Vec2> out;
    const Vec2 v = s.p1 - s.p0;
    const Vec2 w = s.p0 - c.center;
    const double qa = dot(v, v);
    const double qb = 2.0 * dot(v, w);
    const double qc = dot(w, w) - c.radius * c.radius;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * qb * qb - 1e-300) return out;
    disc = std::max(disc, 0.0);
    const double sq = std::sqrt(disc);
    for (double s_param : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
        out.push_back(s.p0 + s_param * v);
    }
    return out;
}

std::vector<Vec2> segment_segment(const SegmentGeom& a, const SegmentGeom& b, double tol) {
    std::vector<Vec2> out;
    const Vec2 r = a.p1 - a.p0;
    const Vec2 s = b.p1 - b.p0;
    const double denom = cross(r, s);
    const double scale = norm(r) * norm(s);
    if (std::abs(denom) <= 1e-14 * scale) {
        // parallel; collinear overlap is reported by its endpoints
        const double off = std::abs(cross(r, b.p0 - a.p0)) / norm(r);
        if (off > tol) return out;
        for (Vec2 p : {a.p0, a.p1, b.p0, b.p1}) out.push_back(p);
        return out;
    }
    const double t = cross(b.p0 - a.p0, s) / denom;
    out.push_back(a.p0 + t * r);
    return out;
}

}  // namespace

std::vector<Vec2> intersect(const Arc& a, const Arc& b, double tol) {
    std::vector<Vec2> candidates;
    if (a.is_circle() && b.is_circle()) {
        candidates = circle_circle(a.circle_geom(), b.circle_geom(), a, b, tol);
    } else if (a.is_segment() && b.is_circle()) {
        candidates = segment_circle(a.segment_geom(), b.circle_geom());
    } else if (a.is_circle() && b.is_segment()) {
        candidates = segment_circle(b.segment_geom(), a.circle_geom());
    } else {
        candidates = segment_segment(a.segment_geom(), b.segment_geom(), tol);
    }
    std::vector<Vec2> out;
    for (Vec2 p : candidates) {
        if (a.param_of(p, tol) && b.param_of(p, tol)) push_unique(out, p, tol);
    }
    return out;
}

}  // namespace steklov
