#include "steklov/geometry.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

/// Coefficients of p(a + b s) in powers of s.
std::vector<double> compose_linear(const std::vector<double>& c, double a, double b) {
    std::vector<double> out(c.size(), 0.0);
    // Horner: result = (...((c_n) * (a + b s) + c_{n-1}) * (a + b s) + ...)
    std::vector<double> acc{c.back()};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += a * acc[i];
            next[i + 1] += b * acc[i];
        }
        next[0] += c[k];
        acc = std::move(next);
    }
    for (std::size_t i = 0; i < out.size() && i < acc.size(); ++i) out[i] = acc[i];
    return out;
}

std::vector<Vec2> sample_points(const Arc& arc, int per_arc) {
    std::vector<Vec2> pts;
    for (int i = 0; i <= per_arc; ++i) pts.push_back(arc.point(static_cast<double>(i) / per_arc));
    return pts;
}

}  // namespace

// --- Condition --------------------------------------------------------------

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::Steklov: return "steklov";
        case Condition::Neumann: return "neumann";
        case Condition::Dirichlet: return "dirichlet";
    }
    return "?";
}

Condition condition_from_string(std::string_view s) {
    if (s == "steklov" || s == "S") return Condition::Steklov;
    if (s == "neumann" || s == "N") return Condition::Neumann;
    if (s == "dirichlet" || s == "D") return Condition::Dirichlet;
    fail(ErrorKind::InvalidArgument, "unknown boundary condition '" + std::string(s) + "'");
}

// --- WeightProfile ----------------------------------------------------------

WeightProfile::WeightProfile(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_ = {1.0};
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double WeightProfile::operator()(double t) const {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * t + coeffs_[k];
    return v;
}

WeightProfile WeightProfile::reversed() const {
    if (is_constant()) return *this;
    return WeightProfile(compose_linear(coeffs_, 1.0, -1.0));
}

WeightProfile WeightProfile::restricted(double ta, double tb) const {
    if (is_constant()) return *this;
    return WeightProfile(compose_linear(coeffs_, ta, tb - ta));
}

double WeightProfile::min_value() const {
    if (is_constant()) return coeffs_[0];
    double m = (*this)(0.0);
    for (int i = 1; i <= 256; ++i) m = std::min(m, (*this)(i / 256.0));
    return m;
}

// --- Similarity / axis --------------------------------------------------------

Vec2 Similarity::apply_vector(Vec2 v) const {
    if (reflect) v.y = -v.y;
    const double c = std::cos(angle), s = std::sin(angle);
    return {scale * (c * v.x - s * v.y), scale * (s * v.x + c * v.y)};
}

Vec2 Similarity::apply(Vec2 p) const { return apply_vector(p) + shift; }

Similarity Similarity::translation(Vec2 by) {
    Similarity s;
    s.shift = by;
    return s;
}

Similarity Similarity::rotation(double angle, Vec2 about) {
    Similarity s;
    s.angle = angle;
    s.shift = about - s.apply_vector(about);
    return s;
}

Similarity Similarity::dilation(double factor, Vec2 about) {
    if (!(factor > 0.0)) fail(ErrorKind::InvalidArgument, "dilation factor must be positive");
    Similarity s;
    s.scale = factor;
    s.shift = about - s.apply_vector(about);
    return s;
}

ReflectionAxis::ReflectionAxis(Vec2 p, Vec2 d) : point(p) {
    const double n = norm(d);
    if (!(n > 0.0)) fail(ErrorKind::InvalidArgument, "reflection axis direction must be nonzero");
    direction = (1.0 / n) * d;
}

Similarity ReflectionAxis::as_similarity() const {
    Similarity s;
    s.reflect = true;
    s.angle = 2.0 * std::atan2(direction.y, direction.x);
    s.shift = point - s.apply_vector(point);
    return s;
}

Vec2 ReflectionAxis::reflect(Vec2 p) const {
    const Vec2 r = p - point;
    return point + 2.0 * dot(r, direction) * direction - r;
}

// --- Arc ---------------------------------------------------------------------

Arc::Arc(std::variant<CircleGeom, SegmentGeom> g, Condition c, WeightProfile w)
    : geom_(std::move(g)), condition_(c), weight_(std::move(w)) {
    validate();
}

void Arc::validate() const {
    if (is_circle()) {
        const auto& g = circle_geom();
        if (!(g.radius > 0.0) || !std::isfinite(g.radius))
            fail(ErrorKind::InvalidGeometry, "arc radius must be positive");
        if (!(std::abs(g.sweep) > 0.0) || std::abs(g.sweep) > kTwoPi * (1.0 + 1e-12))
            fail(ErrorKind::InvalidGeometry, "arc angle interval must be nondegenerate and at most 2*pi");
    } else {
        const auto& g = segment_geom();
        if (!(norm(g.p1 - g.p0) > 0.0)) fail(ErrorKind::InvalidGeometry, "segment endpoints coincide");
    }
    if (condition_ == Condition::Steklov && !(weight_.min_value() > 0.0))
        fail(ErrorKind::InvalidGeometry, "Steklov weight must be strictly positive");
}

Arc Arc::circle(Vec2 center, double radius, double theta0, double theta1, bool ccw, Condition c,
                WeightProfile w) {
    const double sweep = theta1 - theta0;
    if ((sweep > 0.0) != ccw)
        fail(ErrorKind::InvalidGeometry, "arc orientation flag disagrees with its angle interval");
    return Arc(CircleGeom{center, radius, theta0, sweep}, c, std::move(w));
}

Arc Arc::circle_sweep(Vec2 center, double radius, double theta0, double sweep, Condition c, WeightProfile w) {
    return Arc(CircleGeom{center, radius, theta0, sweep}, c, std::move(w));
}

Arc Arc::full_circle(Vec2 center, double radius, Condition c, bool ccw, double theta0) {
    return Arc(CircleGeom{center, radius, theta0, ccw ? kTwoPi : -kTwoPi}, c, {});
}

Arc Arc::segment(Vec2 p0, Vec2 p1, Condition c, WeightProfile w) {
    return Arc(SegmentGeom{p0, p1}, c, std::move(w));
}

Arc Arc::with_condition(Condition c) const {
    Arc a = *this;
    a.condition_ = c;
    if (c == Condition::Steklov && !(a.weight_.min_value() > 0.0)) a.weight_ = WeightProfile{};
    return a;
}

Arc Arc::with_weight(WeightProfile w) const {
    Arc a = *this;
    a.weight_ = std::move(w);
    a.validate();
    return a;
}

double Arc::length() const {
    if (is_circle()) return circle_geom().radius * std::abs(circle_geom().sweep);
    return norm(segment_geom().p1 - segment_geom().p0);
}

Vec2 Arc::point(double t) const {
    if (is_circle()) {
        const auto& g = circle_geom();
        return g.center + polar(g.radius, g.theta0 + t * g.sweep);
    }
    const auto& g = segment_geom();
    if (t == 1.0) return g.p1;
    return g.p0 + t * (g.p1 - g.p0);
}

Vec2 Arc::tangent(double t) const {
    if (is_circle()) {
        const auto& g = circle_geom();
        const double th = g.theta0 + t * g.sweep;
        const double s = g.sweep > 0.0 ? 1.0 : -1.0;
        return {-s * std::sin(th), s * std::cos(th)};
    }
    return unit(segment_geom().p1 - segment_geom().p0);
}

Vec2 Arc::normal(double t) const {
    const Vec2 tg = tangent(t);
    return {tg.y, -tg.x};
}

bool Arc::is_full_circle() const {
    return is_circle() && std::abs(circle_geom().sweep) >= kTwoPi * (1.0 - 1e-12);
}

double Arc::signed_curvature() const {
    if (!is_circle()) return 0.0;
    const auto& g = circle_geom();
    return (g.sweep > 0.0 ? 1.0 : -1.0) / g.radius;
}

Arc Arc::reversed() const {
    if (is_circle()) {
        const auto& g = circle_geom();
        return Arc(CircleGeom{g.center, g.radius, g.theta0 + g.sweep, -g.sweep}, condition_, weight_.reversed());
    }
    const auto& g = segment_geom();
    return Arc(SegmentGeom{g.p1, g.p0}, condition_, weight_.reversed());
}

Arc Arc::mapped(const Similarity& s) const {
    if (is_circle()) {
        const auto& g = circle_geom();
        return Arc(CircleGeom{s.apply(g.center), s.scale * g.radius, s.apply_angle(g.theta0),
                              s.reflect ? -g.sweep : g.sweep},
                   condition_, weight_);
    }
    const auto& g = segment_geom();
    return Arc(SegmentGeom{s.apply(g.p0), s.apply(g.p1)}, condition_, weight_);
}

Arc Arc::sub(double ta, double tb) const {
    if (is_circle()) {
        const auto& g = circle_geom();
        return Arc(CircleGeom{g.center, g.radius, g.theta0 + ta * g.sweep, (tb - ta) * g.sweep}, condition_,
                   weight_.restricted(ta, tb));
    }
    return Arc(SegmentGeom{point(ta), point(tb)}, condition_, weight_.restricted(ta, tb));
}

double Arc::closest_param(Vec2 p) const {
    if (is_circle()) {
        const auto& g = circle_geom();
        const Vec2 r = p - g.center;
        if (norm(r) == 0.0) return 0.0;
        const double phi = std::atan2(r.y, r.x);
        const double span = std::abs(g.sweep);
        const double u = g.sweep > 0.0 ? wrap_2pi(phi - g.theta0) : wrap_2pi(g.theta0 - phi);
        if (u <= span) return u / span;
        // outside the angular range: nearer endpoint (angular distance)
        const double to_end = u - span;
        const double to_start = kTwoPi - u;
        return to_start <= to_end ? 0.0 : 1.0;
    }
    const auto& g = segment_geom();
    const Vec2 v = g.p1 - g.p0;
    return std::clamp(dot(p - g.p0, v) / dot(v, v), 0.0, 1.0);
}

double Arc::distance_to(Vec2 p) const { return norm(point(closest_param(p)) - p); }

std::optional<double> Arc::param_of(Vec2 p, double tol) const {
    const double t = closest_param(p);
    if (norm(point(t) - p) <= tol) return t;
    return std::nullopt;
}

double length(const Arc& arc) { return arc.length(); }

// --- Loop --------------------------------------------------------------------

double Loop::length() const {
    double s = 0.0;
    for (const auto& a : arcs) s += a.length();
    return s;
}

double Loop::signed_area() const {
    double area = 0.0;
    for (const auto& a : arcs) {
        if (a.is_circle()) {
            const auto& g = a.circle_geom();
            const double t0 = g.theta0, t1 = g.theta0 + g.sweep;
            area += 0.5 * (g.radius * g.radius * g.sweep +
                           g.radius * (g.center.x * (std::sin(t1) - std::sin(t0)) -
                                       g.center.y * (std::cos(t1) - std::cos(t0))));
        } else {
            area += 0.5 * cross(a.segment_geom().p0, a.segment_geom().p1);
        }
    }
    return area;
}

int Loop::winding_number(Vec2 p) const {
    double total = 0.0;
    for (const auto& a : arcs) {
        const Vec2 s = a.start() - p, e = a.end() - p;
        double ang = a.is_full_circle() ? 0.0 : std::atan2(cross(s, e), dot(s, e));
        if (a.is_circle()) {
            const auto& g = a.circle_geom();
            if (norm(p - g.center) < g.radius) {
                bool inside_segment = true;
                if (!a.is_full_circle()) {
                    const Vec2 chord = a.end() - a.start();
                    const Vec2 mid = a.point(0.5);
                    inside_segment = cross(chord, p - a.start()) * cross(chord, mid - a.start()) > 0.0;
                }
                if (inside_segment) ang += g.sweep > 0.0 ? kTwoPi : -kTwoPi;
            }
        }
        total += ang;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

// --- PlanarDomain --------------------------------------------------------------

PlanarDomain::PlanarDomain(std::vector<Loop> loops, SymmetryDescriptor symmetry)
    : loops_(std::move(loops)), symmetry_(std::move(symmetry)) {
    if (loops_.empty()) fail(ErrorKind::InvalidGeometry, "domain has no boundary loops");
    std::vector<Vec2> pts;
    for (const auto& loop : loops_) {
        if (loop.arcs.empty()) fail(ErrorKind::InvalidGeometry, "empty boundary loop");
        for (const auto& a : loop.arcs) {
            auto s = sample_points(a, a.is_circle() ? 16 : 1);
            pts.insert(pts.end(), s.begin(), s.end());
        }
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Vec2 r = pts[i] - pts[j];
            d2 = std::max(d2, dot(r, r));
        }
    diameter_ = std::sqrt(d2);
    if (!(diameter_ > 0.0)) diameter_ = 2.0 * loops_.front().arcs.front().length() / kTwoPi;
    validate();
}

void PlanarDomain::validate() const {
    const double tol = 1e-12 * diameter_;
    for (std::size_t li = 0; li < loops_.size(); ++li) {
        const auto& loop = loops_[li];
        const bool outer = li == 0;
        if ((loop.orientation == LoopOrientation::Outer) != outer)
            fail(ErrorKind::InvalidGeometry, "the first loop must be the only outer loop");
        const std::size_t n = loop.arcs.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 gap = loop.arcs[i].end() - loop.arcs[(i + 1) % n].start();
            if (norm(gap) > tol)
                fail(ErrorKind::InvalidGeometry, "loop " + std::to_string(li) + " is not closed at arc " +
                                                      std::to_string(i) + " (gap " + std::to_string(norm(gap)) + ")");
        }
        const double area = loop.signed_area();
        if (outer && !(area > 0.0)) fail(ErrorKind::InvalidGeometry, "outer loop must be counterclockwise");
        if (!outer && !(area < 0.0)) fail(ErrorKind::InvalidGeometry, "inner loops must be clockwise");
    }

    // simplicity: pairwise arc intersections
    struct Ref {
        std::size_t loop, arc;
    };
    std::vector<Ref> refs;
    for (std::size_t li = 0; li < loops_.size(); ++li)
        for (std::size_t ai = 0; ai < loops_[li].arcs.size(); ++ai) refs.push_back({li, ai});
    const double endpoint_tol = 1e-7 * diameter_;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        for (std::size_t j = i + 1; j < refs.size(); ++j) {
            const Arc& a = loops_[refs[i].loop].arcs[refs[i].arc];
            const Arc& b = loops_[refs[j].loop].arcs[refs[j].arc];
            std::vector<Vec2> shared;
            if (refs[i].loop == refs[j].loop) {
                const std::size_t n = loops_[refs[i].loop].arcs.size();
                if ((refs[i].arc + 1) % n == refs[j].arc) shared.push_back(a.end());
                if ((refs[j].arc + 1) % n == refs[i].arc) shared.push_back(a.start());
            }
            for (Vec2 p : intersect(a, b, tol)) {
                bool at_shared = false;
                for (Vec2 s : shared) at_shared = at_shared || norm(p - s) <= endpoint_tol;
                if (!at_shared)
                    fail(ErrorKind::InvalidGeometry,
                         "boundary is not simple: arcs " + std::to_string(refs[i].arc) + " and " +
                             std::to_string(refs[j].arc) + " intersect");
            }
        }
    }

    for (std::size_t li = 1; li < loops_.size(); ++li) {
        const Vec2 probe = loops_[li].arcs.front().point(0.5);
        if (loops_[0].winding_number(probe) != 1)
            fail(ErrorKind::InvalidGeometry, "inner loop lies outside the outer loop");
        for (std::size_t lj = 1; lj < loops_.size(); ++lj) {
            if (lj != li && loops_[lj].winding_number(probe) != 0)
                fail(ErrorKind::InvalidGeometry, "inner loops are nested");
        }
    }
}

PlanarDomain PlanarDomain::with_symmetry(SymmetryDescriptor s) const {
    PlanarDomain d = *this;
    d.symmetry_ = std::move(s);
    return d;
}

double PlanarDomain::boundary_length() const {
    double s = 0.0;
    for (const auto& l : loops_) s += l.length();
    return s;
}

double PlanarDomain::steklov_length() const {
    double s = 0.0;
    for (const auto& l : loops_)
        for (const auto& a : l.arcs)
            if (a.is_steklov()) s += a.length();
    return s;
}

double PlanarDomain::area() const {
    double s = 0.0;
    for (const auto& l : loops_) s += l.signed_area();
    return s;
}

bool PlanarDomain::all_steklov() const {
    for (const auto& l : loops_)
        for (const auto& a : l.arcs)
            if (!a.is_steklov()) return false;
    return true;
}

bool PlanarDomain::contains(Vec2 p) const {
    int w = 0;
    for (const auto& l : loops_) w += l.winding_number(p);
    return w == 1;
}

std::size_t PlanarDomain::arc_count() const {
    std::size_t n = 0;
    for (const auto& l : loops_) n += l.arcs.size();
    return n;
}

// --- boundary data -------------------------------------------------------------

void BoundaryData::normalize() {
    for (auto* v : {&L_S, &L_D, &L_N, &L_DN}) {
        for (double x : *v)
            if (!(x > 0.0) || !std::isfinite(x))
                fail(ErrorKind::InvalidArgument, "boundary-data lengths must be positive");
        std::sort(v->begin(), v->end());
    }
}

std::vector<SteklovComponent> steklov_components(const PlanarDomain& domain) {
    std::vector<SteklovComponent> comps;
    const double tol = 1e-9 * domain.diameter();
    for (std::size_t li = 0; li < domain.loops().size(); ++li) {
        const auto& arcs = domain.loops()[li].arcs;
        const std::size_t n = arcs.size();
        std::size_t steklov_count = 0;
        for (const auto& a : arcs) steklov_count += a.is_steklov() ? 1 : 0;
        if (steklov_count == 0) continue;
        if (steklov_count == n) {
            comps.push_back({li, 0, n, true, IntervalType::N, domain.loops()[li].length()});
            continue;
        }
        // start at a Steklov arc preceded by a non-Steklov one
        for (std::size_t i = 0; i < n; ++i) {
            if (!arcs[i].is_steklov() || arcs[(i + n - 1) % n].is_steklov()) continue;
            SteklovComponent c;
            c.loop = li;
            c.first_arc = i;
            c.is_circle = false;
            std::size_t j = i;
            while (arcs[j % n].is_steklov()) {
                c.length += arcs[j % n].length();
                ++c.arc_count;
                ++j;
            }
            const Condition before = arcs[(i + n - 1) % n].condition();
            const Condition after = arcs[j % n].condition();
            if (before == Condition::Dirichlet && after == Condition::Dirichlet)
                c.type = IntervalType::D;
            else if (before == Condition::Neumann && after == Condition::Neumann)
                c.type = IntervalType::N;
            else
                c.type = IntervalType::DN;
            comps.push_back(c);
        }
    }
    // a component endpoint may not touch another Steklov component
    auto endpoints = [&](const SteklovComponent& c) {
        const auto& arcs = domain.loops()[c.loop].arcs;
        const std::size_t n = arcs.size();
        return std::pair{arcs[c.first_arc].start(), arcs[(c.first_arc + c.arc_count - 1) % n].end()};
    };
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].is_circle) continue;
        const auto [a0, a1] = endpoints(comps[i]);
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (i == j) continue;
            const auto& arcs = domain.loops()[comps[j].loop].arcs;
            for (std::size_t k = 0; k < comps[j].arc_count; ++k) {
                const Arc& arc = arcs[(comps[j].first_arc + k) % arcs.size()];
                if (arc.distance_to(a0) <= tol || arc.distance_to(a1) <= tol)
                    fail(ErrorKind::MalformedDecomposition, "Steklov components touch at an endpoint");
            }
        }
    }
    return comps;
}

BoundaryData boundary_data(const PlanarDomain& domain) {
    BoundaryData bd;
    for (const auto& c : steklov_components(domain)) {
        if (c.is_circle) {
            bd.L_S.push_back(c.length);
            continue;
        }
        switch (c.type) {
            case IntervalType::D: bd.L_D.push_back(c.length); break;
            case IntervalType::N: bd.L_N.push_back(c.length); break;
            case IntervalType::DN: bd.L_DN.push_back(c.length); break;
        }
    }
    bd.normalize();
    return bd;
}

// --- transforms ----------------------------------------------------------------

PlanarDomain transform(const PlanarDomain& domain, const Similarity& s) {
    std::vector<Loop> loops;
    for (const auto& l : domain.loops()) {
        Loop out;
        out.orientation = l.orientation;
        for (const auto& a : l.arcs) out.arcs.push_back(a.mapped(s));
        if (s.reflect) {
            std::reverse(out.arcs.begin(), out.arcs.end());
            for (auto& a : out.arcs) a = a.reversed();
        }
        loops.push_back(std::move(out));
    }
    SymmetryDescriptor sym;
    for (const auto& ax : domain.symmetry().reflections)
        sym.reflections.emplace_back(s.apply(ax.point), s.apply_vector(ax.direction));
    if (domain.symmetry().rotation)
        sym.rotation = RotationSymmetry{s.apply(domain.symmetry().rotation->center), domain.symmetry().rotation->order};
    return PlanarDomain(std::move(loops), std::move(sym));
}

PlanarDomain dilate(const PlanarDomain& domain, double t) { return transform(domain, Similarity::dilation(t)); }

// --- merging ---------------------------------------------------------------------

namespace {

bool mergeable(const Arc& a, const Arc& b, double tol) {
    if (a.condition() != b.condition()) return false;
    if (!a.weight().is_constant() || !(a.weight() == b.weight())) return false;
    if (norm(a.end() - b.start()) > tol) return false;
    if (a.is_circle() && b.is_circle()) {
        const auto& ga = a.circle_geom();
        const auto& gb = b.circle_geom();
        return norm(ga.center - gb.center) <= tol && std::abs(ga.radius - gb.radius) <= tol &&
               (ga.sweep > 0.0) == (gb.sweep > 0.0) && std::abs(ga.sweep + gb.sweep) <= kTwoPi * (1.0 + 1e-12);
    }
    if (a.is_segment() && b.is_segment()) {
        const Vec2 ta = a.tangent(0.0), tb = b.tangent(0.0);
        return std::abs(cross(ta, tb)) <= 1e-12 && dot(ta, tb) > 0.0;
    }
    return false;
}

Arc fuse(const Arc& a, const Arc& b) {
    if (a.is_circle()) {
        const auto& ga = a.circle_geom();
        double sweep = ga.sweep + b.circle_geom().sweep;
        if (std::abs(std::abs(sweep) - kTwoPi) <= 1e-12 * kTwoPi) sweep = sweep > 0.0 ? kTwoPi : -kTwoPi;
        return Arc::circle_sweep(ga.center, ga.radius, ga.theta0, sweep, a.condition(), a.weight());
    }
    return Arc::segment(a.start(), b.end(), a.condition(), a.weight());
}

}  // namespace

std::vector<Arc> merge_arcs(std::vector<Arc> arcs, bool cyclic) {
    if (arcs.empty()) return arcs;
    double scale = 0.0;
    for (const auto& a : arcs) scale = std::max(scale, a.length());
    const double tol = 1e-9 * std::max(scale, 1e-300);
    std::vector<Arc> out;
    for (auto& a : arcs) {
        if (!out.empty() && mergeable(out.back(), a, tol))
            out.back() = fuse(out.back(), a);
        else
            out.push_back(std::move(a));
    }
    if (cyclic) {
        while (out.size() > 1 && mergeable(out.back(), out.front(), tol)) {
            out.front() = fuse(out.back(), out.front());
            out.pop_back();
        }
    }
    return out;
}

// --- doubling -----------------------------------------------------------------------

PlanarDomain double_domain(const PlanarDomain& domain, const ReflectionAxis& axis) {
    const double tol = 1e-9 * domain.diameter();
    const double angle_tol = 1e-9;

    // the domain must lie on one side of the axis
    double side = 0.0;
    for (const auto& l : domain.loops())
        for (const auto& a : l.arcs)
            for (double t : {0.25, 0.5, 0.75}) {
                const double s = axis.side(a.point(t));
                if (std::abs(s) > tol) {
                    if (side != 0.0 && (s > 0.0) != (side > 0.0))
                        fail(ErrorKind::NotOnAxis, "domain lies on both sides of the reflection axis");
                    side = s;
                }
            }

    auto on_axis = [&](const Arc& a) {
        return a.is_segment() && std::abs(axis.side(a.start())) <= tol && std::abs(axis.side(a.end())) <= tol;
    };

    std::size_t designated = 0;
    for (const auto& l : domain.loops()) {
        const std::size_t n = l.arcs.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Arc& a = l.arcs[i];
            if (!on_axis(a)) continue;
            if (a.is_steklov())
                fail(ErrorKind::NotOnAxis, "a Steklov segment lies on the reflection axis");
            ++designated;
            for (const Arc* nb : {&l.arcs[(i + n - 1) % n], &l.arcs[(i + 1) % n]}) {
                if (!nb->is_steklov()) continue;
                const double t = nb == &l.arcs[(i + 1) % n] ? 0.0 : 1.0;
                const double c = std::abs(dot(nb->tangent(t), axis.direction));
                if (std::asin(std::min(1.0, c)) > angle_tol)
                    fail(ErrorKind::NonOrthogonalJunction,
                         "Steklov arc meets the axis at a non-right angle (deviation " +
                             std::to_string(std::asin(std::min(1.0, c))) + " rad)");
            }
        }
    }
    if (designated == 0) fail(ErrorKind::NotOnAxis, "no non-Steklov boundary segment lies on the axis");

    const Similarity mirror = axis.as_similarity();
    auto mirrored_reversed = [&](const std::vector<Arc>& chain) {
        std::vector<Arc> out;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(it->mapped(mirror).reversed());
        return out;
    };

    std::vector<std::vector<Arc>> raw_loops;
    for (const auto& l : domain.loops()) {
        const std::size_t n = l.arcs.size();
        std::size_t first = n;
        for (std::size_t i = 0; i < n; ++i)
            if (on_axis(l.arcs[i])) {
                first = i;
                break;
            }
        if (first == n) {
            raw_loops.push_back(l.arcs);
            raw_loops.push_back(mirrored_reversed(l.arcs));
            continue;
        }
        std::vector<Arc> chain;
        for (std::size_t k = 1; k <= n; ++k) {
            const Arc& a = l.arcs[(first + k) % n];
            if (on_axis(a)) {
                if (!chain.empty()) {
                    auto loop = chain;
                    auto back = mirrored_reversed(chain);
                    loop.insert(loop.end(), back.begin(), back.end());
                    raw_loops.push_back(std::move(loop));
                    chain.clear();
                }
            } else {
                chain.push_back(a);
            }
        }
    }

    std::vector<Loop> outer, inner;
    for (auto& arcs : raw_loops) {
        Loop loop;
        loop.arcs = merge_arcs(std::move(arcs), true);
        if (loop.signed_area() > 0.0) {
            loop.orientation = LoopOrientation::Outer;
            outer.push_back(std::move(loop));
        } else {
            loop.orientation = LoopOrientation::Inner;
            inner.push_back(std::move(loop));
        }
    }
    if (outer.size() != 1) fail(ErrorKind::InvalidGeometry, "doubled domain is not connected");
    std::vector<Loop> loops = std::move(outer);
    for (auto& l : inner) loops.push_back(std::move(l));
    SymmetryDescriptor sym;
    sym.reflections.push_back(axis);
    return PlanarDomain(std::move(loops), std::move(sym));
}

// --- symmetry tests ------------------------------------------------------------------

namespace {

bool image_matches(const PlanarDomain& domain, const Similarity& s, double tol) {
    const double dtol = tol * domain.diameter();
    for (const auto& l : domain.loops()) {
        for (const auto& a : l.arcs) {
            const Arc img = a.mapped(s);
            for (double t : {0.0, 0.13, 0.37, 0.5, 0.71, 0.94, 1.0}) {
                const Vec2 q = img.point(t);
                bool found = false;
                for (const auto& l2 : domain.loops()) {
                    for (const auto& b : l2.arcs) {
                        if (b.condition() != a.condition()) continue;
                        const double bt = b.closest_param(q);
                        if (norm(b.point(bt) - q) <= dtol) {
                            if (a.is_steklov() && std::abs(b.weight()(bt) - a.weight()(t)) > 1e-9 * a.weight()(t))
                                continue;
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (!found) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool has_reflection_symmetry(const PlanarDomain& domain, const ReflectionAxis& axis, double tol) {
    return image_matches(domain, axis.as_similarity(), tol);
}

bool has_rotation_symmetry(const PlanarDomain& domain, Vec2 center, int order, double tol) {
    if (order < 1) fail(ErrorKind::InvalidArgument, "rotation order must be positive");
    if (order == 1) return true;
    return image_matches(domain, Similarity::rotation(kTwoPi / order, center), tol);
}

// --- unions ---------------------------------------------------------------------------

namespace {

bool strictly_inside(const Shape& shape, Vec2 p) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskShape>) {
                return norm(p - s.center) < s.radius;
            } else if constexpr (std::is_same_v<T, HalfDiskShape>) {
                return norm(p - s.center) < s.radius && dot(p - s.center, polar(1.0, s.direction)) > 0.0;
            } else {
                const std::size_t n = s.vertices.size();
                for (std::size_t i = 0; i < n; ++i)
                    if (!(cross(s.vertices[(i + 1) % n] - s.vertices[i], p - s.vertices[i]) > 0.0)) return false;
                return true;
            }
        },
        shape);
}

std::vector<Arc> shape_boundary(const Shape& shape, Condition c) {
    return std::visit(
        [&](const auto& s) -> std::vector<Arc> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskShape>) {
                if (!(s.radius > 0.0)) fail(ErrorKind::InvalidArgument, "disk radius must be positive");
                return {Arc::full_circle(s.center, s.radius, c)};
            } else if constexpr (std::is_same_v<T, HalfDiskShape>) {
                const double a0 = s.direction - std::numbers::pi / 2.0;
                Arc cap = Arc::circle_sweep(s.center, s.radius, a0, std::numbers::pi, c);
                return {cap, Arc::segment(cap.end(), cap.start(), c)};
            } else {
                std::vector<Arc> out;
                const std::size_t n = s.vertices.size();
                if (n < 3) fail(ErrorKind::InvalidArgument, "polygon needs at least three vertices");
                for (std::size_t i = 0; i < n; ++i) out.push_back(Arc::segment(s.vertices[i], s.vertices[(i + 1) % n], c));
                return out;
            }
        },
        shape);
}

}  // namespace

PlanarDomain union_of_shapes(std::span<const Shape> shapes, Condition c) {
    if (shapes.empty()) fail(ErrorKind::InvalidArgument, "union of no shapes");
    std::vector<std::vector<Arc>> prims;
    double extent = 0.0;
    for (const auto& s : shapes) {
        prims.push_back(shape_boundary(s, c));
        for (const auto& a : prims.back())
            for (double t : {0.0, 0.5, 1.0}) extent = std::max(extent, norm(a.point(t)));
    }
    double size = 0.0;
    for (const auto& ps : prims)
        for (const auto& a : ps) size = std::max(size, a.length());
    const double tol = 1e-12 * std::max(extent, size);
    const double offset = 1e-7 * std::max(extent, size);
    const double chain_tol = 1e-9 * std::max(extent, size);

    std::vector<Arc> pieces;
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        for (const auto& prim : prims[si]) {
            std::vector<double> params;
            for (std::size_t sj = 0; sj < shapes.size(); ++sj) {
                if (sj == si) continue;
                for (const auto& other : prims[sj])
                    for (Vec2 p : intersect(prim, other, tol)) params.push_back(prim.closest_param(p));
            }
            std::sort(params.begin(), params.end());
            std::vector<double> cuts;
            for (double t : params)
                if (cuts.empty() || t - cuts.back() > 1e-12) cuts.push_back(t);
            std::vector<Arc> candidates;
            if (prim.is_full_circle()) {
                if (cuts.empty()) {
                    candidates.push_back(prim);
                } else {
                    if (cuts.back() - cuts.front() > 1.0 - 1e-12) cuts.pop_back();
                    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) candidates.push_back(prim.sub(cuts[k], cuts[k + 1]));
                    const auto& g = prim.circle_geom();
                    candidates.push_back(Arc::circle_sweep(g.center, g.radius, g.theta0 + cuts.back() * g.sweep,
                                                           (1.0 - cuts.back() + cuts.front()) * g.sweep, c));
                }
            } else {
                std::vector<double> ts{0.0};
                for (double t : cuts)
                    if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
                ts.push_back(1.0);
                for (std::size_t k = 0; k + 1 < ts.size(); ++k) candidates.push_back(prim.sub(ts[k], ts[k + 1]));
            }
            for (auto& piece : candidates) {
                const Vec2 m = piece.point(0.5);
                const Vec2 out = m + offset * piece.normal(0.5);
                const Vec2 in = m - offset * piece.normal(0.5);
                bool keep = true;
                for (std::size_t sj = 0; sj < shapes.size() && keep; ++sj) {
                    if (sj == si) continue;
                    const bool covers_out = strictly_inside(shapes[sj], out);
                    if (covers_out) keep = false;
                    else if (sj < si && strictly_inside(shapes[sj], in)) keep = false;  // coincident edge
                }
                if (keep) pieces.push_back(std::move(piece));
            }
        }
    }

    std::vector<bool> used(pieces.size(), false);
    std::vector<Loop> outer, holes;
    for (std::size_t start = 0; start < pieces.size(); ++start) {
        if (used[start]) continue;
        std::vector<Arc> chain;
        std::size_t cur = start;
        while (true) {
            used[cur] = true;
            chain.push_back(pieces[cur]);
            const Vec2 e = pieces[cur].end();
            if (norm(e - pieces[start].start()) <= chain_tol && chain.size() > 0 &&
                !(chain.size() == 1 && !pieces[start].is_full_circle() && false))
                break;
            std::size_t next = pieces.size();
            for (std::size_t k = 0; k < pieces.size(); ++k)
                if (!used[k] && norm(pieces[k].start() - e) <= chain_tol) {
                    next = k;
                    break;
                }
            if (next == pieces.size()) fail(ErrorKind::InvalidGeometry, "union boundary does not close");
            cur = next;
        }
        Loop loop;
        loop.arcs = merge_arcs(std::move(chain), true);
        if (loop.signed_area() > 0.0) {
            loop.orientation = LoopOrientation::Outer;
            outer.push_back(std::move(loop));
        } else {
            loop.orientation = LoopOrientation::Inner;
            holes.push_back(std::move(loop));
        }
    }
    if (outer.size() != 1) fail(ErrorKind::DisconnectedUnion, "union has " + std::to_string(outer.size()) + " components");
    if (!holes.empty()) fail(ErrorKind::HoleDetected, "union encloses a bounded complementary region");
    return PlanarDomain(std::move(outer));
}

PlanarDomain union_of_disks(std::span<const Vec2> centers, std::span<const double> radii) {
    if (centers.size() != radii.size() || centers.empty())
        fail(ErrorKind::InvalidArgument, "centers and radii must be nonempty and of equal length");
    std::vector<Shape> shapes;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (!(radii[i] > 0.0)) fail(ErrorKind::InvalidArgument, "disk radius must be positive");
        shapes.emplace_back(DiskShape{centers[i], radii[i]});
    }
    // disjoint groups are reported before the boundary trace
    std::vector<int> group(centers.size());
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) { return group[i] == i ? i : group[i] = find(group[i]); };
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (norm(centers[i] - centers[j]) < radii[i] + radii[j]) group[find(static_cast<int>(i))] = find(static_cast<int>(j));
    for (std::size_t i = 1; i < centers.size(); ++i)
        if (find(static_cast<int>(i)) != find(0)) fail(ErrorKind::DisconnectedUnion, "disks do not form a connected union");
    return union_of_shapes(shapes, Condition::Steklov);
}

}  // namespace steklov
