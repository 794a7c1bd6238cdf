#include "steklov/domain_io.hpp"

#include "steklov/errors.hpp"

#include <fstream>

namespace steklov {

using nlohmann::json;

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 read_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::InvalidGeometry, std::string("field '") + what + "' must be a pair of numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

double read_number(const json& arc, const char* key) {
    if (!arc.contains(key) || !arc[key].is_number())
        fail(ErrorKind::InvalidGeometry, std::string("arc field '") + key + "' missing or not a number");
    return arc[key].get<double>();
}

json arc_to_json(const Arc& a) {
    json j;
    if (a.is_circle()) {
        const auto& g = a.circle_geom();
        j["kind"] = "circle";
        j["center"] = point(g.center);
        j["radius"] = g.radius;
        j["theta0"] = g.theta0;
        j["theta1"] = g.theta0 + g.sweep;
        j["ccw"] = g.sweep > 0.0;
    } else {
        j["kind"] = "segment";
        j["p0"] = point(a.segment_geom().p0);
        j["p1"] = point(a.segment_geom().p1);
    }
    j["condition"] = std::string(to_string(a.condition()));
    if (a.is_steklov()) {
        const auto& c = a.weight().coefficients();
        if (a.weight().is_constant())
            j["weight"] = c[0];
        else
            j["weight"] = c;
    }
    return j;
}

Arc arc_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) fail(ErrorKind::InvalidGeometry, "arc entry needs a 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    const Condition c = condition_from_string(j.value("condition", std::string("steklov")));
    WeightProfile w;
    if (j.contains("weight")) {
        if (j["weight"].is_number())
            w = WeightProfile({j["weight"].get<double>()});
        else if (j["weight"].is_array())
            w = WeightProfile(j["weight"].get<std::vector<double>>());
        else
            fail(ErrorKind::InvalidGeometry, "weight must be a number or an array of coefficients");
    }
    if (kind == "circle") {
        const Vec2 center = read_point(j.at("center"), "center");
        const double r = read_number(j, "radius");
        const double t0 = read_number(j, "theta0");
        const double t1 = read_number(j, "theta1");
        const bool ccw = j.contains("ccw") ? j["ccw"].get<bool>() : t1 > t0;
        return Arc::circle(center, r, t0, t1, ccw, c, w);
    }
    if (kind == "segment") return Arc::segment(read_point(j.at("p0"), "p0"), read_point(j.at("p1"), "p1"), c, w);
    fail(ErrorKind::InvalidGeometry, "unknown arc kind '" + kind + "'");
}

}  // namespace

json to_json(const PlanarDomain& domain) {
    json loops = json::array();
    for (const auto& l : domain.loops()) {
        json arcs = json::array();
        for (const auto& a : l.arcs) arcs.push_back(arc_to_json(a));
        loops.push_back({{"orientation", l.orientation == LoopOrientation::Outer ? "outer" : "inner"}, {"arcs", arcs}});
    }
    json j{{"loops", loops}};
    const auto& s = domain.symmetry();
    if (!s.reflections.empty() || s.rotation) {
        json sym;
        sym["reflections"] = json::array();
        for (const auto& ax : s.reflections)
            sym["reflections"].push_back({ax.point.x, ax.point.y, ax.direction.x, ax.direction.y});
        if (s.rotation) sym["rotation"] = {{"center", point(s.rotation->center)}, {"order", s.rotation->order}};
        j["symmetry"] = sym;
    }
    return j;
}

PlanarDomain domain_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("loops") || !j["loops"].is_array())
            fail(ErrorKind::InvalidGeometry, "domain JSON needs a 'loops' array");
        std::vector<Loop> loops;
        for (const auto& lj : j["loops"]) {
            Loop l;
            const std::string o = lj.value("orientation", std::string("outer"));
            if (o != "outer" && o != "inner") fail(ErrorKind::InvalidGeometry, "loop orientation must be outer or inner");
            l.orientation = o == "outer" ? LoopOrientation::Outer : LoopOrientation::Inner;
            for (const auto& aj : lj.at("arcs")) l.arcs.push_back(arc_from_json(aj));
            loops.push_back(std::move(l));
        }
        SymmetryDescriptor sym;
        if (j.contains("symmetry")) {
            const auto& sj = j["symmetry"];
            for (const auto& r : sj.value("reflections", json::array())) {
                const auto v = r.get<std::vector<double>>();
                if (v.size() != 4) fail(ErrorKind::InvalidGeometry, "reflection entries are [px, py, dx, dy]");
                sym.reflections.emplace_back(Vec2{v[0], v[1]}, Vec2{v[2], v[3]});
            }
            if (sj.contains("rotation"))
                sym.rotation = RotationSymmetry{read_point(sj["rotation"].at("center"), "center"),
                                                sj["rotation"].at("order").get<int>()};
        }
        return PlanarDomain(std::move(loops), std::move(sym));
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidGeometry, std::string("malformed domain JSON: ") + e.what());
    }
}

void save_domain(const PlanarDomain& domain, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << to_json(domain).dump(2) << '\n';
}

PlanarDomain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidGeometry, std::string("cannot parse '") + path + "': " + e.what());
    }
    return domain_from_json(j);
}

}  // namespace steklov
