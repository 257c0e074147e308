#include "troppt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace troppt {

Json rat_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception&) {
            throw FormatError("bad rational: " + j.get<std::string>());
        }
    }
    throw FormatError("expected an integer or a \"p/q\" string");
}

namespace {

Json ivec_json(const IVec& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (!x.fits_slong_p()) throw FormatError("coordinate too large for JSON");
        a.push_back(x.get_si());
    }
    return a;
}

IVec ivec_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("expected an integer vector");
    IVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw FormatError("expected an integer vector");
        v.push_back(Int(static_cast<long>(x.get<long long>())));
    }
    return v;
}

Json qpoint_json(const QPoint& p) { return Json::array({rat_json(p[0]), rat_json(p[1])}); }

}  // namespace

Json polytope_json(const LatticePolytope& P) {
    Json pts = Json::array();
    for (const auto& p : P.points()) pts.push_back({p[0], p[1]});
    return {{"points", pts}};
}

LatticePolytope polytope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw FormatError("polytope needs a \"points\" array");
    std::vector<Point> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw FormatError("points are integer pairs");
        pts.push_back({static_cast<long>(p[0].get<long long>()), static_cast<long>(p[1].get<long long>())});
    }
    try {
        return LatticePolytope(pts);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

QVec lift_from_json(const Json& j, size_t npoints) {
    const Json& v = j.is_object() && j.contains("values") ? j["values"] : j;
    if (!v.is_array() || v.size() != npoints) throw FormatError("lift needs one value per point");
    QVec out;
    for (const auto& x : v) out.push_back(rat_from_json(x));
    return out;
}

Json subdivision_json(const Subdivision& S) { return {{"cells", S.cells}}; }

Json fan_json(const Fan& F) {
    Json rays = Json::array();
    for (const auto& r : F.ray_table()) rays.push_back(ivec_json(r));
    Json cones = Json::array();
    for (size_t i = 0; i < F.size(); ++i) cones.push_back(F.ray_sets()[i]);
    Json lin = Json::array();
    if (F.size() > 0)
        for (const auto& l : F.cone(0).lineality()) lin.push_back(ivec_json(l));
    return {{"rank", F.ambient()}, {"rays", rays}, {"cones", cones}, {"lineality", lin}};
}

Fan fan_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("rays") || !j.contains("cones"))
        throw FormatError("fan needs rank, rays and cones");
    size_t n = j["rank"].get<size_t>();
    IMat rays;
    for (const auto& r : j["rays"]) {
        rays.push_back(ivec_from_json(r));
        if (rays.back().size() != n) throw FormatError("rank mismatch");
    }
    IMat lin;
    if (j.contains("lineality"))
        for (const auto& l : j["lineality"]) lin.push_back(ivec_from_json(l));
    std::vector<Cone> gens;
    for (const auto& c : j["cones"]) {
        IMat g;
        for (const auto& i : c) {
            size_t k = i.get<size_t>();
            if (k >= rays.size()) throw FormatError("ray index out of range");
            g.push_back(rays[k]);
        }
        gens.push_back(Cone::from_generators(n, g, lin));
    }
    if (gens.empty()) gens.push_back(Cone::from_generators(n, {}, lin));
    return Fan::from_cones(n, gens);
}

Json weight_json(const MinkowskiWeight& w) {
    Json j = fan_json(*w.fan);
    j["codim"] = w.codim;
    Json e = Json::array();
    for (const auto& [k, v] : w.entries)
        if (v != 0) e.push_back({{"cone", k}, {"value", rat_json(v)}});
    j["entries"] = e;
    return j;
}

Json cycle_json(const ChowCycle& c) {
    Json j = fan_json(*c.fan);
    j["dim"] = c.cone_dim;
    Json e = Json::array();
    for (const auto& [k, v] : c.terms)
        if (v != 0) e.push_back({{"cone", k}, {"value", rat_json(v)}});
    j["terms"] = e;
    return j;
}

Json secondary_json(const LatticePolytope& P, const SecondaryFan& sec) {
    Json subs = Json::array();
    for (size_t i = 0; i < sec.fan.size(); ++i)
        subs.push_back({{"cone", i}, {"cells", sec.subdivision[i].cells}});
    return {{"polytope", polytope_json(P)},
            {"count", sec.fan.size()},
            {"maximal", sec.maximal},
            {"partial", sec.partial},
            {"subdivisions", subs},
            {"fan", fan_json(sec.fan)}};
}

Json curve_json(const TropicalCurve& g) {
    Json verts = Json::array();
    for (const auto& v : g.vertices) verts.push_back(qpoint_json(v));
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.a}, {"to", e.b}, {"dir", ivec_json(e.dir)}, {"weight", to_string(e.weight)}});
    Json rays = Json::array();
    for (const auto& r : g.rays)
        rays.push_back({{"vertex", r.v}, {"dir", ivec_json(r.dir)}, {"weight", to_string(r.weight)}});
    return {{"vertices", verts}, {"edges", edges}, {"rays", rays}, {"cells", g.vertex_cells}};
}

Json pt0_json(const PT0Fan& f) {
    Json j = fan_json(f.fan);
    Json types = Json::array();
    for (const auto& t : f.types) types.push_back(t.to_string());
    j["types"] = types;
    j["maximal"] = f.fan.maximal().size();
    return j;
}

std::string curve_svg(const TropicalCurve& g, const SvgOptions& opt) {
    double w = opt.half_width;
    if (w <= 0) {
        w = 1;
        for (const auto& v : g.vertices)
            for (const auto& c : v) w = std::max(w, std::fabs(c.get_d()));
        w *= 1.5;
    }
    double px = opt.pixels;
    auto X = [&](double x) { return (x + w) / (2 * w) * px; };
    auto Y = [&](double y) { return (w - y) / (2 * w) * px; };
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.pixels << "\" height=\"" << opt.pixels
       << "\" viewBox=\"0 0 " << opt.pixels << " " << opt.pixels << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << opt.pixels << "\" height=\"" << opt.pixels << "\" fill=\"white\"/>\n";
    auto line = [&](double x0, double y0, double x1, double y1, const Int& weight) {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << (weight > 1 ? 3 : 1.5) << "\" points=\""
           << X(x0) << "," << Y(y0) << " " << X(x1) << "," << Y(y1) << "\"/>\n";
        os << "<text x=\"" << (X(x0) + X(x1)) / 2 + 4 << "\" y=\"" << (Y(y0) + Y(y1)) / 2 - 4
           << "\" font-size=\"12\" fill=\"blue\">" << to_string(weight) << "</text>\n";
    };
    for (const auto& e : g.edges)
        line(g.vertices[e.a][0].get_d(), g.vertices[e.a][1].get_d(), g.vertices[e.b][0].get_d(),
             g.vertices[e.b][1].get_d(), e.weight);
    for (const auto& r : g.rays) {
        double x0 = g.vertices[r.v][0].get_d(), y0 = g.vertices[r.v][1].get_d();
        double dx = r.dir[0].get_d(), dy = r.dir[1].get_d();
        // run to the box boundary
        double t = 1e300;
        if (dx > 0) t = std::min(t, (w - x0) / dx);
        if (dx < 0) t = std::min(t, (-w - x0) / dx);
        if (dy > 0) t = std::min(t, (w - y0) / dy);
        if (dy < 0) t = std::min(t, (-w - y0) / dy);
        t = std::max(t, 0.0);
        line(x0, y0, x0 + t * dx, y0 + t * dy, r.weight);
    }
    for (const auto& v : g.vertices)
        os << "<circle cx=\"" << X(v[0].get_d()) << "\" cy=\"" << Y(v[1].get_d()) << "\" r=\"3\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

Json euler_json(unsigned d, unsigned n, const EulerResult& r) {
    Json j = {{"d", d}, {"n", n}, {"total", rat_json(r.total)}, {"types", r.types}};
    if (!r.audit.empty()) {
        Json a = Json::array();
        for (const auto& c : r.audit) a.push_back({{"type", c.type.to_string()}, {"value", rat_json(c.value)}});
        j["audit"] = a;
    }
    return j;
}

std::string euler_csv(const EulerResult& r) {
    std::ostringstream os;
    os << "type,value\n";
    for (const auto& c : r.audit) os << "\"" << c.type.to_string() << "\"," << to_string(c.value) << "\n";
    os << "total," << to_string(r.total) << "\n";
    return os.str();
}

Json read_json_arg(const std::string& arg) {
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\n");
    if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
        std::ifstream in(arg);
        if (!in) throw FormatError("cannot read " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace troppt
