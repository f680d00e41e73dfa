#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "racdraw/validate.hpp"

namespace racdraw {

inline constexpr std::string_view kFormatTag = "racdraw/1";

using Json = nlohmann::ordered_json;

namespace detail {

inline Json scalar_to_json(const Scalar& s) {
    if (s.is_rational()) return s.rat_part().str();
    return Json{{"rat", s.rat_part().str()}, {"root3", s.root3_part().str()}};
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": scalar must be a string literal");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline Scalar scalar_from_json(const Json& j, const std::string& where) {
    if (j.is_object()) {
        if (j.size() != 2 || !j.contains("rat") || !j.contains("root3"))
            throw ParseError(where + ": quadratic scalar needs exactly \"rat\" and \"root3\"");
        return Scalar(rational_from_json(j["rat"], where), rational_from_json(j["root3"], where));
    }
    return Scalar(rational_from_json(j, where));
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return obj[key];
}

}  // namespace detail

inline Json to_json(const Drawing& d) {
    Json vs = Json::array();
    for (const auto& v : d.vertices())
        vs.push_back({{"id", v.name}, {"x", detail::scalar_to_json(v.pos.x)}, {"y", detail::scalar_to_json(v.pos.y)}});
    Json es = Json::array();
    for (const auto& e : d.edges()) {
        Json bends = Json::array();
        for (const auto& b : e.bends) bends.push_back({detail::scalar_to_json(b.x), detail::scalar_to_json(b.y)});
        es.push_back({{"u", d.vertex(e.u).name}, {"v", d.vertex(e.v).name}, {"bends", std::move(bends)}});
    }
    return Json{{"format", kFormatTag}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

inline std::string serialize(const Drawing& d) { return to_json(d).dump(2) + "\n"; }

/// Any structural problem in the file (bad JSON, float literals, unknown
/// ids, duplicate vertices, zero-length pieces) surfaces as ParseError.
inline Drawing from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("drawing must be a JSON object");
    const auto& tag = detail::field(j, "format", "drawing");
    if (!tag.is_string() || tag.get<std::string>() != kFormatTag)
        throw ParseError("unsupported format tag (expected " + std::string(kFormatTag) + ")");
    const auto& vs = detail::field(j, "vertices", "drawing");
    const auto& es = detail::field(j, "edges", "drawing");
    if (!vs.is_array() || !es.is_array()) throw ParseError("vertices and edges must be arrays");
    Drawing d;
    try {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::string where = "vertices[" + std::to_string(i) + "]";
            const auto& id = detail::field(vs[i], "id", where);
            if (!id.is_string()) throw ParseError(where + ": id must be a string");
            d.add_vertex(id.get<std::string>(), Point{detail::scalar_from_json(detail::field(vs[i], "x", where), where),
                                                      detail::scalar_from_json(detail::field(vs[i], "y", where), where)});
        }
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string where = "edges[" + std::to_string(i) + "]";
            const auto& u = detail::field(es[i], "u", where);
            const auto& v = detail::field(es[i], "v", where);
            if (!u.is_string() || !v.is_string()) throw ParseError(where + ": endpoints must be id strings");
            std::vector<Point> bends;
            if (es[i].contains("bends")) {
                const auto& bs = es[i]["bends"];
                if (!bs.is_array()) throw ParseError(where + ": bends must be an array");
                for (const auto& b : bs) {
                    if (!b.is_array() || b.size() != 2) throw ParseError(where + ": bend must be [x, y]");
                    bends.push_back({detail::scalar_from_json(b[0], where), detail::scalar_from_json(b[1], where)});
                }
            }
            d.add_edge(u.get<std::string>(), v.get<std::string>(), std::move(bends));
        }
    } catch (const DrawingError& e) {
        throw ParseError(e.what());
    } catch (const GeometryError& e) {
        throw ParseError(e.what());
    }
    return d;
}

inline Drawing parse_drawing(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return from_json(j);
}

inline Drawing load_drawing(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_drawing(buf.str());
}

inline void save_drawing(const Drawing& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize(d);
}

/// Display-only rendering; coordinates go through double.
inline std::string to_svg(const Drawing& d, const std::vector<Crossing>& marks = {}) {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
    bool first = true;
    auto grow = [&](const Point& p) {
        const double x = p.x.to_double(), y = p.y.to_double();
        if (first) {
            x0 = x1 = x;
            y0 = y1 = y;
            first = false;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto& v : d.vertices()) grow(v.pos);
    for (const auto& e : d.edges())
        for (const auto& b : e.bends) grow(b);
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double pad = span * 0.08;
    const double r = span * 0.015;

    std::ostringstream os;
    os << std::setprecision(10);
    // y axis flipped so the picture matches the math orientation
    auto px = [&](const Point& p) { return p.x.to_double(); };
    auto py = [&](const Point& p) { return -p.y.to_double(); };
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (x0 - pad) << ' ' << (-y1 - pad) << ' '
       << (x1 - x0 + 2 * pad) << ' ' << (y1 - y0 + 2 * pad) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << r * 0.5 << "\">\n";
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        os << "<polyline data-edge=\"" << e << "\" points=\"";
        const auto line = d.polyline(e);
        for (std::size_t i = 0; i < line.size(); ++i) os << (i ? " " : "") << px(line[i]) << ',' << py(line[i]);
        os << "\"/>\n";
    }
    os << "</g>\n<g fill=\"black\">\n";
    for (const auto& v : d.vertices())
        os << "<circle cx=\"" << px(v.pos) << "\" cy=\"" << py(v.pos) << "\" r=\"" << r << "\"/>\n";
    os << "</g>\n";
    if (!marks.empty()) {
        os << "<g fill=\"red\">\n";
        for (const auto& c : marks)
            os << "<rect x=\"" << px(c.point) - r * 0.6 << "\" y=\"" << py(c.point) - r * 0.6 << "\" width=\"" << r * 1.2
               << "\" height=\"" << r * 1.2 << "\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string point_text(const Point& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

inline Json point_json(const Point& p) { return Json::array({detail::scalar_to_json(p.x), detail::scalar_to_json(p.y)}); }

}  // namespace racdraw
