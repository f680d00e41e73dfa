#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "racdraw/drawing.hpp"

namespace racdraw {

enum class ViolationCode {
    NonPerpendicularCrossing,
    CrossingAtBend,
    CrossingAtEndpoint,
    OverlappingEdges,
    TriplePoint,
    EdgeThroughVertex,
    SelfIntersection,
    TooManyBends,
};

inline std::string_view to_string(ViolationCode c) {
    switch (c) {
        case ViolationCode::NonPerpendicularCrossing: return "NON_PERPENDICULAR_CROSSING";
        case ViolationCode::CrossingAtBend: return "CROSSING_AT_BEND";
        case ViolationCode::CrossingAtEndpoint: return "CROSSING_AT_ENDPOINT";
        case ViolationCode::OverlappingEdges: return "OVERLAPPING_EDGES";
        case ViolationCode::TriplePoint: return "TRIPLE_POINT";
        case ViolationCode::EdgeThroughVertex: return "EDGE_THROUGH_VERTEX";
        case ViolationCode::SelfIntersection: return "SELF_INTERSECTION";
        case ViolationCode::TooManyBends: return "TOO_MANY_BENDS";
    }
    return "?";
}

struct Violation {
    ViolationCode code;
    std::optional<EdgeId> edge_a;
    std::optional<EdgeId> edge_b;
    std::optional<VertexId> vertex;
    std::optional<Point> where;
};

/// A transversal crossing of two distinct edges at the interior of one
/// segment of each. edge_a < edge_b.
struct Crossing {
    EdgeId edge_a;
    std::size_t seg_a;
    EdgeId edge_b;
    std::size_t seg_b;
    Point point;
};

struct ValidationReport {
    bool ok = true;
    std::optional<int> witnessed_class;
    std::vector<Violation> violations;
    std::vector<Crossing> crossings;
};

class InvalidDrawing : public std::runtime_error {
public:
    explicit InvalidDrawing(const std::string& what) : std::runtime_error("INVALID_DRAWING: " + what) {}
};

namespace detail {

/// Collects violations without duplicates; the key ignores discovery order.
class ViolationSink {
public:
    void add(Violation v) {
        auto key = std::make_tuple(static_cast<int>(v.code), v.edge_a.value_or(npos), v.edge_b.value_or(npos),
                                   v.vertex.value_or(npos));
        if (v.code == ViolationCode::TriplePoint || v.code == ViolationCode::CrossingAtBend ||
            v.code == ViolationCode::NonPerpendicularCrossing || v.code == ViolationCode::CrossingAtEndpoint) {
            // the same pair may meet at several points; keep each point once
            for (const auto& old : points_[key])
                if (old == *v.where) return;
            points_[key].push_back(*v.where);
        } else if (!seen_.insert(key).second) {
            return;
        }
        out_.push_back(std::move(v));
    }
    std::vector<Violation> take() { return std::move(out_); }
    bool empty() const { return out_.empty(); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    using Key = std::tuple<int, std::size_t, std::size_t, std::size_t>;
    std::set<Key> seen_;
    std::map<Key, std::vector<Point>> points_;
    std::vector<Violation> out_;
};

inline void check_self(const std::vector<Segment>& segs, EdgeId e, ViolationSink& sink) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const auto hit = seg_intersection(segs[i], segs[j]);
            if (std::holds_alternative<NoIntersection>(hit)) continue;
            if (j == i + 1 && std::holds_alternative<PointIntersection>(hit) &&
                std::get<PointIntersection>(hit).p == segs[i].b())
                continue;  // consecutive segments meet at their shared bend
            Violation v{ViolationCode::SelfIntersection, e, std::nullopt, std::nullopt, std::nullopt};
            if (auto* p = std::get_if<PointIntersection>(&hit)) v.where = p->p;
            sink.add(std::move(v));
        }
    }
}

/// Reports every drawn vertex lying on the arc of e other than e's own
/// endpoints at the ends of the arc.
inline void check_vertices_on_edge(const Drawing& d, const std::vector<Segment>& segs, EdgeId e,
                                   ViolationSink& sink) {
    const PolyEdge& edge = d.edge(e);
    for (VertexId w = 0; w < d.vertex_count(); ++w) {
        const Point& p = d.vertex(w).pos;
        for (std::size_t j = 0; j < segs.size(); ++j) {
            if (!on_segment(segs[j], p)) continue;
            const bool own_start = w == edge.u && j == 0 && p == segs[j].a();
            const bool own_end = w == edge.v && j + 1 == segs.size() && p == segs[j].b();
            if (own_start || own_end) continue;
            sink.add({ViolationCode::EdgeThroughVertex, e, std::nullopt, w, p});
        }
    }
}

inline bool incident(const PolyEdge& e, VertexId w) { return e.u == w || e.v == w; }

inline void check_pair(const Drawing& d, EdgeId e, const std::vector<Segment>& se, EdgeId f,
                       const std::vector<Segment>& sf, ViolationSink& sink, std::vector<Crossing>& crossings,
                       std::map<Point, std::set<EdgeId>, PointKeyLess>& meets) {
    const PolyEdge& ee = d.edge(e);
    const PolyEdge& ef = d.edge(f);
    const EdgeId lo = std::min(e, f);
    const EdgeId hi = std::max(e, f);
    for (std::size_t i = 0; i < se.size(); ++i) {
        for (std::size_t j = 0; j < sf.size(); ++j) {
            const auto hit = seg_intersection(se[i], sf[j]);
            if (std::holds_alternative<NoIntersection>(hit)) continue;
            if (std::holds_alternative<OverlapIntersection>(hit)) {
                sink.add({ViolationCode::OverlappingEdges, lo, hi, std::nullopt, std::nullopt});
                continue;
            }
            const auto& pi = std::get<PointIntersection>(hit);
            if (auto w = d.vertex_at(pi.p)) {
                const bool in_e = incident(ee, *w);
                const bool in_f = incident(ef, *w);
                if (in_e && in_f) continue;  // common endpoint
                if (in_e || in_f) sink.add({ViolationCode::CrossingAtEndpoint, lo, hi, *w, pi.p});
                continue;  // a vertex on a foreign arc is EDGE_THROUGH_VERTEX
            }
            meets[pi.p].insert(e);
            meets[pi.p].insert(f);
            if (!pi.on_interior_of_s1 || !pi.on_interior_of_s2) {
                sink.add({ViolationCode::CrossingAtBend, lo, hi, std::nullopt, pi.p});
                continue;
            }
            if (!is_perpendicular(se[i], sf[j])) {
                sink.add({ViolationCode::NonPerpendicularCrossing, lo, hi, std::nullopt, pi.p});
                continue;
            }
            if (e < f)
                crossings.push_back({e, i, f, j, pi.p});
            else
                crossings.push_back({f, j, e, i, pi.p});
        }
    }
}

/// Any point shared by three or more arcs, whatever the angles.
inline void check_triple_points(const std::map<Point, std::set<EdgeId>, PointKeyLess>& meets, ViolationSink& sink) {
    for (const auto& [p, edges] : meets)
        if (edges.size() >= 3) sink.add({ViolationCode::TriplePoint, *edges.begin(), *edges.rbegin(), std::nullopt, p});
}

}  // namespace detail

/// Checks that d witnesses membership in R_k: at most k bends per edge and
/// every pair of arcs meets only at common endpoints or in perpendicular
/// transversal crossings away from bends, vertices and other crossings.
inline ValidationReport validate(const Drawing& d, int k) {
    detail::ViolationSink sink;
    std::vector<std::vector<Segment>> segs(d.edge_count());
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        segs[e] = d.segments(e);
        if (static_cast<int>(d.edge(e).bend_count()) > k)
            sink.add({ViolationCode::TooManyBends, e, std::nullopt, std::nullopt, std::nullopt});
        detail::check_self(segs[e], e, sink);
        detail::check_vertices_on_edge(d, segs[e], e, sink);
    }
    std::vector<Crossing> crossings;
    std::map<Point, std::set<EdgeId>, PointKeyLess> meets;
    for (EdgeId e = 0; e < d.edge_count(); ++e)
        for (EdgeId f = e + 1; f < d.edge_count(); ++f)
            detail::check_pair(d, e, segs[e], f, segs[f], sink, crossings, meets);
    detail::check_triple_points(meets, sink);

    ValidationReport report;
    report.violations = sink.take();
    report.ok = report.violations.empty();
    report.crossings = std::move(crossings);
    if (report.ok) report.witnessed_class = static_cast<int>(d.max_bends());
    return report;
}

/// Validates at class k and throws InvalidDrawing naming the first violation.
inline ValidationReport require_valid(const Drawing& d, int k) {
    auto report = validate(d, k);
    if (!report.ok) {
        const auto& v = report.violations.front();
        throw InvalidDrawing(std::string(to_string(v.code)) + " (class " + std::to_string(k) + ")");
    }
    return report;
}

/// Edges that take part in no crossing. They form a plane drawing, so for
/// n >= 3 there are at most 3n - 6 of them.
inline std::set<EdgeId> crossing_free_edges(const Drawing& d) {
    const auto report = require_valid(d, std::max<int>(3, static_cast<int>(d.max_bends())));
    std::set<EdgeId> free;
    for (EdgeId e = 0; e < d.edge_count(); ++e) free.insert(e);
    for (const auto& c : report.crossings) {
        free.erase(c.edge_a);
        free.erase(c.edge_b);
    }
    const std::size_t n = d.vertex_count();
    const std::size_t cap = n >= 3 ? 3 * n - 6 : n * (n - 1) / 2;
    if (free.size() > cap) throw std::logic_error("crossing-free edges exceed the planar bound");
    return free;
}

}  // namespace racdraw
