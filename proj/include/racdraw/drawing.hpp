#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "racdraw/geometry.hpp"

namespace racdraw {

using VertexId = std::size_t;
using EdgeId = std::size_t;

class DrawingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Vertex {
    std::string name;
    Point pos;
};

/// A poly-line edge between two vertices. Bends are the interior points of
/// the arc in order from u to v.
struct PolyEdge {
    VertexId u{};
    VertexId v{};
    std::vector<Point> bends;

    std::size_t bend_count() const { return bends.size(); }
    std::size_t segment_count() const { return bends.size() + 1; }
};

/// Vertices drawn as distinct points and a simple edge set drawn as
/// poly-lines. Construction enforces the structural invariants; geometric
/// admissibility (crossing rules) is the job of validate().
class Drawing {
public:
    VertexId add_vertex(std::string name, Point pos) {
        if (name.empty()) name = std::to_string(vertices_.size());
        if (by_name_.contains(name)) throw DrawingError("duplicate vertex id '" + name + "'");
        if (by_pos_.contains(pos)) throw DrawingError("vertex '" + name + "' coincides with another vertex");
        const VertexId id = vertices_.size();
        by_name_.emplace(name, id);
        by_pos_.emplace(pos, id);
        vertices_.push_back({std::move(name), std::move(pos)});
        return id;
    }

    /// Adds an edge after normalizing its bend list: straight-through
    /// collinear bends are dropped. A repeated consecutive point is a
    /// zero-length segment and is rejected.
    EdgeId add_edge(VertexId u, VertexId v, std::vector<Point> bends = {}) {
        if (u >= vertices_.size() || v >= vertices_.size()) throw DrawingError("edge references unknown vertex");
        if (u == v) throw DrawingError("loop at vertex '" + vertices_[u].name + "'");
        const auto key = std::minmax(u, v);
        if (edge_keys_.contains(key))
            throw DrawingError("duplicate edge {" + vertices_[u].name + ", " + vertices_[v].name + "}");
        PolyEdge e{u, v, normalize_bends(vertices_[u].pos, vertices_[v].pos, std::move(bends))};
        edge_keys_.insert(key);
        edges_.push_back(std::move(e));
        return edges_.size() - 1;
    }

    EdgeId add_edge(const std::string& u, const std::string& v, std::vector<Point> bends = {}) {
        return add_edge(vertex_id(u), vertex_id(v), std::move(bends));
    }

    /// Undo the most recent add_edge (generators use this for rejection sampling).
    void remove_last_edge() {
        if (edges_.empty()) throw DrawingError("no edge to remove");
        const auto& e = edges_.back();
        edge_keys_.erase(std::minmax(e.u, e.v));
        edges_.pop_back();
    }

    void remove_last_vertex() {
        if (vertices_.empty()) throw DrawingError("no vertex to remove");
        const VertexId id = vertices_.size() - 1;
        for (const auto& e : edges_)
            if (e.u == id || e.v == id) throw DrawingError("vertex still has edges");
        by_name_.erase(vertices_.back().name);
        by_pos_.erase(vertices_.back().pos);
        vertices_.pop_back();
    }

    VertexId vertex_id(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) throw DrawingError("unknown vertex id '" + name + "'");
        return it->second;
    }
    std::optional<VertexId> vertex_at(const Point& p) const {
        auto it = by_pos_.find(p);
        if (it == by_pos_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<PolyEdge>& edges() const { return edges_; }
    const Vertex& vertex(VertexId id) const { return vertices_.at(id); }
    const PolyEdge& edge(EdgeId id) const { return edges_.at(id); }

    /// Full point sequence u, bends..., v.
    std::vector<Point> polyline(EdgeId id) const {
        const PolyEdge& e = edges_.at(id);
        std::vector<Point> pts;
        pts.reserve(e.bends.size() + 2);
        pts.push_back(vertices_[e.u].pos);
        pts.insert(pts.end(), e.bends.begin(), e.bends.end());
        pts.push_back(vertices_[e.v].pos);
        return pts;
    }

    std::vector<Segment> segments(EdgeId id) const {
        const auto pts = polyline(id);
        std::vector<Segment> segs;
        segs.reserve(pts.size() - 1);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.emplace_back(pts[i], pts[i + 1]);
        return segs;
    }

    std::size_t max_bends() const {
        std::size_t k = 0;
        for (const auto& e : edges_) k = std::max(k, e.bends.size());
        return k;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(vertices_.size(), 0);
        for (const auto& e : edges_) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return deg;
    }

    /// Same vertex set, only the listed edges (in the given order).
    Drawing with_edges(const std::vector<EdgeId>& keep) const {
        Drawing out;
        for (const auto& v : vertices_) out.add_vertex(v.name, v.pos);
        for (EdgeId id : keep) {
            const auto& e = edges_.at(id);
            out.add_edge(e.u, e.v, e.bends);
        }
        return out;
    }

    Drawing without_edges(const std::set<EdgeId>& drop) const {
        std::vector<EdgeId> keep;
        for (EdgeId id = 0; id < edges_.size(); ++id)
            if (!drop.contains(id)) keep.push_back(id);
        return with_edges(keep);
    }

    friend bool operator==(const Drawing& a, const Drawing& b) {
        if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) return false;
        for (std::size_t i = 0; i < a.vertices_.size(); ++i)
            if (a.vertices_[i].name != b.vertices_[i].name || a.vertices_[i].pos != b.vertices_[i].pos) return false;
        for (std::size_t i = 0; i < a.edges_.size(); ++i) {
            const auto& x = a.edges_[i];
            const auto& y = b.edges_[i];
            if (x.u != y.u || x.v != y.v || x.bends != y.bends) return false;
        }
        return true;
    }

private:
    static std::vector<Point> normalize_bends(const Point& start, const Point& end, std::vector<Point> bends) {
        std::vector<Point> pts;
        pts.reserve(bends.size() + 2);
        pts.push_back(start);
        for (auto& b : bends) pts.push_back(std::move(b));
        pts.push_back(end);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i] == pts[i + 1]) throw DrawingError("zero-length segment in edge polyline");
        std::vector<Point> out{pts.front()};
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            const Point& prev = out.back();
            const Point& cur = pts[i];
            const Point& next = pts[i + 1];
            // a bend that keeps going straight is not a bend; a reversal is kept
            // so that validation can report the self-overlap
            if (orientation(prev, cur, next) == 0 && dot(cur - prev, next - cur).sign() > 0) continue;
            out.push_back(cur);
        }
        return {out.begin() + 1, out.end()};
    }

    std::vector<Vertex> vertices_;
    std::vector<PolyEdge> edges_;
    std::map<std::string, VertexId> by_name_;
    std::map<Point, VertexId, PointKeyLess> by_pos_;
    std::set<std::pair<VertexId, VertexId>> edge_keys_;
};

}  // namespace racdraw
