#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "racdraw/validate.hpp"

namespace racdraw {

using NodeId = std::size_t;
using HalfEdgeId = std::size_t;
using FaceId = std::size_t;

enum class NodeKind { Original, Crossing };

struct Node {
    NodeKind kind;
    std::size_t ref;  // vertex id or crossing index
    Point pos;
};

/// One direction of a sub-arc. `path` runs from the origin node to the
/// destination node and includes the bends in between.
struct HalfEdge {
    NodeId origin{};
    HalfEdgeId twin{};
    HalfEdgeId next{};
    FaceId face{};
    EdgeId edge{};
    std::size_t arc{};
    std::vector<Point> path;
};

struct BendMark {
    Point point;
    EdgeId edge;
    bool convex;
    HalfEdgeId half_edge;
};

struct Face {
    FaceId id{};
    std::vector<std::vector<HalfEdgeId>> cycles;  // outer boundary first, then holes
    std::size_t size = 0;                         // d_f
    bool is_outer = false;
    std::vector<BendMark> bend_marks;
};

/// Two consecutive half-edges leaving `vertex`; `second` follows `first`
/// clockwise.
struct Wedge {
    NodeId vertex;
    HalfEdgeId first;
    HalfEdgeId second;
};

/// Faces containing a wedge. At a vertex of degree 2 the reversed wedge
/// bounds a second face and both are reported.
struct WedgeFaces {
    FaceId face;
    std::optional<FaceId> alternate;
};

namespace detail {

inline Scalar signed_area2(const std::vector<Point>& ring) {
    Scalar a(0);
    for (std::size_t i = 0; i < ring.size(); ++i) a += cross(ring[i], ring[(i + 1) % ring.size()]);
    return a;
}

/// Winding number of a closed ring around q; q must not lie on the ring.
inline int winding_number(const std::vector<Point>& ring, const Point& q) {
    int wn = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        if (a.y <= q.y) {
            if (b.y > q.y && orientation(a, b, q) > 0) ++wn;
        } else if (b.y <= q.y && orientation(a, b, q) < 0) {
            --wn;
        }
    }
    return wn;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// The plane multigraph G' of a drawing: every crossing becomes a node of
/// degree 4 and every edge is cut into sub-arcs at its crossings. Bends stay
/// geometry on the sub-arcs, so face sizes count graph edges only.
class PlaneMultigraph {
public:
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    const HalfEdge& half_edge(HalfEdgeId id) const { return half_edges_.at(id); }
    const Face& face(FaceId id) const { return faces_.at(id); }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return half_edges_.size() / 2; }
    std::size_t face_count() const { return faces_.size(); }
    std::size_t component_count() const { return components_; }
    std::size_t original_count() const { return originals_; }
    FaceId outer_face() const { return 0; }

    std::size_t degree(NodeId v) const { return rotation_ccw_.at(v).size(); }
    NodeId dest(HalfEdgeId h) const { return half_edges_[half_edges_[h].twin].origin; }

    /// Outgoing half-edges in clockwise order.
    std::vector<HalfEdgeId> rotation(NodeId v) const {
        const auto& ccw = rotation_ccw_.at(v);
        return {ccw.rbegin(), ccw.rend()};
    }

    /// Clockwise successor of h around its origin.
    HalfEdgeId rotate_cw(HalfEdgeId h) const { return step(h, -1); }
    HalfEdgeId rotate_ccw(HalfEdgeId h) const { return step(h, +1); }

    std::vector<Wedge> wedges(NodeId v) const {
        std::vector<Wedge> out;
        for (HalfEdgeId h : rotation(v)) out.push_back({v, h, rotate_cw(h)});
        return out;
    }

    WedgeFaces wedge_face(const Wedge& w) const {
        if (half_edges_.at(w.first).origin != w.vertex || rotate_cw(w.first) != w.second)
            throw std::invalid_argument("not a wedge of this plane multigraph");
        // next(twin(first)) == second, so the wedge lies in the face left of second
        WedgeFaces out{half_edges_[w.second].face, std::nullopt};
        if (degree(w.vertex) == 2) out.alternate = half_edges_[w.first].face;
        return out;
    }

    const std::vector<BendMark>& face_bends(FaceId f) const { return faces_.at(f).bend_marks; }

    /// Polygon traced by one boundary cycle.
    std::vector<Point> cycle_ring(const std::vector<HalfEdgeId>& cycle) const {
        std::vector<Point> ring;
        for (HalfEdgeId h : cycle) {
            const auto& path = half_edges_[h].path;
            ring.insert(ring.end(), path.begin(), path.end() - 1);
        }
        return ring;
    }

    /// |V'| - |E'| + |F'| - (1 + #components); zero for every planarization.
    long euler_defect() const {
        return static_cast<long>(node_count()) - static_cast<long>(edge_count()) + static_cast<long>(face_count()) -
               1 - static_cast<long>(components_);
    }

    friend PlaneMultigraph planarize(const Drawing& d);

private:
    HalfEdgeId step(HalfEdgeId h, int dir) const {
        const auto& rot = rotation_ccw_.at(half_edges_.at(h).origin);
        const auto idx = rotation_index_[h];
        const auto n = rot.size();
        return rot[(dir > 0 ? idx + 1 : idx + n - 1) % n];
    }

    std::vector<Node> nodes_;
    std::vector<HalfEdge> half_edges_;
    std::vector<Face> faces_;
    std::vector<Crossing> crossings_;
    std::vector<std::vector<HalfEdgeId>> rotation_ccw_;
    std::vector<std::size_t> rotation_index_;
    std::size_t components_ = 0;
    std::size_t originals_ = 0;
};

inline PlaneMultigraph planarize(const Drawing& d) {
    const auto report = require_valid(d, 3);
    PlaneMultigraph pm;
    const std::size_t n = d.vertex_count();
    pm.originals_ = n;
    pm.crossings_ = report.crossings;
    for (VertexId v = 0; v < n; ++v) pm.nodes_.push_back({NodeKind::Original, v, d.vertex(v).pos});
    for (std::size_t c = 0; c < pm.crossings_.size(); ++c)
        pm.nodes_.push_back({NodeKind::Crossing, c, pm.crossings_[c].point});

    // Cut every edge at its crossings, ordered along the arc.
    struct Stop {
        std::size_t seg;
        Scalar t;
        NodeId node;
    };
    std::vector<std::vector<Stop>> stops(d.edge_count());
    std::vector<std::vector<Point>> lines(d.edge_count());
    for (EdgeId e = 0; e < d.edge_count(); ++e) lines[e] = d.polyline(e);
    auto param = [&](EdgeId e, std::size_t seg, const Point& p) {
        return dot(p - lines[e][seg], lines[e][seg + 1] - lines[e][seg]);
    };
    for (std::size_t c = 0; c < pm.crossings_.size(); ++c) {
        const auto& x = pm.crossings_[c];
        stops[x.edge_a].push_back({x.seg_a, param(x.edge_a, x.seg_a, x.point), n + c});
        stops[x.edge_b].push_back({x.seg_b, param(x.edge_b, x.seg_b, x.point), n + c});
    }
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        auto& s = stops[e];
        std::sort(s.begin(), s.end(), [](const Stop& a, const Stop& b) {
            if (a.seg != b.seg) return a.seg < b.seg;
            return a.t < b.t;
        });
        const auto& line = lines[e];
        const std::size_t last_seg = line.size() - 2;
        std::vector<std::pair<std::size_t, NodeId>> seq;  // (segment index, node)
        seq.emplace_back(0, d.edge(e).u);
        for (const auto& st : s) seq.emplace_back(st.seg, st.node);
        seq.emplace_back(last_seg, d.edge(e).v);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            std::vector<Point> path{pm.nodes_[seq[i].second].pos};
            // bend b sits between segment b and b + 1
            for (std::size_t b = seq[i].first; b < seq[i + 1].first; ++b) path.push_back(line[b + 1]);
            path.push_back(pm.nodes_[seq[i + 1].second].pos);
            const std::size_t arc = pm.half_edges_.size() / 2;
            const HalfEdgeId fwd = pm.half_edges_.size();
            HalfEdge h1{seq[i].second, fwd + 1, 0, 0, e, arc, path};
            std::reverse(path.begin(), path.end());
            HalfEdge h2{seq[i + 1].second, fwd, 0, 0, e, arc, std::move(path)};
            pm.half_edges_.push_back(std::move(h1));
            pm.half_edges_.push_back(std::move(h2));
        }
    }

    // Rotation systems by exact angle of the first piece of each path.
    pm.rotation_ccw_.assign(pm.nodes_.size(), {});
    pm.rotation_index_.assign(pm.half_edges_.size(), 0);
    for (HalfEdgeId h = 0; h < pm.half_edges_.size(); ++h) pm.rotation_ccw_[pm.half_edges_[h].origin].push_back(h);
    for (auto& rot : pm.rotation_ccw_) {
        std::sort(rot.begin(), rot.end(), [&](HalfEdgeId a, HalfEdgeId b) {
            const auto& pa = pm.half_edges_[a].path;
            const auto& pb = pm.half_edges_[b].path;
            return angle_less(pa[1] - pa[0], pb[1] - pb[0]);
        });
        for (std::size_t i = 0; i < rot.size(); ++i) pm.rotation_index_[rot[i]] = i;
    }
    for (NodeId v = n; v < pm.nodes_.size(); ++v)
        if (pm.rotation_ccw_[v].size() != 4) throw std::logic_error("crossing node without degree 4");

    // Face on the left: next(h) is the clockwise neighbour of twin(h) at dest(h).
    for (HalfEdgeId h = 0; h < pm.half_edges_.size(); ++h) pm.half_edges_[h].next = pm.rotate_cw(pm.half_edges_[h].twin);

    std::vector<std::vector<HalfEdgeId>> cycles;
    std::vector<std::size_t> cycle_of(pm.half_edges_.size(), static_cast<std::size_t>(-1));
    for (HalfEdgeId h = 0; h < pm.half_edges_.size(); ++h) {
        if (cycle_of[h] != static_cast<std::size_t>(-1)) continue;
        std::vector<HalfEdgeId> cyc;
        for (HalfEdgeId g = h; cycle_of[g] == static_cast<std::size_t>(-1); g = pm.half_edges_[g].next) {
            cycle_of[g] = cycles.size();
            cyc.push_back(g);
        }
        cycles.push_back(std::move(cyc));
    }

    detail::UnionFind uf(pm.nodes_.size());
    for (HalfEdgeId h = 0; h < pm.half_edges_.size(); h += 2) uf.unite(pm.half_edges_[h].origin, pm.dest(h));
    std::vector<std::size_t> comp_root;
    for (NodeId v = 0; v < pm.nodes_.size(); ++v)
        if (uf.find(v) == v) comp_root.push_back(v);
    pm.components_ = comp_root.size();

    std::vector<std::vector<Point>> rings(cycles.size());
    std::vector<Scalar> areas(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        rings[c] = pm.cycle_ring(cycles[c]);
        areas[c] = detail::signed_area2(rings[c]);
    }

    // Each component with edges has exactly one non-positive cycle: its outer boundary.
    std::vector<std::size_t> outer_cycle_of_root(pm.nodes_.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> bounded;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const std::size_t root = uf.find(pm.half_edges_[cycles[c].front()].origin);
        if (areas[c].sign() > 0) {
            bounded.push_back(c);
            continue;
        }
        if (outer_cycle_of_root[root] != static_cast<std::size_t>(-1))
            throw std::logic_error("component with two outer boundary cycles");
        outer_cycle_of_root[root] = c;
    }

    pm.faces_.push_back({0, {}, 0, true, {}});
    std::vector<FaceId> face_of_cycle(cycles.size(), 0);
    for (std::size_t c : bounded) {
        face_of_cycle[c] = pm.faces_.size();
        pm.faces_.push_back({pm.faces_.size(), {cycles[c]}, 0, false, {}});
    }
    // Nest each component's outer boundary into the smallest bounded cycle
    // of another component that surrounds it.
    for (NodeId root : comp_root) {
        const std::size_t oc = outer_cycle_of_root[root];
        if (oc == static_cast<std::size_t>(-1)) continue;  // isolated vertex
        const Point& probe = pm.nodes_[root].pos;
        std::optional<std::size_t> best;
        for (std::size_t c : bounded) {
            if (uf.find(pm.half_edges_[cycles[c].front()].origin) == root) continue;
            if (detail::winding_number(rings[c], probe) == 0) continue;
            if (!best || areas[c] < areas[*best]) best = c;
        }
        const FaceId f = best ? face_of_cycle[*best] : 0;
        face_of_cycle[oc] = f;
        pm.faces_[f].cycles.push_back(cycles[oc]);
    }

    for (auto& f : pm.faces_) {
        for (const auto& cyc : f.cycles) {
            f.size += cyc.size();
            for (HalfEdgeId h : cyc) {
                pm.half_edges_[h].face = f.id;
                const auto& path = pm.half_edges_[h].path;
                for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                    const bool convex = turn_sign(path[i - 1], path[i], path[i + 1]) > 0;
                    f.bend_marks.push_back({path[i], pm.half_edges_[h].edge, convex, h});
                }
            }
        }
    }

    if (pm.euler_defect() != 0) throw std::logic_error("Euler identity violated by planarization");
    return pm;
}

}  // namespace racdraw
