#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "racdraw/planarize.hpp"

namespace racdraw {

enum class Rule { R0TriangleHalf, R1ConvexBendHalf, R1LensUnit };

inline std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::R0TriangleHalf: return "R0_TRIANGLE_HALF";
        case Rule::R1ConvexBendHalf: return "R1_CONVEX_BEND_HALF";
        case Rule::R1LensUnit: return "R1_LENS_UNIT";
    }
    return "?";
}

struct ChargeSource {
    enum class Kind { Node, Face } kind;
    std::size_t id;
};

struct Transfer {
    ChargeSource source;
    FaceId target;
    Rational amount;
    Rule rule;
};

/// Per-node and per-face charges with an append-only transfer log. Every
/// transfer moves charge, so the total never changes.
class ChargeLedger {
public:
    ChargeLedger() = default;
    ChargeLedger(std::vector<Rational> vertex_charge, std::vector<Rational> face_charge, Rational expected_total)
        : vertex_charge_(std::move(vertex_charge)),
          face_charge_(std::move(face_charge)),
          expected_total_(std::move(expected_total)) {}

    const std::vector<Rational>& vertex_charge() const { return vertex_charge_; }
    const std::vector<Rational>& face_charge() const { return face_charge_; }
    const std::vector<Transfer>& transfers() const { return transfers_; }
    const Rational& expected_total() const { return expected_total_; }

    Rational total() const {
        Rational t = 0;
        for (const auto& c : vertex_charge_) t += c;
        for (const auto& c : face_charge_) t += c;
        return t;
    }

    void apply(Transfer t) {
        Rational& src = t.source.kind == ChargeSource::Kind::Node ? vertex_charge_.at(t.source.id)
                                                                   : face_charge_.at(t.source.id);
        src -= t.amount;
        face_charge_.at(t.target) += t.amount;
        transfers_.push_back(std::move(t));
    }

    bool faces_nonnegative() const {
        for (const auto& c : face_charge_)
            if (c < 0) return false;
        return true;
    }

    bool empty() const { return vertex_charge_.empty() && face_charge_.empty(); }

private:
    std::vector<Rational> vertex_charge_;
    std::vector<Rational> face_charge_;
    std::vector<Transfer> transfers_;
    Rational expected_total_{0};
};

/// ch(v) = d_v - 4 on every node (crossings get 0) and ch(f) = d_f - 4 on
/// every face; by Euler the total is -4 (1 + #components).
inline ChargeLedger initial_charges(const PlaneMultigraph& pm) {
    std::vector<Rational> vc(pm.node_count());
    std::vector<Rational> fc(pm.face_count());
    for (NodeId v = 0; v < pm.node_count(); ++v) vc[v] = Rational(static_cast<long>(pm.degree(v))) - 4;
    for (FaceId f = 0; f < pm.face_count(); ++f) fc[f] = Rational(static_cast<long>(pm.face(f).size)) - 4;
    return {std::move(vc), std::move(fc), Rational(-4 * (1 + static_cast<long>(pm.component_count())))};
}

enum class Verdict { Certified, Reducible, Invalid };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "Certified";
        case Verdict::Reducible: return "Reducible";
        case Verdict::Invalid: return "Invalid";
    }
    return "?";
}

struct AuditResult {
    Verdict verdict = Verdict::Invalid;
    std::string reason;                 // empty when certified
    std::optional<FaceId> witness_face;  // offending face of the planarization
    ChargeLedger ledger;
    std::size_t n = 0;
    std::size_t m = 0;
    long bound = 0;  // 4n - 8 or 7n - 12
    bool bound_satisfied = false;
    std::size_t stripped_edges = 0;
    std::vector<std::string> notes;        // evidence lines that are not transfers
    std::optional<PlaneMultigraph> graph;  // the audited planarization
    std::vector<EdgeId> edge_map;          // planarized edge -> input edge
};

namespace detail {

inline std::vector<NodeId> original_nodes_on(const PlaneMultigraph& pm, const Face& f) {
    std::set<NodeId> s;
    for (const auto& cyc : f.cycles)
        for (HalfEdgeId h : cyc)
            if (pm.node(pm.half_edge(h).origin).kind == NodeKind::Original) s.insert(pm.half_edge(h).origin);
    return {s.begin(), s.end()};
}

inline void finish(AuditResult& r) {
    if (r.verdict == Verdict::Certified && !r.ledger.faces_nonnegative()) {
        r.verdict = Verdict::Invalid;
        r.reason = "NEGATIVE_FACE";
    }
    r.bound_satisfied = static_cast<long>(r.m) <= r.bound;
}

inline AuditResult invalid(AuditResult r, std::string reason, std::optional<FaceId> face = std::nullopt) {
    r.verdict = Verdict::Invalid;
    r.reason = std::move(reason);
    r.witness_face = face;
    r.bound_satisfied = static_cast<long>(r.m) <= r.bound;
    return r;
}

inline AuditResult reducible(AuditResult r, std::string reason, FaceId face) {
    r.verdict = Verdict::Reducible;
    r.reason = std::move(reason);
    r.witness_face = face;
    r.bound_satisfied = static_cast<long>(r.m) <= r.bound;
    return r;
}

}  // namespace detail

/// Straight-line audit: each triangle takes 1/2 from two of its drawn
/// vertices. Certified drawings satisfy m <= 4n - 8.
inline AuditResult audit_r0(const Drawing& d) {
    AuditResult r;
    r.n = d.vertex_count();
    r.m = d.edge_count();
    r.bound = 4 * static_cast<long>(r.n) - 8;
    if (!validate(d, 0).ok) return detail::invalid(std::move(r), "NOT_R0");
    for (EdgeId e = 0; e < d.edge_count(); ++e) r.edge_map.push_back(e);

    PlaneMultigraph pm = planarize(d);
    r.ledger = initial_charges(pm);
    for (const Face& f : pm.faces()) {
        if (f.size != 3) continue;
        const auto originals = detail::original_nodes_on(pm, f);
        if (originals.size() < 2) {
            r.graph = std::move(pm);
            return detail::invalid(std::move(r), "TRIANGLE_WITHOUT_TWO_VERTICES", f.id);
        }
        for (std::size_t i = 0; i < 2; ++i)
            r.ledger.apply({{ChargeSource::Kind::Node, originals[i]}, f.id, Rational(1, 2), Rule::R0TriangleHalf});
    }
    for (NodeId v = 0; v < pm.original_count(); ++v) {
        const Rational floor = Rational(static_cast<long>(pm.degree(v)), 2) - 4;
        if (r.ledger.vertex_charge()[v] < floor) {
            r.graph = std::move(pm);
            return detail::invalid(std::move(r), "RESIDUAL_BELOW_HALF_DEGREE");
        }
    }
    r.verdict = Verdict::Certified;
    for (const Face& f : pm.faces())
        if (r.ledger.face_charge()[f.id] < 0) r.witness_face = f.id;
    r.graph = std::move(pm);
    detail::finish(r);
    return r;
}

/// One-bend audit: strip crossing-free edges, send 1/2 from both ends of
/// every bent edge to the face where its bend is convex, then feed lenses
/// with a single convex bend from the first non-triangular wedge around
/// their vertex. Certified drawings satisfy m <= 7n - 12.
inline AuditResult audit_r1(const Drawing& d) {
    AuditResult r;
    r.n = d.vertex_count();
    r.m = d.edge_count();
    r.bound = 7 * static_cast<long>(r.n) - 12;
    if (!validate(d, 1).ok) return detail::invalid(std::move(r), "NOT_R1");

    const auto free = crossing_free_edges(d);
    r.stripped_edges = free.size();
    for (EdgeId e = 0; e < d.edge_count(); ++e)
        if (!free.contains(e)) r.edge_map.push_back(e);
    const long n = static_cast<long>(r.n);
    if (n >= 3 && static_cast<long>(r.stripped_edges) > 3 * n - 6)
        return detail::invalid(std::move(r), "STRIPPED_EXCEEDS_PLANAR_BOUND");
    if (r.edge_map.empty()) {
        r.verdict = Verdict::Certified;
        r.notes.push_back("# all edges crossing-free; nothing to discharge");
        detail::finish(r);
        return r;
    }

    const Drawing core = d.with_edges(r.edge_map);
    PlaneMultigraph pm = planarize(core);
    r.ledger = initial_charges(pm);
    auto label = [&](EdgeId sub) { return "e" + std::to_string(r.edge_map[sub]); };

    // Step 1: bends.
    std::vector<std::optional<FaceId>> bend_face(core.edge_count());
    for (const Face& f : pm.faces())
        for (const auto& mark : f.bend_marks)
            if (mark.convex) bend_face[mark.edge] = f.id;
    for (EdgeId e = 0; e < core.edge_count(); ++e) {
        const auto& edge = core.edge(e);
        if (edge.bend_count() == 0) {
            r.notes.push_back("# SKIP R1_CONVEX_BEND_HALF " + label(e) + " has no bend");
            continue;
        }
        const FaceId target = *bend_face[e];
        for (VertexId v : {edge.u, edge.v})
            r.ledger.apply({{ChargeSource::Kind::Node, v}, target, Rational(1, 2), Rule::R1ConvexBendHalf});
    }

    // Triangles must already be settled by a convex bend.
    for (const Face& f : pm.faces()) {
        if (f.size == 3 && r.ledger.face_charge()[f.id] < 0) {
            r.graph = std::move(pm);
            return detail::invalid(std::move(r), "TRIANGLE_WITHOUT_CONVEX_BEND", f.id);
        }
    }

    // Step 2: lenses.
    std::set<EdgeId> spent;
    for (const Face& lens : pm.faces()) {
        if (lens.size != 2 || r.ledger.face_charge()[lens.id] >= 0) continue;
        const FaceId lens_id = lens.id;
        auto fail = [&](std::string why) {
            r.graph = std::move(pm);
            return detail::invalid(std::move(r), std::move(why), lens_id);
        };
        auto reduce = [&](std::string why) {
            r.graph = std::move(pm);
            return detail::reducible(std::move(r), std::move(why), lens_id);
        };
        const auto originals = detail::original_nodes_on(pm, lens);
        if (originals.size() != 1 || lens.cycles.size() != 1) return fail("LENS_SHAPE");
        const NodeId v = originals.front();
        std::vector<EdgeId> convex;
        std::vector<EdgeId> concave;
        for (const auto& mark : lens.bend_marks) (mark.convex ? convex : concave).push_back(mark.edge);
        if (concave.empty()) return reduce("LENS_REDRAWABLE");
        if (convex.size() != 1 || concave.size() != 1) return fail("LENS_SHAPE");
        if (pm.degree(v) == 2) return fail("DEGREE_TWO_LENS_VERTEX");

        const auto& cyc = lens.cycles.front();
        const HalfEdgeId out = pm.half_edge(cyc[0]).origin == v ? cyc[0] : cyc[1];
        const HalfEdgeId in = out == cyc[0] ? cyc[1] : cyc[0];
        const HalfEdgeId a = pm.half_edge(in).twin;  // clockwise predecessor of `out` at v
        const EdgeId e1 = concave.front();
        // walk away from e0 through e1; mirrored lenses walk counterclockwise
        const bool clockwise = pm.half_edge(out).edge == e1;
        const HalfEdgeId h0 = clockwise ? a : out;
        auto turn = [&](HalfEdgeId h) { return clockwise ? pm.rotate_cw(h) : pm.rotate_ccw(h); };
        auto wedge_face = [&](HalfEdgeId from, HalfEdgeId to) {
            return clockwise ? pm.half_edge(to).face : pm.half_edge(from).face;
        };
        std::vector<HalfEdgeId> walk{h0, turn(h0)};
        const std::size_t deg = pm.degree(v);
        for (std::size_t i = 2; i <= deg; ++i) walk.push_back(turn(walk.back()));
        std::optional<std::size_t> stop;
        for (std::size_t i = 1; i < deg; ++i) {
            if (pm.face(wedge_face(walk[i], walk[i + 1])).size != 3) {
                stop = i;
                break;
            }
        }
        if (!stop) return fail("WEDGE_WALK_WRAPPED");
        const std::size_t i = *stop;
        const EdgeId ei = pm.half_edge(walk[i]).edge;
        if (i > 1) {
            const Face& tri = pm.face(wedge_face(walk[i - 1], walk[i]));
            bool any = false;
            bool convex_here = false;
            for (const auto& mark : tri.bend_marks) {
                if (mark.edge != ei) continue;
                any = true;
                convex_here = convex_here || mark.convex;
            }
            if (convex_here) return reduce("TRIANGLE_HOLDS_CONVEX_BEND_OF_WALK_EDGE");
            if (!any) return reduce("TRIANGLE_WITHOUT_BEND_OF_WALK_EDGE");
        }
        const Face& donor = pm.face(wedge_face(walk[i], walk[i + 1]));
        if (donor.size <= 3) return reduce("DONOR_FACE_TOO_SMALL");
        bool has_bend = false;
        for (const auto& mark : donor.bend_marks) has_bend = has_bend || (mark.convex && mark.edge == ei);
        if (!has_bend) return reduce("DONOR_WITHOUT_CONVEX_BEND_OF_WALK_EDGE");
        if (!spent.insert(ei).second) return fail("DOUBLE_SPEND " + label(ei));
        r.ledger.apply({{ChargeSource::Kind::Face, donor.id}, lens_id, Rational(1), Rule::R1LensUnit});
    }

    r.verdict = Verdict::Certified;
    for (const Face& f : pm.faces())
        if (r.ledger.face_charge()[f.id] < 0) r.witness_face = f.id;
    r.graph = std::move(pm);
    detail::finish(r);
    return r;
}

inline std::string format_rational(const Rational& q) { return q.str(); }

/// One line per transfer, `<rule> <source> -> <face> <amount>`, followed by
/// the verdict and bound line.
inline std::string evidence_log(const AuditResult& r) {
    std::ostringstream os;
    for (const auto& note : r.notes) os << note << '\n';
    for (const auto& t : r.ledger.transfers()) {
        os << to_string(t.rule) << ' ' << (t.source.kind == ChargeSource::Kind::Node ? 'v' : 'f') << t.source.id
           << " -> f" << t.target << ' ' << format_rational(t.amount) << '\n';
    }
    if (!r.reason.empty()) {
        os << "# reason " << r.reason;
        if (r.witness_face) os << " at f" << *r.witness_face;
        os << '\n';
    }
    os << "VERDICT " << to_string(r.verdict) << " BOUND m=" << r.m << " <= " << r.bound << '\n';
    return os.str();
}

/// Exit code contract of the audit command.
inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Certified: return 0;
        case Verdict::Reducible: return 3;
        case Verdict::Invalid: return 1;
    }
    return 1;
}

}  // namespace racdraw
