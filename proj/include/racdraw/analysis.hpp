#pragma once

#include <cstdint>
#include <bit>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "racdraw/validate.hpp"

namespace racdraw {

/// At least 64 fractional bits; used for every bound evaluation.
using Real = boost::multiprecision::cpp_bin_float_50;

enum class SegmentRole { End, Middle };
enum class CrossingType { I, II, III };

inline std::string_view to_string(SegmentRole r) { return r == SegmentRole::End ? "End" : "Middle"; }
inline std::string_view to_string(CrossingType t) {
    switch (t) {
        case CrossingType::I: return "I";
        case CrossingType::II: return "II";
        case CrossingType::III: return "III";
    }
    return "?";
}

struct CrossingRecord {
    EdgeId edge_a;
    std::size_t seg_a;
    EdgeId edge_b;
    std::size_t seg_b;
    Point point;
    SegmentRole role_a;
    SegmentRole role_b;
    CrossingType kind;
};

/// The first and last pieces of an arc are end segments; a piece touching
/// neither endpoint is the middle segment. Arcs with one or two pieces have
/// no middle segment.
inline SegmentRole segment_role(const PolyEdge& e, std::size_t seg) {
    return (seg == 0 || seg + 1 == e.segment_count()) ? SegmentRole::End : SegmentRole::Middle;
}

/// Endpoints contained in piece `seg` of the arc (both for a straight edge).
inline std::vector<VertexId> segment_endpoints(const PolyEdge& e, std::size_t seg) {
    std::vector<VertexId> out;
    if (seg == 0) out.push_back(e.u);
    if (seg + 1 == e.segment_count()) out.push_back(e.v);
    return out;
}

inline std::vector<CrossingRecord> classify_crossings(const Drawing& d) {
    const auto report = require_valid(d, 2);
    std::vector<CrossingRecord> out;
    out.reserve(report.crossings.size());
    for (const auto& c : report.crossings) {
        const auto ra = segment_role(d.edge(c.edge_a), c.seg_a);
        const auto rb = segment_role(d.edge(c.edge_b), c.seg_b);
        const int middles = (ra == SegmentRole::Middle) + (rb == SegmentRole::Middle);
        const auto kind = middles == 0 ? CrossingType::I : (middles == 1 ? CrossingType::II : CrossingType::III);
        out.push_back({c.edge_a, c.seg_a, c.edge_b, c.seg_b, c.point, ra, rb, kind});
    }
    return out;
}

struct CrossingCounts {
    std::size_t type1 = 0;
    std::size_t type2 = 0;
    std::size_t type3 = 0;
    std::size_t total() const { return type1 + type2 + type3; }
};

inline CrossingCounts count_by_type(const std::vector<CrossingRecord>& records) {
    CrossingCounts c;
    for (const auto& r : records) {
        if (r.kind == CrossingType::I) ++c.type1;
        else if (r.kind == CrossingType::II) ++c.type2;
        else ++c.type3;
    }
    return c;
}

/// Number of end-end crossings between an end segment at u and one at v,
/// for every vertex pair {u, v}. A right angle at the crossing puts it on
/// the circle with diameter uv, which allows at most two.
inline std::map<std::pair<VertexId, VertexId>, int> type1_pair_counts(const Drawing& d,
                                                                       const std::vector<CrossingRecord>& records) {
    std::map<std::pair<VertexId, VertexId>, int> counts;
    for (const auto& r : records) {
        if (r.kind != CrossingType::I) continue;
        for (VertexId x : segment_endpoints(d.edge(r.edge_a), r.seg_a))
            for (VertexId y : segment_endpoints(d.edge(r.edge_b), r.seg_b))
                if (x != y) ++counts[std::minmax(x, y)];
    }
    return counts;
}

/// Number of end-middle crossings between the middle segment of an edge
/// and the end segments at a vertex, keyed by (edge, vertex).
inline std::map<std::pair<EdgeId, VertexId>, int> type2_edge_vertex_counts(const Drawing& d,
                                                                           const std::vector<CrossingRecord>& records) {
    std::map<std::pair<EdgeId, VertexId>, int> counts;
    for (const auto& r : records) {
        if (r.kind != CrossingType::II) continue;
        const bool a_mid = r.role_a == SegmentRole::Middle;
        const EdgeId mid = a_mid ? r.edge_a : r.edge_b;
        const EdgeId end = a_mid ? r.edge_b : r.edge_a;
        const std::size_t end_seg = a_mid ? r.seg_b : r.seg_a;
        for (VertexId y : segment_endpoints(d.edge(end), end_seg)) ++counts[{mid, y}];
    }
    return counts;
}

/// Edges of the drawing linked when their middle segments cross.
struct ConflictGraph {
    std::size_t nodes = 0;
    std::vector<std::pair<EdgeId, EdgeId>> links;
    std::optional<std::vector<int>> side;                // 2-coloring when one exists
    std::optional<std::pair<EdgeId, EdgeId>> odd_link;  // a link closing an odd cycle

    bool bipartite() const { return side.has_value(); }
};

inline ConflictGraph conflict_graph(const Drawing& d) {
    const auto records = classify_crossings(d);
    ConflictGraph g;
    g.nodes = d.edge_count();
    std::set<std::pair<EdgeId, EdgeId>> seen;
    std::vector<std::vector<EdgeId>> adj(g.nodes);
    for (const auto& r : records) {
        if (r.kind != CrossingType::III || !seen.insert({r.edge_a, r.edge_b}).second) continue;
        g.links.emplace_back(r.edge_a, r.edge_b);
        adj[r.edge_a].push_back(r.edge_b);
        adj[r.edge_b].push_back(r.edge_a);
    }
    std::vector<int> color(g.nodes, -1);
    for (EdgeId s = 0; s < g.nodes; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::deque<EdgeId> queue{s};
        while (!queue.empty()) {
            const EdgeId x = queue.front();
            queue.pop_front();
            for (EdgeId y : adj[x]) {
                if (color[y] == -1) {
                    color[y] = 1 - color[x];
                    queue.push_back(y);
                } else if (color[y] == color[x] && !g.odd_link) {
                    g.odd_link = std::minmax(x, y);
                }
            }
        }
    }
    if (!g.odd_link) g.side = std::move(color);
    return g;
}

class NotBipartite : public std::runtime_error {
public:
    explicit NotBipartite(const std::string& what) : std::runtime_error("NOT_BIPARTITE: " + what) {}
};

/// Edges to delete so that no two middle segments cross: the smaller color
/// class among edges that have a middle-middle crossing at all.
inline std::set<EdgeId> destroy_type3(const Drawing& d) {
    const ConflictGraph g = conflict_graph(d);
    if (!g.bipartite())
        throw NotBipartite("middle segments of e" + std::to_string(g.odd_link->first) + " and e" +
                           std::to_string(g.odd_link->second) + " close an odd cycle");
    std::set<EdgeId> involved;
    for (const auto& [a, b] : g.links) {
        involved.insert(a);
        involved.insert(b);
    }
    std::set<EdgeId> sides[2];
    for (EdgeId e : involved) sides[(*g.side)[e]].insert(e);
    std::set<EdgeId> drop = sides[1].size() < sides[0].size() ? sides[1] : sides[0];
    if (drop.size() > d.edge_count() / 2) throw std::logic_error("type-III deletion removes more than half the edges");
    for (const auto& r : classify_crossings(d.without_edges(drop)))
        if (r.kind == CrossingType::III) throw std::logic_error("type-III crossing survived deletion");
    return drop;
}

/// 2 C(n,2) end-end crossings plus 2mn end-middle crossings.
inline std::uint64_t cr_upper_bound(std::uint64_t n, std::uint64_t m) {
    return n * (n == 0 ? 0 : n - 1) + 2 * m * n;
}

/// 1.58 (16 cr + sum d_i^2)^(1/2).
inline Real bisection_upper(std::span<const std::size_t> degrees, std::uint64_t cr) {
    Real sum = Real(16) * Real(cr);
    for (auto deg : degrees) sum += Real(deg) * Real(deg);
    return Real(158) / Real(100) * boost::multiprecision::sqrt(sum);
}

struct SimpleGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n, 0);
        for (const auto& [a, b] : edges) {
            ++deg[a];
            ++deg[b];
        }
        return deg;
    }
};

inline SimpleGraph graph_of(const Drawing& d) {
    SimpleGraph g{d.vertex_count(), {}};
    for (const auto& e : d.edges()) g.edges.emplace_back(e.u, e.v);
    return g;
}

class TooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Minimum number of cut edges over partitions with both sides at most 2n/3,
/// by exhaustive enumeration. Graphs with fewer than two vertices admit no
/// such partition and report 0.
inline std::size_t bisection_exact(const SimpleGraph& g) {
    if (g.n > 16) throw TooLarge("TOO_LARGE: exhaustive bisection limited to 16 vertices");
    if (g.n < 2) return 0;
    std::size_t best = g.edges.size();
    const std::uint32_t full = 1u << g.n;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        if (3 * k > 2 * g.n || 3 * (g.n - k) > 2 * g.n) continue;
        std::size_t cut = 0;
        for (const auto& [a, b] : g.edges) cut += ((mask >> a) & 1u) != ((mask >> b) & 1u);
        best = std::min(best, cut);
    }
    return best;
}

/// Numeric witness for the divide-and-conquer step: the smallest constant c
/// with  d ln n <= sqrt(c) (2 ln(9/5) ln n - ln^2(5/9))  for all n >= 2,
/// together with the checks that back it. Logarithms are natural.
struct RecursionAudit {
    Real d;
    Real c_exact;  // (d * max ratio)^2
    Real c;        // c_exact rounded up to a multiple of 1e-6
    std::uint64_t binding_n = 2;
    Real ratio_n2;
    Real ratio_n4;
    Real min_margin;  // smallest sqrt(c)(...) - d ln n over the sweep
    std::uint64_t swept = 0;
    std::uint64_t sweep_max = 0;
    bool closing_holds = false;
    bool previous_grid_value_fails = false;  // c - 1e-6 violates at n = 2
    bool quadratic_step_holds = false;       // m <= A + d sqrt(mn)  =>  sqrt m <= (d sqrt n + sqrt(d^2 n + 4A)) / 2
    bool split_step_holds = false;           // that bound <= sqrt(c n ln^2 n) for every admissible split
    std::uint64_t split_checked_up_to = 0;
    std::vector<std::string> lines;
};

namespace detail {

inline const Real& slack() {
    static const Real s("1e-9");
    return s;
}

inline Real closing_ratio(const Real& log_n) {
    using boost::multiprecision::log;
    static const Real k = log(Real(9) / Real(5));
    return log_n / (2 * k * log_n - k * k);
}

inline Real n_log2(std::uint64_t x) {
    using boost::multiprecision::log;
    if (x <= 1) return Real(0);
    const Real l = log(Real(x));
    return Real(x) * l * l;
}

}  // namespace detail

inline RecursionAudit recursion_constant(double d_value, std::uint64_t sweep_max = 1000000, int max_pow = 40,
                                         std::uint64_t split_up_to = 256) {
    using boost::multiprecision::ceil;
    using boost::multiprecision::floor;
    using boost::multiprecision::log;
    using boost::multiprecision::sqrt;
    if (!(d_value > 0)) throw std::invalid_argument("d must be positive");
    RecursionAudit a;
    a.d = Real(d_value);
    a.sweep_max = sweep_max;

    // ln n for the whole sweep; composites reuse ln of their smallest prime factor
    std::vector<std::uint32_t> spf(sweep_max + 1, 0);
    std::vector<Real> logs(sweep_max + 1);
    for (std::uint64_t n = 2; n <= sweep_max; ++n) {
        if (spf[n] == 0) {
            for (std::uint64_t q = n; q <= sweep_max; q += n)
                if (spf[q] == 0) spf[q] = static_cast<std::uint32_t>(n);
            logs[n] = log(Real(n));
        } else {
            logs[n] = logs[spf[n]] + logs[n / spf[n]];
        }
    }
    auto visit = [&](auto&& fn) {
        for (std::uint64_t n = 2; n <= sweep_max; ++n) fn(n, logs[n]);
        const Real ln2 = log(Real(2));
        for (int k = 1; k <= max_pow; ++k)
            if ((std::uint64_t{1} << k) > sweep_max) fn(std::uint64_t{1} << k, ln2 * k);
    };

    // The ratio is decreasing in ln n; locate the maximiser by sweeping anyway.
    Real best_ratio = -1;
    visit([&](std::uint64_t n, const Real& ln) {
        const Real r = detail::closing_ratio(ln);
        if (r > best_ratio) {
            best_ratio = r;
            a.binding_n = n;
        }
    });
    a.ratio_n2 = detail::closing_ratio(log(Real(2)));
    a.ratio_n4 = detail::closing_ratio(log(Real(4)));
    a.c_exact = a.d * a.d * best_ratio * best_ratio;
    a.c = ceil(a.c_exact * 1000000) / 1000000;

    const Real k = log(Real(9) / Real(5));
    const Real root_c = sqrt(a.c);
    a.closing_holds = true;
    a.min_margin = Real(1e300);
    visit([&](std::uint64_t, const Real& ln) {
        const Real margin = root_c * (2 * k * ln - k * k) - a.d * ln;
        if (margin < a.min_margin) a.min_margin = margin;
        if (margin < -detail::slack()) a.closing_holds = false;
        ++a.swept;
    });
    {
        const Real ln2 = log(Real(2));
        const Real below = sqrt(a.c - Real("1e-6"));
        a.previous_grid_value_fails = below * (2 * k * ln2 - k * k) < a.d * ln2;
    }

    // m <= A + d sqrt(mn) is a quadratic inequality in sqrt m; check the
    // closed-form root against the defining inequality on a sample.
    a.quadratic_step_holds = true;
    for (std::uint64_t n = 4; n <= 4096; n = n * 3 / 2 + 1) {
        for (std::uint64_t n1 = (n + 2) / 3; 3 * n1 <= 2 * n; n1 += std::max<std::uint64_t>(1, n / 7)) {
            const std::uint64_t n2 = n - n1;
            if (3 * n2 > 2 * n) continue;
            const Real A = a.c * (detail::n_log2(n1) + detail::n_log2(n2));
            const Real root = (a.d * sqrt(Real(n)) + sqrt(a.d * a.d * n + 4 * A)) / 2;
            // every m up to the root squared satisfies the step; one past it does not
            for (const Real m : {floor(root * root), floor(root * root) + 1}) {
                const bool before = m <= A + a.d * sqrt(m * n) + detail::slack();
                const bool after = sqrt(m) <= root + detail::slack();
                if (before && !after) a.quadratic_step_holds = false;
            }
        }
    }

    a.split_step_holds = true;
    a.split_checked_up_to = split_up_to;
    for (std::uint64_t n = 2; n <= split_up_to; ++n) {
        const Real rhs = sqrt(a.c * n) * log(Real(n));
        for (std::uint64_t n1 = 1; n1 < n; ++n1) {
            const std::uint64_t n2 = n - n1;
            if (3 * n1 > 2 * n || 3 * n2 > 2 * n) continue;
            const Real A = a.c * (detail::n_log2(n1) + detail::n_log2(n2));
            const Real lhs = (a.d * sqrt(Real(n)) + sqrt(a.d * a.d * n + 4 * A)) / 2;
            if (lhs > rhs + detail::slack()) {
                a.split_step_holds = false;
                a.lines.push_back("# split step fails at n=" + std::to_string(n) + " n1=" + std::to_string(n1));
            }
        }
    }

    std::ostringstream os;
    os.precision(12);
    os << "# log=natural slack=1e-9 binding_n=" << a.binding_n << " ratio(2)=" << a.ratio_n2
       << " ratio(4)=" << a.ratio_n4 << " swept=" << a.swept << " min_margin=" << a.min_margin;
    a.lines.insert(a.lines.begin(), os.str());
    return a;
}

struct JensenTerms {
    Real weighted;  // a ln^2(an) + b ln^2(bn)
    Real middle;    // ln^2((a^2 + b^2) n)
    Real outer;     // ln^2(5n/9)
};

inline JensenTerms jensen_terms(const Real& a, std::uint64_t n) {
    using boost::multiprecision::log;
    const Real b = 1 - a;
    auto sq = [](const Real& x) { return x * x; };
    return {a * sq(log(a * n)) + b * sq(log(b * n)), sq(log((a * a + b * b) * n)), sq(log(Real(5) * n / 9))};
}

/// Both steps of  a ln^2(an) + b ln^2(bn) <= ln^2((a^2+b^2) n) <= ln^2(5n/9)
/// for a in [1/3, 2/3], b = 1 - a, within the 1e-9 slack. The first step
/// is concavity of ln^2 and fails for n <= 5.
inline bool jensen_check(const Real& a, std::uint64_t n) {
    if (a < Real(1) / 3 - detail::slack() || a > Real(2) / 3 + detail::slack())
        throw std::invalid_argument("a must lie in [1/3, 2/3]");
    const auto t = jensen_terms(a, n);
    return t.weighted <= t.middle + detail::slack() && t.middle <= t.outer + detail::slack();
}

/// Crossing statistics and bound evaluations for one graph.
struct BoundsReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::optional<CrossingCounts> crossings;  // measured when a drawing is given
    std::uint64_t type3_deleted = 0;
    std::uint64_t m_residual = 0;
    std::uint64_t cr_upper = 0;
    std::optional<std::uint64_t> cr_drawing;
    Real bisection_upper;
    std::optional<RecursionAudit> recursion;
};

/// Drawing input: crossings are measured and classified, type-III crossings
/// are destroyed first, and the bisection bound uses the drawing's own
/// crossing count (any drawing bounds cr(G) from above).
inline BoundsReport bounds_for_drawing(const Drawing& d) {
    BoundsReport r;
    r.n = d.vertex_count();
    r.m = d.edge_count();
    const auto records = classify_crossings(d);
    r.crossings = count_by_type(records);
    r.type3_deleted = destroy_type3(d).size();
    r.m_residual = r.m - r.type3_deleted;
    r.cr_upper = cr_upper_bound(r.n, r.m_residual);
    r.cr_drawing = r.crossings->total();
    const auto deg = d.degrees();
    r.bisection_upper = bisection_upper(deg, *r.cr_drawing);
    return r;
}

/// Count-only input: sum d_i^2 is bounded by 2mn.
inline BoundsReport bounds_for_counts(std::uint64_t n, std::uint64_t m) {
    BoundsReport r;
    r.n = n;
    r.m = m;
    r.m_residual = m;
    r.cr_upper = cr_upper_bound(n, m);
    r.bisection_upper = Real(158) / 100 * boost::multiprecision::sqrt(Real(16) * r.cr_upper + Real(2) * m * n);
    return r;
}

inline std::string format_real(const Real& x, int digits = 12) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

inline std::string format_bounds(const BoundsReport& r) {
    std::ostringstream os;
    os << "# log=natural\n";
    os << "n=" << r.n << "\nm=" << r.m << '\n';
    if (r.crossings) {
        os << "cI=" << r.crossings->type1 << "\ncII=" << r.crossings->type2 << "\ncIII=" << r.crossings->type3 << '\n';
        os << "type3_deleted=" << r.type3_deleted << "\nm_residual=" << r.m_residual << '\n';
    }
    os << "cr_upper=" << r.cr_upper << '\n';
    if (r.cr_drawing) os << "cr_drawing=" << *r.cr_drawing << '\n';
    os << "bisection_upper=" << format_real(r.bisection_upper) << '\n';
    if (r.recursion) {
        os << "recursion_d=" << format_real(r.recursion->d) << '\n';
        os << "c_for_d=" << format_real(r.recursion->c, 10) << '\n';
        os << "c_exact=" << format_real(r.recursion->c_exact, 15) << '\n';
        os << "recursion_verified=" << (r.recursion->closing_holds ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace racdraw
