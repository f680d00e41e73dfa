// racdraw: validate, planarize and audit right-angle-crossing drawings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "racdraw/racdraw.hpp"

using namespace racdraw;

namespace {

constexpr int kExitParse = 2;

Json violation_json(const Drawing& d, const Violation& v) {
    Json j{{"code", to_string(v.code)}};
    if (v.edge_a) j["edge_a"] = *v.edge_a;
    if (v.edge_b) j["edge_b"] = *v.edge_b;
    if (v.vertex) j["vertex"] = d.vertex(*v.vertex).name;
    if (v.where) j["at"] = point_json(*v.where);
    return j;
}

std::string violation_text(const Drawing& d, const Violation& v) {
    std::string s(to_string(v.code));
    if (v.edge_a) s += " e" + std::to_string(*v.edge_a);
    if (v.edge_b) s += " e" + std::to_string(*v.edge_b);
    if (v.vertex) s += " vertex " + d.vertex(*v.vertex).name;
    if (v.where) s += " at " + point_text(*v.where);
    return s;
}

int cmd_validate(const std::string& path, int k, bool json) {
    const Drawing d = load_drawing(path);
    const auto report = validate(d, k);
    if (json) {
        Json j{{"ok", report.ok}, {"class", k}, {"crossings", report.crossings.size()}};
        if (report.witnessed_class) j["witnessed_class"] = *report.witnessed_class;
        j["violations"] = Json::array();
        for (const auto& v : report.violations) j["violations"].push_back(violation_json(d, v));
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (report.ok ? "OK" : "FAIL") << " class=" << k << " n=" << d.vertex_count()
                  << " m=" << d.edge_count() << " crossings=" << report.crossings.size();
        if (report.witnessed_class) std::cout << " max_bends=" << *report.witnessed_class;
        std::cout << '\n';
        for (const auto& v : report.violations) std::cout << violation_text(d, v) << '\n';
    }
    return report.ok ? 0 : 1;
}

int cmd_planarize(const std::string& path, bool json) {
    const Drawing d = load_drawing(path);
    const auto report = validate(d, 3);
    if (!report.ok) {
        std::cerr << "invalid drawing: " << violation_text(d, report.violations.front()) << '\n';
        return 1;
    }
    const PlaneMultigraph pm = planarize(d);
    const ChargeLedger ledger = initial_charges(pm);
    if (json) {
        Json faces = Json::array();
        for (const auto& f : pm.faces()) {
            std::size_t convex = 0;
            for (const auto& b : f.bend_marks) convex += b.convex;
            faces.push_back({{"id", f.id},
                             {"size", f.size},
                             {"outer", f.is_outer},
                             {"charge", ledger.face_charge()[f.id].str()},
                             {"bends", f.bend_marks.size()},
                             {"convex_bends", convex}});
        }
        std::cout << Json{{"nodes", pm.node_count()},
                          {"crossings", pm.crossings().size()},
                          {"edges", pm.edge_count()},
                          {"faces", std::move(faces)},
                          {"components", pm.component_count()},
                          {"euler_defect", pm.euler_defect()},
                          {"total_charge", ledger.total().str()}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "nodes=" << pm.node_count() << " crossings=" << pm.crossings().size()
                  << " edges=" << pm.edge_count() << " faces=" << pm.face_count()
                  << " components=" << pm.component_count() << " euler_defect=" << pm.euler_defect()
                  << " total_charge=" << ledger.total().str() << '\n';
        for (const auto& f : pm.faces()) {
            std::size_t convex = 0;
            for (const auto& b : f.bend_marks) convex += b.convex;
            std::cout << "f" << f.id << " size=" << f.size << " charge=" << ledger.face_charge()[f.id].str()
                      << " bends=" << f.bend_marks.size() << " convex=" << convex << (f.is_outer ? " outer" : "")
                      << '\n';
        }
    }
    return 0;
}

int cmd_audit(const std::string& path, const std::string& mode, bool json) {
    const Drawing d = load_drawing(path);
    const AuditResult r = mode == "r0" ? audit_r0(d) : audit_r1(d);
    if (json) {
        Json transfers = Json::array();
        for (const auto& t : r.ledger.transfers())
            transfers.push_back({{"rule", to_string(t.rule)},
                                 {"source", (t.source.kind == ChargeSource::Kind::Node ? "v" : "f") +
                                                std::to_string(t.source.id)},
                                 {"target", "f" + std::to_string(t.target)},
                                 {"amount", t.amount.str()}});
        Json j{{"verdict", to_string(r.verdict)}, {"n", r.n},           {"m", r.m},
               {"bound", r.bound},                {"bound_satisfied", r.bound_satisfied},
               {"stripped_edges", r.stripped_edges}, {"transfers", std::move(transfers)},
               {"notes", r.notes}};
        if (!r.reason.empty()) j["reason"] = r.reason;
        if (r.witness_face) j["witness_face"] = *r.witness_face;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << evidence_log(r);
    }
    return exit_code(r.verdict);
}

int cmd_classify(const std::string& path, bool json) {
    const Drawing d = load_drawing(path);
    const auto report = validate(d, 2);
    if (!report.ok) {
        std::cerr << "invalid drawing at class 2: " << violation_text(d, report.violations.front()) << '\n';
        return 1;
    }
    const auto records = classify_crossings(d);
    const auto counts = count_by_type(records);
    const auto g = conflict_graph(d);
    std::optional<std::set<EdgeId>> drop;
    if (g.bipartite()) drop = destroy_type3(d);
    if (json) {
        Json list = Json::array();
        for (const auto& r : records)
            list.push_back({{"edge_a", r.edge_a},
                            {"seg_a", r.seg_a},
                            {"role_a", to_string(r.role_a)},
                            {"edge_b", r.edge_b},
                            {"seg_b", r.seg_b},
                            {"role_b", to_string(r.role_b)},
                            {"type", to_string(r.kind)},
                            {"at", point_json(r.point)}});
        Json j{{"cI", counts.type1}, {"cII", counts.type2}, {"cIII", counts.type3}, {"crossings", std::move(list)},
               {"conflict_bipartite", g.bipartite()}};
        if (drop) j["type3_deleted"] = Json(std::vector<EdgeId>(drop->begin(), drop->end()));
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& r : records)
            std::cout << "e" << r.edge_a << "[" << r.seg_a << "," << to_string(r.role_a) << "] x e" << r.edge_b
                      << "[" << r.seg_b << "," << to_string(r.role_b) << "] type " << to_string(r.kind) << " at "
                      << point_text(r.point) << '\n';
        std::cout << "cI=" << counts.type1 << " cII=" << counts.type2 << " cIII=" << counts.type3
                  << " conflict_bipartite=" << (g.bipartite() ? "true" : "false");
        if (drop) std::cout << " type3_deleted=" << drop->size();
        std::cout << '\n';
    }
    return g.bipartite() ? 0 : 1;
}

double parse_recursion(const std::string& spec) {
    const std::string body = spec.rfind("d=", 0) == 0 ? spec.substr(2) : spec;
    std::size_t used = 0;
    double d = 0;
    try {
        d = std::stod(body, &used);
    } catch (const std::exception&) {
        throw ParseError("bad --recursion value: " + spec);
    }
    if (used != body.size() || !(d > 0)) throw ParseError("bad --recursion value: " + spec);
    return d;
}

int cmd_bounds(const std::string& path, std::optional<long long> n, std::optional<long long> m,
               const std::string& recursion, bool json) {
    BoundsReport r;
    if (!path.empty()) {
        if (n || m) throw ParseError("give either a drawing or --n/--m, not both");
        const Drawing d = load_drawing(path);
        if (!validate(d, 2).ok) throw ParseError("bounds needs a drawing valid at class 2");
        r = bounds_for_drawing(d);
    } else {
        if (!n || !m) throw ParseError("bounds needs a drawing or both --n and --m");
        if (*n < 0 || *m < 0) throw ParseError("--n and --m must be non-negative");
        r = bounds_for_counts(static_cast<std::uint64_t>(*n), static_cast<std::uint64_t>(*m));
    }
    if (!recursion.empty()) r.recursion = recursion_constant(parse_recursion(recursion));
    if (json) {
        Json j{{"log", "natural"}, {"n", r.n}, {"m", r.m}};
        if (r.crossings) {
            j["cI"] = r.crossings->type1;
            j["cII"] = r.crossings->type2;
            j["cIII"] = r.crossings->type3;
            j["type3_deleted"] = r.type3_deleted;
            j["m_residual"] = r.m_residual;
        }
        j["cr_upper"] = r.cr_upper;
        if (r.cr_drawing) j["cr_drawing"] = *r.cr_drawing;
        j["bisection_upper"] = format_real(r.bisection_upper);
        if (r.recursion) {
            j["recursion_d"] = format_real(r.recursion->d);
            j["c_for_d"] = format_real(r.recursion->c, 10);
            j["c_exact"] = format_real(r.recursion->c_exact, 15);
            j["recursion_verified"] = r.recursion->closing_holds;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << format_bounds(r);
        if (r.recursion)
            for (const auto& line : r.recursion->lines) std::cout << line << '\n';
    }
    return 0;
}

int cmd_gen(const std::string& family, int rings, const std::string& side, std::uint64_t seed, int size,
            const std::string& out) {
    Drawing d;
    if (family == "hex") {
        HexLatticeParams p;
        p.rings = rings;
        p.side = parse_rational(side);
        d = gen_hex_lattice(p);
    } else if (family == "rac0") {
        d = gen_rac0_fixture(Rac0Kind::Random, seed, size);
    } else if (family == "rac1") {
        d = gen_rac1_fixture(seed);
    } else if (family == "rac2") {
        d = gen_rac2_fixture(seed, size);
    } else if (family == "plus") {
        d = fixtures::plus_sign();
    } else if (family == "triangle") {
        d = fixtures::plane_triangle();
    } else if (family == "k4") {
        d = fixtures::k4();
    } else if (family == "grid") {
        d = fixtures::grid_crossing();
    } else if (family == "lens-redrawable") {
        d = fixtures::lens_redrawable();
    } else if (family == "lens-concave") {
        d = fixtures::lens_concave();
    } else if (family == "middle-grid") {
        d = fixtures::middle_grid();
    } else {
        throw ParseError("unknown family " + family);
    }
    if (out.empty() || out == "-") {
        std::cout << serialize(d);
    } else {
        save_drawing(d, out);
    }
    return 0;
}

int cmd_export_svg(const std::string& path, const std::string& out, bool mark) {
    const Drawing d = load_drawing(path);
    std::vector<Crossing> marks;
    if (mark) {
        const auto report = validate(d, std::max<int>(3, static_cast<int>(d.max_bends())));
        marks = report.crossings;
    }
    const std::string svg = to_svg(d, marks);
    if (out.empty() || out == "-") {
        std::cout << svg;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << svg;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Right-angle-crossing drawing toolkit"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Machine-readable output");

    std::string path;
    int k = 3;
    auto* validate_cmd = app.add_subcommand("validate", "Check a drawing against class k");
    validate_cmd->add_option("path", path, "Drawing file")->required();
    validate_cmd->add_option("--class,-k", k, "Maximum bends per edge")->check(CLI::Range(0, 1000));

    auto* planarize_cmd = app.add_subcommand("planarize", "Show the planarization and initial charges");
    planarize_cmd->add_option("path", path, "Drawing file")->required();

    std::string mode = "r1";
    auto* audit_cmd = app.add_subcommand("audit", "Run a discharging audit");
    audit_cmd->add_option("path", path, "Drawing file")->required();
    audit_cmd->add_option("--mode", mode, "r0 or r1")->check(CLI::IsMember({"r0", "r1"}));

    auto* classify_cmd = app.add_subcommand("classify", "Classify crossings by segment roles");
    classify_cmd->add_option("path", path, "Drawing file")->required();

    std::optional<long long> n;
    std::optional<long long> m;
    std::string recursion;
    auto* bounds_cmd = app.add_subcommand("bounds", "Crossing and bisection bounds");
    bounds_cmd->add_option("path", path, "Drawing file");
    bounds_cmd->add_option("--n", n, "Vertex count");
    bounds_cmd->add_option("--m", m, "Edge count");
    bounds_cmd->add_option("--recursion", recursion, "Derive the recursion constant, e.g. d=1");

    std::string family;
    int rings = 1;
    std::string side = "1";
    std::uint64_t seed = 0;
    int size = 20;
    std::string out;
    auto* gen_cmd = app.add_subcommand("gen", "Emit a generated drawing");
    gen_cmd->add_option("family", family, "hex|rac0|rac1|rac2|plus|triangle|k4|grid|lens-redrawable|lens-concave|middle-grid")
        ->required();
    gen_cmd->add_option("--rings", rings, "Hexagonal rings")->check(CLI::Range(1, 1000));
    gen_cmd->add_option("--side", side, "Hexagon side length (integer or p/q)");
    gen_cmd->add_option("--seed", seed, "Random seed");
    gen_cmd->add_option("--size", size, "Vertices (rac0) or edges (rac2)")->check(CLI::Range(1, 100000));
    gen_cmd->add_option("-o,--out", out, "Output file (default stdout)");

    std::string svg_out;
    bool mark = false;
    auto* svg_cmd = app.add_subcommand("export-svg", "Render a drawing as SVG");
    svg_cmd->add_option("path", path, "Drawing file")->required();
    svg_cmd->add_option("out", svg_out, "Output file (default stdout)");
    svg_cmd->add_flag("--mark-crossings", mark, "Mark crossing points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*validate_cmd) return cmd_validate(path, k, json);
        if (*planarize_cmd) return cmd_planarize(path, json);
        if (*audit_cmd) return cmd_audit(path, mode, json);
        if (*classify_cmd) return cmd_classify(path, json);
        if (*bounds_cmd) return cmd_bounds(path, n, m, recursion, json);
        if (*gen_cmd) return cmd_gen(family, rings, side, seed, size, out);
        if (*svg_cmd) return cmd_export_svg(path, svg_out, mark);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const NotBipartite& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
