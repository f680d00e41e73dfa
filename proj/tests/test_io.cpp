#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace racdraw;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> fixture_files() {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(RACDRAW_DATA_DIR))
        if (entry.path().extension() == ".json") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(DrawingFile, RoundTripOnEveryFixture) {
    const auto files = fixture_files();
    ASSERT_GE(files.size(), 10u);
    for (const auto& f : files) {
        const Drawing d = load_drawing(f.string());
        const std::string text = serialize(d);
        EXPECT_EQ(parse_drawing(text), d) << f;
        EXPECT_EQ(serialize(parse_drawing(text)), text) << f;
    }
}

TEST(DrawingFile, GeneratedFilesAreCanonical) {
    EXPECT_EQ(serialize(load_drawing(std::string(RACDRAW_DATA_DIR) + "/hex1.json")), slurp(fs::path(RACDRAW_DATA_DIR) / "hex1.json"));
    EXPECT_EQ(load_drawing(std::string(RACDRAW_DATA_DIR) + "/hex1.json"), gen_hex_lattice({1, Scalar(1)}));
    EXPECT_EQ(load_drawing(std::string(RACDRAW_DATA_DIR) + "/k4.json"), fixtures::k4());
}

TEST(DrawingFile, QuadraticScalarsSurvive) {
    const Drawing d = load_drawing(std::string(RACDRAW_DATA_DIR) + "/plus-60.json");
    EXPECT_EQ(d.vertex(2).pos.y, Scalar(Rational(0), Rational(-1, 2)));
    EXPECT_NE(serialize(d).find("\"root3\": \"-1/2\""), std::string::npos);
}

TEST(DrawingFile, RejectsMalformedInput) {
    const char* bad[] = {
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"1/0","y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":0.5,"y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":1,"y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"1.5","y":"0"}],"edges":[]})",
        R"({"format":"racdraw/2","vertices":[],"edges":[]})",
        R"({"vertices":[],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"0","y":"0"},{"id":"a","x":"1","y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"0","y":"0"},{"id":"b","x":"0","y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"0","y":"0"}],"edges":[{"u":"a","v":"b"}]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"0","y":"0"},{"id":"b","x":"1","y":"0"}],"edges":[{"u":"a","v":"b","bends":[["1"]]}]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":{"rat":"1","root3":"1","x":"0"},"y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":{"rat":"1"},"y":"0"}],"edges":[]})",
        R"({"format":"racdraw/1","vertices":[{"id":"a","y":"0"}],"edges":[]})",
        R"([1, 2])",
        R"({"format":"racdraw/1","vertices":[)",
    };
    for (const char* text : bad) EXPECT_THROW(parse_drawing(text), ParseError) << text;
    EXPECT_THROW(load_drawing("/nonexistent/file.json"), ParseError);
}

TEST(DrawingFile, EdgesWithoutBendsFieldAreStraight) {
    const Drawing d = parse_drawing(
        R"({"format":"racdraw/1","vertices":[{"id":"a","x":"0","y":"0"},{"id":"b","x":"1","y":"2/4"}],"edges":[{"u":"a","v":"b"}]})");
    EXPECT_EQ(d.edge(0).bend_count(), 0u);
    EXPECT_EQ(d.vertex(1).pos.y, Scalar::frac(1, 2));
}

TEST(Svg, PlusSign) {
    const auto c = oracle::inspect_svg(to_svg(fixtures::plus_sign()));
    EXPECT_EQ(c.xmlns, "http://www.w3.org/2000/svg");
    EXPECT_EQ(c.polylines, 2u);
    EXPECT_EQ(c.circles, 4u);
    EXPECT_EQ(c.rects, 0u);
}

TEST(Svg, SingleHexagon) {
    const Drawing d = gen_hex_lattice({1, Scalar(1)});
    const auto c = oracle::inspect_svg(to_svg(d, validate(d, 1).crossings));
    EXPECT_EQ(c.polylines, 12u);
    EXPECT_EQ(c.bent, 6u);
    EXPECT_EQ(c.rects, 6u);
}

TEST(Svg, EmptyDrawing) {
    const auto svg = to_svg(Drawing{});
    const auto c = oracle::inspect_svg(svg);
    EXPECT_EQ(c.polylines, 0u);
    EXPECT_NE(svg.find("viewBox"), std::string::npos);
}

TEST(Svg, EveryFixtureIsWellFormed) {
    for (const auto& f : fixture_files()) {
        const Drawing d = load_drawing(f.string());
        EXPECT_NO_THROW(oracle::inspect_svg(to_svg(d))) << f;
        EXPECT_EQ(oracle::inspect_svg(to_svg(d)).polylines, d.edge_count());
    }
}
