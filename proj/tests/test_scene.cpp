#include "gluing/errors.hpp"
#include "gluing/scene.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace gluing;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("gluing_test_scene_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

json flat_sheet()
{
    return {{"name", "sheet"},
            {"interval", {0, 1}},
            {"samples", 5},
            {"surfaces", {{{"name", "f1"}, {"expr", "[u, v, 0]"}}}}};
}

int run_config(const json& cfg, const std::filesystem::path& dir, std::string& err)
{
    const auto path = dir / "scene.json";
    std::ofstream(path) << cfg.dump();
    std::ostringstream es;
    RunOptions opt;
    opt.out_dir = dir;
    const int code = run(path, opt, es);
    err = es.str();
    return code;
}

} // namespace

TEST(Config, GalleryParses)
{
    for (int n = 1; n <= 6; ++n) {
        const SceneConfig c = fixtures::gallery(n);
        EXPECT_EQ(c.surfaces.size(), 2u);
        EXPECT_EQ(c.samples, 201);
        EXPECT_FALSE(c.outputs.empty());
    }
}

TEST(Config, MissingFieldNamesLocation)
{
    json j = flat_sheet();
    j["surfaces"][0].erase("expr");
    try {
        (void)parse_config(j);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("surfaces[0]"), std::string::npos);
    }
}

TEST(Config, Invariants)
{
    json j = flat_sheet();
    j["samples"] = 2;
    EXPECT_THROW((void)parse_config(j), ConfigError);
    j = flat_sheet();
    j["interval"] = {1, 1};
    EXPECT_THROW((void)parse_config(j), ConfigError);
    j = flat_sheet();
    j["surfaces"][0]["orientation"] = 0;
    EXPECT_THROW((void)parse_config(j), ConfigError);
    j = flat_sheet();
    j["surfaces"] = json::array();
    EXPECT_THROW((void)parse_config(j), ConfigError);
    j = flat_sheet();
    j["outputs"] = {{{"kind", "mesh"}, {"path", "m.obj"}, {"surface", "f1"}, {"resolution", {1, 2}}}};
    EXPECT_THROW((void)parse_config(j), ConfigError);
}

TEST(Config, ExpressionErrorKeepsOffset)
{
    json j = flat_sheet();
    j["surfaces"][0]["expr"] = "[u, , u]";
    try {
        (void)parse_config(j);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
}

TEST(Run, MalformedExpressionExitsOne)
{
    const auto dir = scratch("malformed");
    json j = flat_sheet();
    j["surfaces"][0]["expr"] = "[u, , u]";
    std::string err;
    EXPECT_EQ(run_config(j, dir, err), 1);
    EXPECT_NE(err.find("ParseError"), std::string::npos);
    EXPECT_NE(err.find("offset 4"), std::string::npos);
    EXPECT_NE(err.find("surfaces[0].expr"), std::string::npos);
}

TEST(Run, MissingFileExitsOne)
{
    std::ostringstream es;
    EXPECT_EQ(run("/nonexistent/scene.json", {}, es), 1);
    EXPECT_NE(es.str().find("IoError"), std::string::npos);
}

TEST(Run, EmptyIntervalExitsOne)
{
    const auto dir = scratch("empty");
    json j = flat_sheet();
    j["interval"] = {2, 1};
    std::string err;
    EXPECT_EQ(run_config(j, dir, err), 1);
    EXPECT_NE(err.find("ConfigError"), std::string::npos);
}

TEST(Run, UnresolvedLabelExitsTwo)
{
    const auto dir = scratch("unresolved");
    const json j = {{"name", "flat_cusp"},
                    {"interval", {-1, 1}},
                    {"samples", 21},
                    {"singular_params", {{{"t0", 0}, {"multiplicity", 3}}}},
                    {"surfaces",
                     {{{"name", "f1"},
                       {"expr", "[u^3*sin(u) + 3*u^2*cos(u) - 6*u*sin(u) - 6*cos(u),"
                                " -u^3*cos(u) + 3*u^2*sin(u) + 6*u*cos(u) - 6*sin(u), v]"},
                       {"frame", {{"e", "[cos(u), sin(u), 0]"}, {"nu", "[-sin(u), cos(u), 0]"}, {"l", "u^3"}}}}}},
                    {"outputs", {{{"kind", "report"}, {"path", "report.json"}}}}};
    std::string err;
    EXPECT_EQ(run_config(j, dir, err), 2) << err;
    const json report = json::parse(slurp(dir / "report.json"));
    bool found = false;
    for (const auto& p : report["points"]) found = found || p["label"] == "unresolved";
    EXPECT_TRUE(found);
}

TEST(Report, CylinderAndConeWithFrameNote)
{
    const Analysis an = analyze(Scene(fixtures::gallery(2)));
    const auto& labels = an.report["labels"];
    EXPECT_NE(std::find(labels.begin(), labels.end(), "S_nu1-cylindrical"), labels.end());
    EXPECT_NE(std::find(labels.begin(), labels.end(), "S_nu2-conical"), labels.end());
    EXPECT_EQ(an.report["frames"][0]["source"], "extracted");
    bool noted = false;
    for (const auto& n : an.report["notes"]) noted = noted || n.get<std::string>().find("|nu| = 1") != std::string::npos;
    EXPECT_TRUE(noted);
    EXPECT_NEAR(an.report["surfaces"]["S_nu2"]["beta_max"].get<double>(), 1.0 / (2.0 * std::sqrt(2.0)), 1e-9);
}

TEST(Report, SwallowtailedAtOrigin)
{
    const Analysis an = analyze(Scene(fixtures::gallery(6)));
    const auto& labels = an.report["labels"];
    EXPECT_NE(std::find(labels.begin(), labels.end(), "S_nu2-swallowtailed at (0, 0)"), labels.end());
    EXPECT_FALSE(an.unresolved);
}

TEST(Report, ResidualsCarryTolerances)
{
    const Analysis an = analyze(Scene(fixtures::gallery(4)));
    std::function<void(const json&)> walk = [&](const json& j) {
        if (j.contains("max")) {
            EXPECT_TRUE(j.contains("tol"));
            EXPECT_TRUE(j["pass"].get<bool>()) << j.dump();
            return;
        }
        for (const auto& [k, v] : j.items()) walk(v);
    };
    walk(an.report["residuals"]);
    bool noted = false;
    for (const auto& n : an.report["notes"]) noted = noted || n.get<std::string>().find("3*pi/2") != std::string::npos;
    EXPECT_TRUE(noted);
}

TEST(Csv, HelixCurvaturesConstant)
{
    const Scene scene(fixtures::gallery(1));
    std::ostringstream os;
    write_invariants_csv(scene, 2, os);
    const auto rows = read_csv(os.str());
    ASSERT_EQ(rows.size(), 202u);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "t,l,kappa1,kappa2,kappa3,beta_nu,rho_nu,beta_b,rho_b,s_nu,s_b,theta");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 12u);
        EXPECT_NEAR(std::stod(rows[i][2]), -1 / std::sqrt(2.0), 1e-9);
        EXPECT_NEAR(std::stod(rows[i][3]), 0.0, 1e-9);
        EXPECT_NEAR(std::stod(rows[i][4]), 1 / std::sqrt(2.0), 1e-9);
        EXPECT_TRUE(rows[i][9].empty());   // cylinder: no striction
        EXPECT_FALSE(rows[i][11].empty());
    }
}

TEST(Csv, SphereBandCylinderBeta)
{
    const Scene scene(fixtures::gallery(3));
    std::ostringstream os;
    write_invariants_csv(scene, 1, os);
    const auto rows = read_csv(os.str());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LE(std::fabs(std::stod(rows[i][5])), 1e-9);
        EXPECT_TRUE(rows[i][7].empty());   // (kappa2, kappa3) = 0: S_b undefined
    }
}

TEST(Mesh, FlatSheetTwoTriangles)
{
    json j = flat_sheet();
    const Scene scene(parse_config(j));
    OutputSpec out;
    out.kind = "mesh";
    out.surface = "f1";
    out.nt = out.na = 2;
    std::ostringstream os;
    write_mesh_obj(scene, out, os);
    std::istringstream is(os.str());
    std::string line;
    int v = 0, vn = 0, f = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("vn ", 0) == 0) {
            ++vn;
            EXPECT_EQ(line, "vn 0 0 1");
        }
        if (line.rfind("f ", 0) == 0) ++f;
    }
    EXPECT_EQ(v, 4);
    EXPECT_EQ(vn, 4);
    EXPECT_EQ(f, 2);
}

TEST(Mesh, UndefinedSurfaceRejected)
{
    const Scene scene(parse_config(flat_sheet()));
    OutputSpec out;
    out.kind = "mesh";
    out.surface = "S_nu";
    std::ostringstream os;
    EXPECT_THROW(write_mesh_obj(scene, out, os), ConfigError);
}

TEST(Mesh, ConeApexRow)
{
    const Scene scene(fixtures::gallery(4));
    OutputSpec out;
    out.kind = "mesh";
    out.surface = "S_nu2";
    out.a_lo = -1.0;
    out.a_hi = 1.0;
    out.nt = 5;
    out.na = 3;
    std::ostringstream os;
    write_mesh_obj(scene, out, os);
    std::istringstream is(os.str());
    std::string line;
    int index = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) != 0) continue;
        if (index++ % 3 != 0) continue;   // a = -1 column of each t row
        double x, y, z;
        std::sscanf(line.c_str(), "v %lf %lf %lf", &x, &y, &z);
        EXPECT_NEAR(std::fabs(x) + std::fabs(y) + std::fabs(z), 0.0, 1e-12) << line;
    }
    EXPECT_EQ(index, 15);
}

TEST(Mesh, CuspidalEdgeOnBaseCurve)
{
    const Scene scene(fixtures::gallery(5));
    OutputSpec out;
    out.kind = "mesh";
    out.surface = "S_nu2";
    out.t_range = Interval{-0.5, 0.5};
    out.nt = 3;
    out.na = 3;
    std::ostringstream os;
    write_mesh_obj(scene, out, os);
    // middle row is t = 0, middle column a = 0: the cusp point (0, 0, 0)
    std::istringstream is(os.str());
    std::string line;
    int index = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) != 0) continue;
        if (index++ == 4) EXPECT_EQ(line, "v 0 0 0");
    }
}

TEST(Run, GalleryIsDeterministic)
{
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        std::ostringstream es;
        RunOptions opt;
        opt.out_dir = dir;
        EXPECT_EQ(run(std::string(GALLERY_DIR) + "/example5.json", opt, es), 0) << es.str();
    }
    int files = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const auto other = b / std::filesystem::relative(entry.path(), a);
        EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path();
    }
    EXPECT_GE(files, 5);
}
