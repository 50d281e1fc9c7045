#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eph/cli.hpp"
#include "eph/error.hpp"
#include "eph/render.hpp"
#include "eph/scene.hpp"

using namespace eph;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "eph_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

Scene parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scene(in);
}

std::string error_of(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

const std::string kScenes = EPH_SOURCE_DIR "/scenes/";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("scene parsing") {
        const Scene s = parse(
            "# two panels\n"
            "[panel]\n"
            "title = a\n"
            "geometry = parabolic\n"
            "flavor = 1\n"
            "geodesics = 0 0.5\n"
            "geodesics = -1\n"
            "orbit = 0 1 0.5 1 Nprime -2 2 50\n"
            "pair = 0 1 2 1\n"
            "triangle = 0 1 2 1 20 30 strip\n"
            "[panel]\n"
            "geometry = hyperbolic\n"
            "family = timelike\n"
            "viewport = -1 1 0 2\n"
            "size = 300 200\n");
        REQUIRE(s.panels.size() == 2);
        const Panel& a = s.panels[0];
        CHECK(a.title == "a");
        CHECK(a.flavor.value() == 1);
        CHECK(a.geodesics == std::vector<double>{0, 0.5, -1});
        REQUIRE(a.orbits.size() == 1);
        CHECK(a.orbits[0].subgroup == SubgroupKind::Nprime);
        CHECK(a.orbits[0].count == 50);
        CHECK(a.pairs.size() == 1);
        REQUIRE(a.triangles.size() == 1);
        CHECK(a.triangles[0].nx == 20);
        CHECK(a.triangles[0].ny == 30);
        CHECK_FALSE(a.triangles[0].whole_plane);
        const Panel& b = s.panels[1];
        CHECK(b.geometry == GeometryKind::Hyperbolic);
        CHECK(b.family == HyperbolicFamily::TimeLike);
        CHECK(b.viewport.umax == 1);
        CHECK(b.width == 300);
        CHECK(b.height == 200);
    }

    TEST_CASE("scene errors name the line") {
        CHECK(error_of("title = x\n").find("line 1") != std::string::npos);
        CHECK(error_of("[panel]\n\nflavor = 2\n").find("line 3") != std::string::npos);
        CHECK(error_of("[panel]\nviewport = 1 2 3\n").find("line 2") != std::string::npos);
        CHECK(error_of("[panel]\nbogus = 1\n").find("line 2") != std::string::npos);
        CHECK(error_of("[panel]\ngeometry = elliptic\npair = 0 1 2 1\n").find("line 1") != std::string::npos);
        CHECK(error_of("[panel]\ngeodesics = 0 x\n").find("line 2") != std::string::npos);
    }

    TEST_CASE("an empty panel still draws axes") {
        const Scene s = parse("[panel]\n");
        const RenderedPanel r = render_panel(s.panels[0]);
        CHECK(r.svg.rfind("<svg", 0) == 0);
        CHECK(r.svg.find("</svg>") != std::string::npos);
        CHECK(r.svg.find("<line") != std::string::npos);
        CHECK(r.curves.empty());
        CHECK(curves_csv(r.curves) == "curve_id,T,u,v\n");
    }

    TEST_CASE("rendering is deterministic across thread counts") {
        const Scene s = parse_scene_file(kScenes + "fig2.scene");
        const RenderedPanel a = render_panel(s.panels[0], 1);
        const RenderedPanel b = render_panel(s.panels[0], 4);
        CHECK(a.svg == b.svg);
        CHECK(curves_csv(a.curves) == curves_csv(b.curves));
        CHECK(raster_csv(a.rasters) == raster_csv(b.rasters));
        CHECK(a.svg.find("#d62728") != std::string::npos);
    }

    TEST_CASE("exit codes") {
        Run r = run({"distance", "--geometry", "parabolic", "--flavor", "0", "--z", "0,1", "--w", "2,1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("value=2 ") == 0);
        r = run({"distance", "--geometry", "parabolic", "--flavor", "0", "--z", "0,1", "--w", "0,2"});
        CHECK(r.code == 0);
        CHECK(r.out.find("degenerate=vertical") != std::string::npos);
        CHECK(run({"distance", "--geometry", "parabolic", "--flavor", "0", "--z", "0,-1", "--w", "0,2"}).code == 3);
        CHECK(run({"distance", "--geometry", "parabolic", "--flavor", "0", "--z", "0", "--w", "0,2"}).code == 2);
        CHECK(run({"distance", "--geometry", "parabolic", "--flavor", "5", "--z", "0,1", "--w", "0,2"}).code == 2);
        CHECK(run({"verify", "--suite", "nope"}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"--help"}).code == 0);
        r = run({"verify", "--suite", "invariance", "--seed", "7"});
        CHECK(r.code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(run({"render", kScenes + "missing.scene", "--out", scratch("x.svg").string()}).code == 2);
    }

    TEST_CASE("geodesic through a pair") {
        const Run r =
            run({"geodesic", "--geometry", "parabolic", "--flavor", "0", "--through", "0,1", "--through", "2,1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("connecting t=0 ") != std::string::npos);
        CHECK(r.out.find("outer t=1 ") != std::string::npos);
    }

    TEST_CASE("raster CSV round-trips through classify") {
        const fs::path svg = scratch("fig2.svg"), csv = scratch("fig2_raster.csv"), back = scratch("fig2_back.csv");
        const Run r = run({"render", kScenes + "fig2.scene", "--out", svg.string(), "--raster-csv", csv.string(),
                           "--threads", "2"});
        REQUIRE(r.code == 0);
        const Scene s = parse_scene_file(kScenes + "fig2.scene");
        const RenderedPanel panel = render_panel(s.panels[0]);
        REQUIRE(panel.rasters.size() == 1);
        char band[32];
        std::snprintf(band, sizeof band, "%.17g", panel.rasters[0].band);
        const Run c = run({"classify", "--flavor", "0", "--w1", "0,1", "--w2", "2,1", "--points-csv", csv.string(),
                           "--plane", "--band", band, "--out", back.string()});
        REQUIRE(c.code == 0);

        std::ifstream a(csv), b(back);
        std::string la, lb;
        std::getline(a, la);
        std::getline(b, lb);
        CHECK(la == "i,j,u,v,class");
        CHECK(lb == "u,v,class");
        std::size_t rows = 0, reverse = 0;
        while (std::getline(a, la)) {
            REQUIRE(std::getline(b, lb));
            const std::string ca = la.substr(la.rfind(',') + 1), cb = lb.substr(lb.rfind(',') + 1);
            CHECK(ca == cb);
            reverse += ca == "reverse";
            ++rows;
        }
        CHECK_FALSE(std::getline(b, lb));
        CHECK(rows == 200 * 200);
        CHECK(reverse > 0);
    }

    TEST_CASE("several panels get numbered outputs") {
        const fs::path scene = scratch("two.scene");
        std::ofstream(scene) << "[panel]\ngeodesics = 0\n[panel]\ngeometry = elliptic\ngeodesics = 0.3\n";
        const fs::path svg = scratch("two.svg"), csv = scratch("two.csv");
        fs::remove(scratch("two_1.svg"));
        fs::remove(scratch("two_2.svg"));
        const Run r = run({"render", scene.string(), "--out", svg.string(), "--csv", csv.string()});
        CHECK(r.code == 0);
        CHECK(fs::exists(scratch("two_1.svg")));
        CHECK(fs::exists(scratch("two_2.svg")));
        CHECK(fs::exists(scratch("two_2.csv")));
        CHECK(slurp(scratch("two_1.csv")).find("geodesic-0") != std::string::npos);
    }
}
