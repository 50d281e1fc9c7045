#include "eph/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "eph/error.hpp"

namespace eph {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) {
        out.push_back(w);
    }
    return out;
}

struct LineContext {
    int line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::InvalidArgument, "scene line " + std::to_string(line) + ": " + msg);
    }

    double number(const std::string& w) const {
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), x);
        if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(x)) {
            fail("not a number: '" + w + "'");
        }
        return x;
    }

    std::size_t count(const std::string& w) const {
        const double x = number(w);
        if (x < 1 || x != std::floor(x) || x > 1e6) {
            fail("not a positive count: '" + w + "'");
        }
        return static_cast<std::size_t>(x);
    }

    std::vector<double> numbers(const std::vector<std::string>& ws, std::size_t from, std::size_t n) const {
        std::vector<double> out;
        for (std::size_t i = from; i < from + n; ++i) {
            out.push_back(number(ws.at(i)));
        }
        return out;
    }

    void arity(const std::vector<std::string>& ws, std::size_t lo, std::size_t hi) const {
        if (ws.size() < lo || ws.size() > hi) {
            fail("expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                 " values, got " + std::to_string(ws.size()));
        }
    }
};

SubgroupKind parse_subgroup(const LineContext& ctx, const std::string& w) {
    if (w == "K") return SubgroupKind::K;
    if (w == "N'" || w == "Nprime") return SubgroupKind::Nprime;
    if (w == "A'" || w == "Aprime") return SubgroupKind::Aprime;
    ctx.fail("unknown subgroup '" + w + "'");
}

void set_key(Panel& p, const LineContext& ctx, const std::string& key, const std::string& value) {
    const auto ws = words(value);
    if (key == "title") {
        p.title = value;
    } else if (key == "geometry") {
        ctx.arity(ws, 1, 1);
        if (ws[0] == "elliptic") p.geometry = GeometryKind::Elliptic;
        else if (ws[0] == "parabolic") p.geometry = GeometryKind::Parabolic;
        else if (ws[0] == "hyperbolic") p.geometry = GeometryKind::Hyperbolic;
        else ctx.fail("unknown geometry '" + ws[0] + "'");
    } else if (key == "flavor") {
        ctx.arity(ws, 1, 1);
        const double f = ctx.number(ws[0]);
        if (f != -1 && f != 0 && f != 1) {
            ctx.fail("flavor must be -1, 0 or 1");
        }
        p.flavor = ParabolicFlavor(static_cast<int>(f));
    } else if (key == "family") {
        ctx.arity(ws, 1, 1);
        if (ws[0] == "spacelike") p.family = HyperbolicFamily::SpaceLike;
        else if (ws[0] == "timelike") p.family = HyperbolicFamily::TimeLike;
        else if (ws[0] == "both") p.family = HyperbolicFamily::Both;
        else ctx.fail("unknown family '" + ws[0] + "'");
    } else if (key == "viewport") {
        ctx.arity(ws, 4, 4);
        const auto x = ctx.numbers(ws, 0, 4);
        if (!(x[1] > x[0]) || !(x[3] > x[2]) || x[2] < 0) {
            ctx.fail("viewport needs umin < umax and 0 <= vmin < vmax");
        }
        p.viewport = {x[0], x[1], x[2], x[3]};
    } else if (key == "size") {
        ctx.arity(ws, 2, 2);
        p.width = static_cast<int>(ctx.count(ws[0]));
        p.height = static_cast<int>(ctx.count(ws[1]));
    } else if (key == "geodesics") {
        ctx.arity(ws, 1, 1000);
        const auto x = ctx.numbers(ws, 0, ws.size());
        p.geodesics.insert(p.geodesics.end(), x.begin(), x.end());
    } else if (key == "orbit") {
        // cu cv pu pv [subgroup [from to count]]
        ctx.arity(ws, 4, 8);
        if (ws.size() == 6 || ws.size() == 7) {
            ctx.fail("orbit range needs from, to and count");
        }
        const auto x = ctx.numbers(ws, 0, 4);
        OrbitObject o{{x[0], x[1]}, {x[2], x[3]}, std::nullopt, std::nullopt, std::nullopt, 0};
        if (x[1] <= 0 || x[3] <= 0) {
            ctx.fail("orbit points must lie in the upper half-plane");
        }
        if (ws.size() >= 5) o.subgroup = parse_subgroup(ctx, ws[4]);
        if (ws.size() == 8) {
            o.from = ctx.number(ws[5]);
            o.to = ctx.number(ws[6]);
            o.count = ctx.count(ws[7]);
        }
        p.orbits.push_back(o);
    } else if (key == "pair") {
        ctx.arity(ws, 4, 4);
        const auto x = ctx.numbers(ws, 0, 4);
        p.pairs.push_back({{x[0], x[1]}, {x[2], x[3]}});
    } else if (key == "triangle") {
        // u1 v1 u2 v2 [nx ny [strip|plane]]
        ctx.arity(ws, 4, 7);
        if (ws.size() == 5) {
            ctx.fail("triangle resolution needs nx and ny");
        }
        const auto x = ctx.numbers(ws, 0, 4);
        TriangleObject t{{x[0], x[1]}, {x[2], x[3]}};
        if (ws.size() >= 6) {
            t.nx = ctx.count(ws[4]);
            t.ny = ctx.count(ws[5]);
        }
        if (ws.size() == 7) {
            if (ws[6] == "strip") t.whole_plane = false;
            else if (ws[6] == "plane") t.whole_plane = true;
            else ctx.fail("triangle mode must be strip or plane");
        }
        p.triangles.push_back(t);
    } else {
        ctx.fail("unknown key '" + key + "'");
    }
}

void check_panel(const Panel& p, const LineContext& ctx) {
    const bool parabolic = p.geometry == GeometryKind::Parabolic;
    if ((!p.pairs.empty() || !p.triangles.empty()) && !parabolic) {
        ctx.fail("pair and triangle objects need a parabolic panel");
    }
    for (const auto& t : p.triangles) {
        if (!(t.w1.u < t.w2.u) || t.w1.v <= 0 || t.w2.v <= 0) {
            ctx.fail("triangle needs Re w1 < Re w2 in the upper half-plane");
        }
    }
    for (const auto& q : p.pairs) {
        if (q.w1.v <= 0 || q.w2.v <= 0) {
            ctx.fail("pair points must lie in the upper half-plane");
        }
    }
}

}  // namespace

Scene parse_scene(std::istream& in) {
    Scene scene;
    std::string raw;
    int line = 0, panel_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const LineContext ctx{line};
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) {
            continue;
        }
        if (s.front() == '[') {
            if (s != "[panel]") {
                ctx.fail("unknown section " + s);
            }
            if (!scene.panels.empty()) {
                check_panel(scene.panels.back(), LineContext{panel_line});
            }
            scene.panels.emplace_back();
            panel_line = line;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            ctx.fail("expected key = value");
        }
        if (scene.panels.empty()) {
            ctx.fail("key outside a [panel] section");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) {
            ctx.fail("empty key or value");
        }
        set_key(scene.panels.back(), ctx, key, value);
    }
    if (scene.panels.empty()) {
        throw Error(ErrorCode::InvalidArgument, "scene has no [panel] section");
    }
    check_panel(scene.panels.back(), LineContext{panel_line});
    return scene;
}

Scene parse_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot read scene file " + path);
    }
    return parse_scene(in);
}

}  // namespace eph
