#include "fixtures.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fx {

std::string fixture_path(const std::string& name) { return std::string(BRICKWORK_FIXTURES) + "/" + name; }

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Fan load_fan(const std::string& name) { return parse_fan(read_text(fixture_path(name))); }
Theta load_theta(const std::string& name) { return parse_theta(read_text(fixture_path(name))); }
GroupType load_group(const std::string& name) { return parse_group(read_text(fixture_path(name))); }

Cone cone_of(const GroupType& G, const std::vector<Vec3>& nums) {
    std::vector<LatticePoint> rays;
    for (auto& n : nums) rays.push_back(G.point(n));
    return make_cone(G, rays);
}

Vec3 v39(Int i) { return {mod(i, 39), mod(5 * i, 39), mod(11 * i, 39)}; }

namespace {
// y^b z^c for b, c in ranges
void row(std::vector<Monomial>& out, Int ypow, Int zlo, Int zhi) {
    for (Int c = zlo; c <= zhi; ++c) out.push_back(mono(0, ypow, c));
}
void zrow(std::vector<Monomial>& out, Int zpow, Int ylo, Int yhi) {
    for (Int b = ylo; b <= yhi; ++b) out.push_back(mono(0, b, zpow));
}
}  // namespace

std::vector<Monomial> gamma1_printed() {
    std::vector<Monomial> g;
    zrow(g, 2, -2, 3);
    zrow(g, 1, -1, 5);
    zrow(g, 0, 0, 6);
    return g;
}

std::vector<Monomial> gamma2_printed() {
    std::vector<Monomial> g;
    row(g, 3, -2, 2);
    row(g, 2, -1, 3);
    row(g, 1, 0, 4);
    row(g, 0, 0, 4);
    return g;
}

std::vector<Monomial> set_A_printed() {
    std::vector<Monomial> g;
    row(g, 3, -2, 2);
    row(g, 2, -1, 3);
    return g;
}

std::vector<Monomial> set_B_printed() {
    std::vector<Monomial> g;
    row(g, 3, 0, 2);
    row(g, 2, 0, 3);
    row(g, 1, 0, 4);
    row(g, 0, 0, 4);
    return g;
}

std::vector<Rational> example_theta_values(Int m) {
    std::vector<Rational> v(20);
    for (Int i = 0; i < 20; ++i) {
        if (i == 0)
            v[i] = -3 - m;
        else if (i <= 3)
            v[i] = -m;
        else if (i == 4)
            v[i] = 0;
        else if (i == 5 || i == 6)
            v[i] = 1;
        else if (i == 7)
            v[i] = 1 - m;
        else if (i >= 15)
            v[i] = m;
        else
            v[i] = 0;
    }
    return v;
}

std::vector<GroupType> fixture_groups() {
    std::vector<GroupType> out;
    for (auto s : {"1/2(1,1,1)", "1/3(1,1,1)", "1/4(1,3,0)", "1/5(1,1,3)", "1/7(1,2,4)", "1/9(1,2,6)",
                   "1/11(1,3,7)", "1/12(1,2,3)", "1/13(1,3,9)", "1/14(1,3,10)", "1/20(1,3,4)",
                   "1/39(1,5,11)"})
        out.push_back(GroupType::parse(s));
    return out;
}

std::vector<LatticePoint> interior_centers(const GroupType& G) {
    std::vector<LatticePoint> out;
    for (Int t = 1; t < G.order(); ++t) {
        if (std::gcd(t, G.order()) != 1) continue;
        auto p = G.class_point(t);
        if (p.num[0] > 0 && p.num[1] > 0 && p.num[2] > 0 && G.is_primitive(p)) out.push_back(p);
    }
    return out;
}

std::vector<std::pair<GroupType, Cone>> fixture_cones(Int rmax) {
    std::vector<std::pair<GroupType, Cone>> out;
    for (auto name : {"g20_star.fan.json", "g20_model.fan.json", "model_y.fan.json", "model_z.fan.json"}) {
        auto f = load_fan(name);
        if (f.group.order() > rmax) continue;
        for (auto& c : f.all_cones())
            if (c.simplicial()) out.emplace_back(f.group, c);
    }
    for (auto& G : fixture_groups()) {
        if (G.order() > rmax) continue;
        out.emplace_back(G, positive_octant(G));
        for (auto& p : interior_centers(G))
            for (auto& c : star_subdivide(G, positive_octant(G), p).all_cones()) out.emplace_back(G, c);
    }
    return out;
}

const std::vector<Lifted>& lifted_fixture_bricks() {
    static std::vector<Lifted> out = [] {
        std::vector<Lifted> v;
        std::vector<std::pair<std::string, Vec3>> cases = {
            {"1/20(1,3,4)", {1, 3, 4}}, {"1/39(1,5,11)", {4, 20, 5}}, {"1/39(1,5,11)", {1, 5, 11}},
            {"1/7(1,2,4)", {1, 2, 4}},  {"1/13(1,3,9)", {1, 3, 9}},  {"1/11(1,3,7)", {1, 3, 7}}};
        for (auto& [g, c] : cases) {
            auto G = GroupType::parse(g);
            for (int k = 0; k < 3; ++k) {
                auto ctx = RoundDownContext::make(G, G.point(c), k);
                for (auto& e : ghilb(ctx.subgroup()).entries) v.push_back({ctx, e.brick, lift_brick(ctx, e.brick)});
            }
        }
        return v;
    }();
    return out;
}

std::vector<GBrick> margin_bricks() {
    std::vector<GBrick> bricks;
    for (auto& G : fixture_groups())
        if (G.order() <= 14)
            for (auto& e : ghilb(G).entries) bricks.push_back(e.brick);
    for (auto [g, c] : std::vector<std::pair<const char*, Vec3>>{{"1/12(1,2,3)", {1, 2, 3}}, {"1/13(1,3,9)", {1, 3, 9}}}) {
        auto G = GroupType::parse(g);
        for (auto& ctx : chart_contexts(G, G.point(c)))
            for (auto& e : ghilb(ctx.subgroup()).entries) bricks.push_back(lift_brick(ctx, e.brick));
    }
    return bricks;
}

}  // namespace fx
