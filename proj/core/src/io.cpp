#include "brickwork/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace brickwork {

using Json = nlohmann::json;

namespace {

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset is 1-based; turn it into line and column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto p = msg.find("syntax error");
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col),
                         p == std::string::npos ? msg : msg.substr(p));
    }
}

struct Reader {
    const Json& j;
    std::string path;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path.empty() ? "/" : path, msg); }

    Reader at(const std::string& key) const {
        if (!j.is_object()) fail("expected an object");
        auto it = j.find(key);
        if (it == j.end()) fail("missing field \"" + key + "\"");
        return {*it, path + "/" + key};
    }
    bool has(const std::string& key) const { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }
    Reader at(std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }

    void only(std::initializer_list<const char*> keys) const {
        if (!j.is_object()) fail("expected an object");
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!ok.count(it.key())) throw ParseError(path + "/" + it.key(), "unknown field");
    }
    std::size_t size() const {
        if (!j.is_array()) fail("expected an array");
        return j.size();
    }
    Int integer() const {
        if (!j.is_number_integer()) fail("expected an integer");
        return j.get<Int>();
    }
    bool boolean() const {
        if (!j.is_boolean()) fail("expected a boolean");
        return j.get<bool>();
    }
    std::string str() const {
        if (!j.is_string()) fail("expected a string");
        return j.get<std::string>();
    }
    Rational rational() const {
        try {
            return parse_rational(str());
        } catch (const ValidationError& e) {
            fail(e.what());
        }
    }
    Vec3 triple() const {
        if (size() != 3) fail("expected three integers");
        return {at(0).integer(), at(1).integer(), at(2).integer()};
    }
    std::vector<Int> ints() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).integer());
        return out;
    }
    std::vector<Rational> rationals() const {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).rational());
        return out;
    }
};

Reader document(const Json& j, const std::string& kind) {
    Reader r{j, ""};
    auto k = r.at("kind").str();
    if (k != kind) r.at("kind").fail("expected kind \"" + kind + "\", got \"" + k + "\"");
    if (r.has("version") && r.at("version").str() != kFormatVersion)
        r.at("version").fail("unsupported version \"" + r.at("version").str() + "\"");
    return r;
}

Json head(const std::string& kind) { return Json{{"kind", kind}, {"version", kFormatVersion}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json rat(const Rational& q) { return to_string(q); }

Json triple(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json group_json(const GroupType& G) { return {{"r", G.order()}, {"weights", triple(G.weights())}}; }

GroupType read_group(const Reader& r) {
    r.only({"kind", "version", "r", "weights"});
    return GroupType::make(r.at("r").integer(), r.at("weights").triple());
}

Json rays_json(const std::vector<LatticePoint>& rays) {
    Json a = Json::array();
    for (auto& p : rays) a.push_back(triple(p.num));
    return a;
}

LatticePoint read_point(const GroupType& G, const Reader& r) { return G.point(r.triple()); }

Json fan_body(const Fan& fan) {
    Fan f = fan.canonical();
    Json cones = Json::array();
    for (auto& c : f.cones) cones.push_back(c);
    return {{"group", group_json(f.group)}, {"rays", rays_json(f.rays)}, {"cones", cones}};
}

Fan read_fan(const Reader& r) {
    GroupType G = read_group(r.at("group"));
    auto rays = r.at("rays");
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < rays.size(); ++i) pts.push_back(read_point(G, rays.at(i)));
    auto cones = r.at("cones");
    std::vector<Cone> cs;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        auto idx = cones.at(i).ints();
        std::vector<LatticePoint> rs;
        for (Int x : idx) {
            if (x < 0 || x >= static_cast<Int>(pts.size())) cones.at(i).fail("ray index out of range");
            rs.push_back(pts[x]);
        }
        cs.push_back(make_cone(G, rs));
    }
    Fan f = Fan::from_cones(G, cs);
    if (f.rays.size() != pts.size()) rays.fail("rays not used by any cone or repeated");
    return f;
}

Json monomials_json(const GBrick& B) {
    Json a = Json::array();
    for (auto& m : B.monomials()) a.push_back(triple(m.e));
    return a;
}

GBrick read_brick(const GroupType& G, const Reader& r) {
    std::vector<Monomial> mons;
    for (std::size_t i = 0; i < r.size(); ++i) mons.push_back({r.at(i).triple()});
    return make_brick(G, mons);
}

Json theta_json(const Theta& t) {
    Json a = Json::array();
    for (auto& q : t.values()) a.push_back(rat(q));
    return a;
}

Json margin_json(const StabilityMargin& mg) {
    Json j{{"vacuous", mg.vacuous}, {"value", rat(mg.value)}, {"witness", mg.witness}};
    if (mg.symbolic) j["symbolic"] = {{"const", rat(mg.symbolic->constant)}, {"slope", rat(mg.symbolic->slope)}};
    return j;
}

StabilityMargin read_margin(const Reader& r) {
    r.only({"vacuous", "value", "witness", "symbolic"});
    StabilityMargin mg;
    mg.vacuous = r.at("vacuous").boolean();
    mg.value = r.at("value").rational();
    for (Int w : r.at("witness").ints()) mg.witness.push_back(static_cast<int>(w));
    if (r.has("symbolic")) {
        auto s = r.at("symbolic");
        s.only({"const", "slope"});
        mg.symbolic = AffineValue{s.at("const").rational(), s.at("slope").rational()};
    }
    return mg;
}

Json tag_json(const FamilyTag& t) {
    return {{"variant", to_string(t.kind)},
            {"a", t.a},
            {"b", t.b},
            {"c", t.c},
            {"k", t.k},
            {"r", t.r},
            {"t", t.t},
            {"center", triple(t.center.num)},
            {"slots", Json::array({t.slots[0] + 1, t.slots[1] + 1, t.slots[2] + 1})},
            {"catalog_supported", t.catalog_supported},
            {"note", t.note}};
}

FamilyKind read_kind(const Reader& r) {
    auto s = r.str();
    for (auto k : {FamilyKind::case1, FamilyKind::case2a, FamilyKind::case2b, FamilyKind::none})
        if (to_string(k) == s) return k;
    r.fail("unknown family variant \"" + s + "\"");
}

FamilyTag read_tag(const GroupType& G, const Reader& r) {
    r.only({"variant", "a", "b", "c", "k", "r", "t", "center", "slots", "catalog_supported", "note"});
    FamilyTag t;
    t.kind = read_kind(r.at("variant"));
    t.a = r.at("a").integer();
    t.b = r.at("b").integer();
    t.c = r.at("c").integer();
    t.k = r.at("k").integer();
    t.r = r.at("r").integer();
    t.t = r.at("t").integer();
    t.center = read_point(G, r.at("center"));
    auto sl = r.at("slots").triple();
    for (int i = 0; i < 3; ++i) {
        if (sl[i] < 1 || sl[i] > 3) r.at("slots").fail("slot out of range");
        t.slots[i] = static_cast<int>(sl[i] - 1);
    }
    t.catalog_supported = r.at("catalog_supported").boolean();
    t.note = r.at("note").str();
    return t;
}

StrategyKind read_strategy(const Reader& r) {
    auto s = r.str();
    for (auto k : {StrategyKind::automatic, StrategyKind::trivial, StrategyKind::ghilb, StrategyKind::recurse,
                   StrategyKind::load})
        if (to_string(k) == s) return k;
    r.fail("unknown strategy \"" + s + "\"");
}

Json attempt_json(const Attempt& a) {
    return {{"center", a.center}, {"stage", a.stage}, {"message", a.message}, {"rank", a.rank},
            {"target_dim", a.target_dim}};
}

Attempt read_attempt(const Reader& r) {
    r.only({"center", "stage", "message", "rank", "target_dim"});
    Attempt a;
    a.center = r.at("center").str();
    a.stage = r.at("stage").str();
    a.message = r.at("message").str();
    a.rank = static_cast<int>(r.at("rank").integer());
    a.target_dim = static_cast<int>(r.at("target_dim").integer());
    return a;
}

// entry order of a brickset: cones by sorted rays
std::vector<std::size_t> entry_order(const Brickset& B) {
    std::vector<std::size_t> idx(B.entries.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return B.entries[a].cone.sorted_rays() < B.entries[b].cone.sorted_rays();
    });
    return idx;
}

Json classification_json(const Classification& c) {
    Json s = Json::array();
    for (auto& q : c.support) s.push_back(rat(q));
    return {{"applicable", c.applicable}, {"kind", to_string(c.kind)}, {"gorenstein", c.gorenstein},
            {"support", s}, {"note", c.note}};
}

Json discrepancies_json(const std::vector<Discrepancy>& ds) {
    Json a = Json::array();
    for (auto& d : ds) a.push_back({{"ray", triple(d.ray.num)}, {"value", rat(d.value)}});
    return a;
}

}  // namespace

std::string document_kind(const std::string& text) {
    Json j = parse_text(text);
    return Reader{j, ""}.at("kind").str();
}

std::string serialize(const GroupType& G) {
    Json j = head("group");
    j.update(group_json(G));
    return dump(j);
}

GroupType parse_group(const std::string& text) {
    Json j = parse_text(text);
    return read_group(document(j, "group"));
}

std::string serialize(const Fan& fan) {
    Json j = head("fan");
    j.update(fan_body(fan));
    return dump(j);
}

Fan parse_fan(const std::string& text) {
    Json j = parse_text(text);
    auto r = document(j, "fan");
    r.only({"kind", "version", "group", "rays", "cones"});
    return read_fan(r);
}

std::string serialize(const GBrick& B, const std::optional<ChartRef>& chart) {
    Json j = head("brick");
    j["group"] = group_json(B.group());
    j["monomials"] = monomials_json(B);
    if (chart)
        j["chart"] = {{"parent", group_json(chart->parent)},
                      {"center", triple(chart->center.num)},
                      {"axis", chart->axis + 1}};
    return dump(j);
}

BrickDocument parse_brick(const std::string& text) {
    Json j = parse_text(text);
    auto r = document(j, "brick");
    r.only({"kind", "version", "group", "monomials", "chart"});
    BrickDocument doc;
    GroupType G = read_group(r.at("group"));
    doc.brick = read_brick(G, r.at("monomials"));
    if (r.has("chart")) {
        auto c = r.at("chart");
        c.only({"parent", "center", "axis"});
        ChartRef ref;
        ref.parent = read_group(c.at("parent"));
        ref.center = read_point(ref.parent, c.at("center"));
        Int ax = c.at("axis").integer();
        if (ax < 1 || ax > 3) c.at("axis").fail("axis must be 1, 2 or 3");
        ref.axis = static_cast<int>(ax - 1);
        auto ctx = RoundDownContext::make(ref.parent, ref.center, ref.axis);
        if (!(ctx.subgroup() == G))
            throw ValidationError("brick group " + G.to_string() + " is not the chart group " +
                                  ctx.subgroup().to_string());
        doc.chart = ref;
    }
    return doc;
}

std::string serialize(const Brickset& B) {
    Json j = head("brickset");
    j["group"] = group_json(B.group);
    Json es = Json::array();
    for (auto i : entry_order(B)) {
        const auto& e = B.entries[i];
        es.push_back({{"cone", rays_json(e.cone.sorted_rays())}, {"monomials", monomials_json(e.brick)}});
    }
    j["entries"] = es;
    return dump(j);
}

namespace {

Brickset read_brickset(const Reader& r) {
    Brickset B;
    B.group = read_group(r.at("group"));
    auto es = r.at("entries");
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto e = es.at(i);
        e.only({"cone", "monomials"});
        auto cr = e.at("cone");
        std::vector<LatticePoint> rays;
        for (std::size_t l = 0; l < cr.size(); ++l) rays.push_back(read_point(B.group, cr.at(l)));
        B.entries.push_back({make_cone(B.group, rays), read_brick(B.group, e.at("monomials"))});
    }
    return B;
}

}  // namespace

Brickset parse_brickset(const std::string& text) {
    Json j = parse_text(text);
    auto r = document(j, "brickset");
    r.only({"kind", "version", "group", "entries"});
    return read_brickset(r);
}

std::string serialize(const Theta& t) {
    Json j = head("theta");
    j["values"] = theta_json(t);
    return dump(j);
}

Theta parse_theta(const std::string& text) {
    Json j = parse_text(text);
    auto r = document(j, "theta");
    r.only({"kind", "version", "values"});
    return Theta::make(r.at("values").rationals());
}

std::string serialize(const StabilityCertificate& c) {
    Json j = head("certificate");
    j["group"] = group_json(c.group);
    j["fan"] = fan_body(c.fan);
    j["center"] = c.center ? triple(c.center->num) : Json(nullptr);
    j["family"] = c.tag ? tag_json(*c.tag) : Json(nullptr);
    Json st = Json::array();
    for (auto k : c.strategies) st.push_back(to_string(k));
    j["strategies"] = st;
    Json es = Json::array();
    for (auto i : entry_order(c.brickset)) {
        const auto& e = c.brickset.entries[i];
        Json ej{{"cone", rays_json(e.cone.sorted_rays())}, {"monomials", monomials_json(e.brick)}};
        if (i < c.thresholds.size()) ej["threshold"] = c.thresholds[i];
        if (i < c.margins.size()) ej["margin"] = margin_json(c.margins[i]);
        if (i < c.symbolic.size()) ej["symbolic"] = margin_json(c.symbolic[i]);
        es.push_back(ej);
    }
    j["entries"] = es;
    Json tg = Json::array();
    for (auto& t : c.targets) tg.push_back(theta_json(t));
    j["targets"] = tg;
    j["theta_p"] = theta_json(c.theta_p);
    j["vartheta"] = theta_json(c.vartheta);
    j["theta"] = theta_json(c.theta());
    j["m"] = c.m;
    j["rank"] = c.rank;
    j["target_dim"] = c.target_dim;
    Json vc = Json::array();
    for (auto& v : c.vartheta_checks)
        vc.push_back({{"axis", v.axis + 1},
                      {"pushforward_zero", v.pushforward_zero},
                      {"negative_low", v.negative_low},
                      {"fiber_positive", v.fiber_positive},
                      {"witness", v.witness}});
    j["vartheta_checks"] = vc;
    Json at = Json::array();
    for (auto& a : c.attempts) at.push_back(attempt_json(a));
    j["attempts"] = at;
    return dump(j);
}

StabilityCertificate parse_certificate(const std::string& text) {
    Json j = parse_text(text);
    auto r = document(j, "certificate");
    r.only({"kind", "version", "group", "fan", "center", "family", "strategies", "entries", "targets", "theta_p",
            "vartheta", "theta", "m", "rank", "target_dim", "vartheta_checks", "attempts"});
    StabilityCertificate c;
    c.group = read_group(r.at("group"));
    auto fr = r.at("fan");
    fr.only({"group", "rays", "cones"});
    c.fan = read_fan(fr);
    if (!(c.fan.group == c.group)) fr.fail("fan group differs from the certificate group");
    if (r.has("center")) c.center = read_point(c.group, r.at("center"));
    if (r.has("family")) c.tag = read_tag(c.group, r.at("family"));
    auto st = r.at("strategies");
    for (std::size_t i = 0; i < st.size(); ++i) c.strategies.push_back(read_strategy(st.at(i)));
    c.brickset.group = c.group;
    auto es = r.at("entries");
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto e = es.at(i);
        e.only({"cone", "monomials", "threshold", "margin", "symbolic"});
        auto cr = e.at("cone");
        std::vector<LatticePoint> rays;
        for (std::size_t l = 0; l < cr.size(); ++l) rays.push_back(read_point(c.group, cr.at(l)));
        c.brickset.entries.push_back({make_cone(c.group, rays), read_brick(c.group, e.at("monomials"))});
        if (e.has("threshold")) c.thresholds.push_back(e.at("threshold").integer());
        if (e.has("margin")) c.margins.push_back(read_margin(e.at("margin")));
        if (e.has("symbolic")) c.symbolic.push_back(read_margin(e.at("symbolic")));
    }
    auto tg = r.at("targets");
    for (std::size_t i = 0; i < tg.size(); ++i) c.targets.push_back(Theta::make(tg.at(i).rationals()));
    c.theta_p = Theta::make(r.at("theta_p").rationals());
    c.vartheta = Theta::make(r.at("vartheta").rationals());
    c.m = r.at("m").integer();
    if (r.has("theta") && !(Theta::make(r.at("theta").rationals()) == c.theta()))
        r.at("theta").fail("theta differs from theta_p + m vartheta");
    c.rank = static_cast<int>(r.at("rank").integer());
    c.target_dim = static_cast<int>(r.at("target_dim").integer());
    auto vc = r.at("vartheta_checks");
    for (std::size_t i = 0; i < vc.size(); ++i) {
        auto v = vc.at(i);
        v.only({"axis", "pushforward_zero", "negative_low", "fiber_positive", "witness"});
        VarthetaCheck chk;
        chk.axis = static_cast<int>(v.at("axis").integer() - 1);
        chk.pushforward_zero = v.at("pushforward_zero").boolean();
        chk.negative_low = v.at("negative_low").boolean();
        chk.fiber_positive = v.at("fiber_positive").boolean();
        chk.witness = v.at("witness").str();
        c.vartheta_checks.push_back(chk);
    }
    auto at = r.at("attempts");
    for (std::size_t i = 0; i < at.size(); ++i) c.attempts.push_back(read_attempt(at.at(i)));
    return c;
}

std::string group_info_report(const GroupType& G) {
    Json j = head("report");
    j["report"] = "group";
    j["group"] = group_json(G);
    j["order"] = G.order();
    Json wt = Json::array();
    const char* names[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) wt.push_back({{"variable", names[i]}, {"weight", G.weights()[i]}});
    j["weight_map"] = wt;
    Json junior = Json::array();
    for (Int t = 1; t < G.order(); ++t) {
        LatticePoint p = G.class_point(t);
        Int s = p.num[0] + p.num[1] + p.num[2];
        if (s != G.order()) continue;
        junior.push_back({{"class", t}, {"point", triple(p.num)}, {"primitive", G.is_primitive(p)}});
    }
    j["junior_points"] = junior;
    Json fam = Json::array();
    for (auto& t : detect_family(G)) fam.push_back(tag_json(t));
    j["families"] = fam;
    return dump(j);
}

std::string subdivision_report(const GroupType& G, const LatticePoint& v) {
    Json j = head("report");
    j["report"] = "subdivision";
    j["group"] = group_json(G);
    j["center"] = triple(v.num);
    Fan f = star_subdivide(G, positive_octant(G), v);
    j["fan"] = fan_body(f);
    auto good = is_good_subdivision(G, v);
    j["good"] = good.good;
    j["goodness_violations"] = good.violations;
    Json charts = Json::array();
    for (int k = 0; k < 3; ++k) {
        auto ctx = RoundDownContext::make(G, v, k);
        Cone c = chart_cone(ctx);
        auto cls = classify_cone(G, c);
        charts.push_back({{"axis", k + 1},
                          {"cone", rays_json(c.rays)},
                          {"subgroup", ctx.subgroup().to_string()},
                          {"order", ctx.a_k()},
                          {"classification", classification_json(cls)}});
    }
    j["charts"] = charts;
    j["discrepancies"] = discrepancies_json(discrepancies(G, f));
    return dump(j);
}

std::string model_report(const GroupType& G, const Fan& fan, const ModelReport& rep) {
    Json j = head("report");
    j["report"] = "model";
    j["group"] = group_json(G);
    j["tiles"] = rep.tiles;
    j["simplicial"] = rep.simplicial;
    j["terminal"] = rep.terminal;
    j["smooth"] = rep.smooth;
    j["minimal_model"] = rep.minimal_model();
    Json nef{{"applicable", rep.nef.applicable}, {"nef", rep.nef.nef}, {"note", rep.nef.note}};
    if (!rep.nef.nef && rep.nef.cone >= 0) {
        nef["cone"] = rays_json(fan.cone(rep.nef.cone).rays);
        nef["ray"] = triple(fan.rays.at(rep.nef.ray).num);
        nef["value"] = rat(rep.nef.value);
    }
    j["nef"] = nef;
    Json cs = Json::array();
    for (auto& row : rep.cones)
        cs.push_back({{"cone", rays_json(fan.cone(row.cone).sorted_rays())},
                      {"simplicial", row.simplicial},
                      {"classification", classification_json(row.cls)}});
    std::sort(cs.begin(), cs.end(), [](const Json& a, const Json& b) { return a["cone"] < b["cone"]; });
    j["cones"] = cs;
    j["discrepancies"] = discrepancies_json(rep.discrepancies);
    j["message"] = rep.message;
    return dump(j);
}

std::string brickset_report(const BricksetReport& rep) {
    Json j = head("report");
    j["report"] = "brickset";
    j["ok"] = rep.ok;
    j["distinct_cones"] = rep.distinct_cones;
    j["tiling"] = {{"tiles", rep.tiling.tiles}, {"covered", rat(rep.tiling.covered)},
                   {"ambient", rat(rep.tiling.ambient)}, {"message", rep.tiling.message}};
    Json es = Json::array();
    for (auto& e : rep.entries)
        es.push_back({{"index", e.index}, {"ok", e.ok()}, {"prebrick", e.prebrick}, {"brick", e.brick},
                      {"s_dual", e.s_dual}, {"message", e.message}});
    j["entries"] = es;
    return dump(j);
}

std::string solve_report(const SolveResult& res) {
    Json j = head("report");
    j["report"] = "solve";
    j["feasible"] = res.feasible;
    j["surjective"] = res.surjective;
    j["rank"] = res.rank;
    j["target_dim"] = res.target_dim;
    j["theta"] = res.theta ? theta_json(*res.theta) : Json(nullptr);
    j["message"] = res.message;
    return dump(j);
}

std::string margin_report(const StabilityMargin& mg, const GBrick& B) {
    Json j = head("report");
    j["report"] = "stability";
    j["stable"] = mg.stable();
    j["margin"] = margin_json(mg);
    Json w = Json::array();
    for (int x : mg.witness) w.push_back(triple(B.at(x).e));
    j["witness_monomials"] = w;
    return dump(j);
}

std::string hilb_report(const Brickset& B) {
    Json j = head("report");
    j["report"] = "hilb";
    j["fan"] = Json::parse(serialize(B.fan()));
    j["brickset"] = Json::parse(serialize(B));
    return dump(j);
}

std::string failure_report(const EndToEndResult& res) {
    Json j = head("error");
    j["category"] = "math";
    j["code"] = res.stage;
    j["message"] = res.message;
    j["rank"] = res.rank;
    j["target_dim"] = res.target_dim;
    Json at = Json::array();
    for (auto& a : res.attempts) at.push_back(attempt_json(a));
    j["attempts"] = at;
    return dump(j);
}

std::string error_document(const std::string& category, const std::string& code, const std::string& message) {
    Json j = head("error");
    j["category"] = category;
    j["code"] = code;
    j["message"] = message;
    return dump(j);
}

std::string canonicalize_report(const std::string& text) {
    Json j = parse_text(text);
    Reader r{j, ""};
    auto k = r.at("kind").str();
    if (k != "report" && k != "error") r.at("kind").fail("not a report document");
    return dump(j);
}

}  // namespace brickwork
