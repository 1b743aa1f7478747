#include "brickwork/pipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace brickwork {

std::vector<GBrick> Brickset::bricks() const {
    std::vector<GBrick> out;
    for (auto& e : entries) out.push_back(e.brick);
    return out;
}

Fan Brickset::fan() const {
    std::vector<Cone> cs;
    for (auto& e : entries) cs.push_back(e.cone);
    return Fan::from_cones(group, cs);
}

namespace {

// staircases of r genuine monomials with distinct weights, generated in graded order
class GGraphSearch {
public:
    explicit GGraphSearch(const GroupType& G) : G_(G), r_(G.order()) {
        for (Int d = 0; d < r_; ++d)
            for (Int i = d; i >= 0; --i)
                for (Int j = d - i; j >= 0; --j) {
                    Vec3 e{i, j, d - i - j};
                    index_[key(e)] = static_cast<int>(order_.size());
                    order_.push_back(e);
                }
    }

    std::vector<std::vector<Monomial>> run() {
        cur_ = {Vec3{0, 0, 0}};
        in_.assign(order_.size(), 0);
        in_[0] = 1;
        used_.assign(static_cast<std::size_t>(r_), 0);
        used_[0] = 1;
        rec(0);
        return out_;
    }

private:
    Int key(const Vec3& e) const { return (e[0] * r_ + e[1]) * r_ + e[2]; }
    int idx(const Vec3& e) const {
        if (e[0] >= r_ || e[1] >= r_ || e[2] >= r_ || e[0] + e[1] + e[2] >= r_) return -1;
        auto it = index_.find(key(e));
        return it == index_.end() ? -1 : it->second;
    }

    void rec(int last) {
        if (static_cast<Int>(cur_.size()) == r_) {
            std::vector<Monomial> mons;
            for (auto& e : cur_) mons.push_back({e});
            out_.push_back(std::move(mons));
            return;
        }
        std::set<int> corners;
        for (auto& m : cur_)
            for (int i = 0; i < 3; ++i) {
                Vec3 n = m;
                ++n[i];
                int id = idx(n);
                if (id < 0 || id <= last || in_[id]) continue;
                if (used_[G_.weight_of({n})]) continue;
                bool down = true;
                for (int j = 0; j < 3 && down; ++j) {
                    if (n[j] == 0) continue;
                    Vec3 p = n;
                    --p[j];
                    down = in_[idx(p)];
                }
                if (down) corners.insert(id);
            }
        for (int id : corners) {
            const Vec3& n = order_[id];
            Int w = G_.weight_of({n});
            cur_.push_back(n);
            in_[id] = 1;
            used_[w] = 1;
            rec(id);
            cur_.pop_back();
            in_[id] = 0;
            used_[w] = 0;
        }
    }

    GroupType G_;
    Int r_;
    std::vector<Vec3> order_;
    std::map<Int, int> index_;
    std::vector<Vec3> cur_;
    std::vector<char> in_, used_;
    std::vector<std::vector<Monomial>> out_;
};

std::mutex ghilb_mutex;
std::map<std::pair<Int, Vec3>, Brickset> ghilb_cache;

Brickset compute_ghilb(const GroupType& G) {
    if (G.order() > 60) throw ValidationError("G-Hilb enumeration is limited to r <= 60");
    Brickset bs;
    bs.group = G;
    for (auto& mons : GGraphSearch(G).run()) {
        GBrick B = make_brick(G, mons);
        auto bc = brick_cone(B);
        if (bc.dimension != 3) continue;
        Cone c;
        try {
            c = make_cone(G, bc.rays);
        } catch (const ValidationError& e) {
            throw MathFailure("ghilb_cone", "G-cluster cone with " + std::to_string(bc.rays.size()) +
                                                " rays is not supported: " + e.what());
        }
        bs.entries.push_back({c, B});
    }
    std::vector<Cone> cs;
    for (auto& e : bs.entries) cs.push_back(e.cone);
    auto tr = cones_tile(cs, positive_octant(G));
    if (!tr.tiles) throw MathFailure("ghilb_tiling", "G-cluster cones do not tile: " + tr.message);
    return bs;
}

Brickset trivial_brickset(const GroupType& G) {
    Brickset bs;
    bs.group = G;
    bs.entries.push_back({positive_octant(G), make_brick(G, {Monomial::one()})});
    return bs;
}

bool single_octant(const Fan& fan) {
    return fan.cones.size() == 1 && fan.cone(0).same_as(positive_octant(fan.group));
}

Int age_num(const LatticePoint& p) { return p.num[0] + p.num[1] + p.num[2]; }

// family centers first, then interior rays of the fan by age and class
std::vector<LatticePoint> candidate_centers(const GroupType& G, const Fan& fan) {
    std::vector<LatticePoint> out;
    for (auto& t : detect_family(G))
        if (std::find(out.begin(), out.end(), t.center) == out.end()) out.push_back(t.center);
    std::vector<std::pair<std::pair<Int, Int>, LatticePoint>> rest;
    Cone oct = positive_octant(G);
    for (auto& p : fan.rays) {
        if (!cone_interior(oct, p.num)) continue;
        auto t = G.lattice_class(p.num);
        if (!t || std::gcd(*t, G.order()) != 1) continue;
        if (std::find(out.begin(), out.end(), p) != out.end()) continue;
        rest.push_back({{age_num(p), *t}, p});
    }
    std::sort(rest.begin(), rest.end());
    for (auto& x : rest) out.push_back(x.second);
    return out;
}

Brickset lift_all(const RoundDownContext& ctx, const Brickset& sub) {
    Brickset out;
    out.group = ctx.parent();
    for (auto& e : sub.entries) {
        Cone c;
        for (auto& q : e.cone.rays) c.rays.push_back(ctx.from_sub(q));
        out.entries.push_back({c, lift_brick(ctx, e.brick)});
    }
    return out;
}

BuildNode search_node(const GroupType& G, const Fan& fan) {
    std::vector<std::string> log;
    for (auto& c : candidate_centers(G, fan)) {
        try {
            return build_node(G, fan, c, {Strategy{}, Strategy{}, Strategy{}});
        } catch (const MathFailure& e) {
            log.push_back(to_string(c) + ": " + e.what());
        } catch (const ValidationError& e) {
            log.push_back(to_string(c) + ": " + e.what());
        }
    }
    std::string msg = "no subdivision center of " + G.to_string() + " yields a brickset";
    for (auto& l : log) msg += "; " + l;
    throw MathFailure("no_brickset", msg);
}

}  // namespace

Brickset ghilb(const GroupType& G) {
    std::pair<Int, Vec3> key{G.order(), G.weights()};
    {
        std::lock_guard<std::mutex> lk(ghilb_mutex);
        auto it = ghilb_cache.find(key);
        if (it != ghilb_cache.end()) return it->second;
    }
    Brickset bs = compute_ghilb(G);
    std::lock_guard<std::mutex> lk(ghilb_mutex);
    ghilb_cache.emplace(key, bs);
    return bs;
}

Fan ghilb_fan(const GroupType& G) { return ghilb(G).fan(); }

GBrick smooth_cone_brick(const RoundDownContext& ctx) {
    if (!ctx.subgroup().trivial())
        throw ValidationError("chart " + std::to_string(ctx.axis() + 1) + " is not smooth (a_k = " +
                              std::to_string(ctx.a_k()) + ")");
    return lift_brick(ctx, make_brick(ctx.subgroup(), {Monomial::one()}));
}

Cone chart_cone(const RoundDownContext& ctx) {
    Cone c = positive_octant(ctx.parent());
    c.rays[ctx.axis()] = ctx.center();
    return c;
}

std::vector<RoundDownContext> chart_contexts(const GroupType& G, const LatticePoint& v) {
    require_center(G, v);
    std::vector<RoundDownContext> out;
    for (int k = 0; k < 3; ++k) out.push_back(RoundDownContext::make(G, v, k));
    return out;
}

RestrictResult restrict_fan(const Fan& fan, const std::vector<RoundDownContext>& ctxs) {
    RestrictResult res;
    std::vector<Cone> charts;
    for (auto& c : ctxs) charts.push_back(chart_cone(c));
    std::vector<std::vector<Cone>> sub(ctxs.size());
    res.source_cones.resize(ctxs.size());
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        Cone c = fan.cone(i);
        bool placed = false;
        for (std::size_t k = 0; k < charts.size() && !placed; ++k) {
            bool inside = true;
            for (auto& p : c.rays) inside = inside && cone_contains(charts[k], p.num);
            if (!inside) continue;
            Cone s;
            for (auto& p : c.rays) s.rays.push_back(ctxs[k].to_sub(p));
            sub[k].push_back(s);
            res.source_cones[k].push_back(static_cast<int>(i));
            placed = true;
        }
        if (!placed) res.straddling.push_back(static_cast<int>(i));
    }
    res.ok = res.straddling.empty();
    if (!res.ok) {
        std::ostringstream os;
        os << "no morphism to the star subdivision at " << to_string(ctxs.front().center()) << ": cones";
        for (int i : res.straddling) {
            os << " [";
            auto c = fan.cone(i);
            for (std::size_t j = 0; j < c.rays.size(); ++j) os << (j ? " " : "") << to_string(c.rays[j]);
            os << "]";
        }
        os << " lie in no chart";
        res.message = os.str();
        return res;
    }
    for (std::size_t k = 0; k < ctxs.size(); ++k) res.subfans.push_back(Fan::from_cones(ctxs[k].subgroup(), sub[k]));
    return res;
}

Fan restrict_fan(const Fan& fan, const RoundDownContext& ctx) {
    Cone chart = chart_cone(ctx);
    std::vector<Cone> sub;
    std::vector<int> bad;
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        Cone c = fan.cone(i);
        bool all_in = true, some_interior = false;
        for (auto& p : c.rays) {
            all_in = all_in && cone_contains(chart, p.num);
            some_interior = some_interior || cone_interior(chart, p.num);
        }
        if (all_in) {
            Cone s;
            for (auto& p : c.rays) s.rays.push_back(ctx.to_sub(p));
            sub.push_back(s);
        } else if (some_interior) {
            bad.push_back(static_cast<int>(i));
        }
    }
    if (!bad.empty()) {
        std::string msg = "cones";
        for (int i : bad) msg += " " + std::to_string(i);
        throw MathFailure("no_morphism", msg + " straddle chart " + std::to_string(ctx.axis() + 1));
    }
    return Fan::from_cones(ctx.subgroup(), sub);
}

std::string to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::automatic: return "auto";
        case StrategyKind::trivial: return "trivial";
        case StrategyKind::ghilb: return "ghilb";
        case StrategyKind::recurse: return "recurse";
        case StrategyKind::load: return "load";
    }
    return "auto";
}

BuildNode build_node_auto(const GroupType& G, const Fan& fan) {
    if (!(fan.group == G)) throw ValidationError("fan group differs from " + G.to_string());
    BuildNode node;
    node.group = G;
    node.fan = fan;
    if (G.trivial()) {
        if (!single_octant(fan))
            throw MathFailure("no_brickset", "smooth chart is subdivided further; no brickset of the trivial group");
        node.kind = StrategyKind::trivial;
        node.brickset = trivial_brickset(G);
        return node;
    }
    if (G.order() <= 60 && fan == ghilb_fan(G)) {
        node.kind = StrategyKind::ghilb;
        node.brickset = ghilb(G);
        return node;
    }
    return search_node(G, fan);
}

BuildNode build_node(const GroupType& G, const Fan& fan, const LatticePoint& v,
                     const std::vector<Strategy>& strategies) {
    if (strategies.size() != 3) throw ValidationError("one strategy per chart is required");
    if (!(fan.group == G)) throw ValidationError("fan group differs from " + G.to_string());
    auto ctxs = chart_contexts(G, v);
    auto good = is_good_subdivision(G, v);
    if (!good.good) {
        std::string msg = "subdivision at " + to_string(v) + " is not good";
        for (auto& s : good.violations) msg += "; " + s;
        throw MathFailure("not_good", msg);
    }
    auto rr = restrict_fan(fan, ctxs);
    if (!rr.ok) throw MathFailure("no_morphism", rr.message);

    BuildNode node;
    node.group = G;
    node.fan = fan;
    node.kind = StrategyKind::recurse;
    node.center = v;
    node.brickset.group = G;
    for (int k = 0; k < 3; ++k) {
        const auto& ctx = ctxs[k];
        const GroupType& Gk = ctx.subgroup();
        const Fan& sub = rr.subfans[k];
        const Strategy& st = strategies[k];
        BuildNode child;
        std::string where = "chart " + std::to_string(k + 1) + " (" + Gk.to_string() + ")";
        switch (st.kind) {
            case StrategyKind::automatic:
                try {
                    child = build_node_auto(Gk, sub);
                } catch (const MathFailure& e) {
                    throw MathFailure(e.code(), where + ": " + e.what());
                }
                break;
            case StrategyKind::trivial:
                if (!Gk.trivial() || !single_octant(sub))
                    throw MathFailure("strategy_mismatch", where + " is not a single smooth cone");
                child.group = Gk;
                child.fan = sub;
                child.kind = StrategyKind::trivial;
                child.brickset = trivial_brickset(Gk);
                break;
            case StrategyKind::ghilb:
                if (!(sub == ghilb_fan(Gk)))
                    throw MathFailure("strategy_mismatch", where + ": restricted fan is not the G-Hilb fan");
                child.group = Gk;
                child.fan = sub;
                child.kind = StrategyKind::ghilb;
                child.brickset = ghilb(Gk);
                break;
            case StrategyKind::recurse:
                try {
                    if (st.center) {
                        child = build_node(Gk, sub, *st.center, {Strategy{}, Strategy{}, Strategy{}});
                    } else {
                        child = search_node(Gk, sub);
                    }
                } catch (const MathFailure& e) {
                    throw MathFailure(e.code(), where + ": " + e.what());
                }
                break;
            case StrategyKind::load: {
                if (!st.loaded || !(st.loaded->group == Gk))
                    throw ValidationError(where + ": loaded brickset is for another group");
                if (!(st.loaded->fan() == sub))
                    throw MathFailure("strategy_mismatch", where + ": loaded brickset does not match the restricted fan");
                auto rep = verify_brickset(*st.loaded);
                if (!rep.ok) throw MathFailure("brickset_invalid", where + ": loaded brickset does not verify");
                child.group = Gk;
                child.fan = sub;
                child.kind = StrategyKind::load;
                child.brickset = *st.loaded;
                break;
            }
        }
        if (!(child.brickset.fan() == sub))
            throw MathFailure("strategy_mismatch", where + ": sub-brickset cones differ from the restricted fan");
        Brickset lifted = lift_all(ctx, child.brickset);
        for (auto& e : lifted.entries) node.brickset.entries.push_back(e);
        node.log.push_back(where + ": " + to_string(child.kind));
        node.children.push_back(std::move(child));
    }
    auto rep = verify_brickset(node.brickset);
    if (!rep.ok) {
        std::string msg = "assembled brickset fails verification";
        for (auto& e : rep.entries)
            if (!e.ok()) msg += "; entry " + std::to_string(e.index) + ": " + e.message;
        if (!rep.tiling.tiles) msg += "; " + rep.tiling.message;
        throw MathFailure("brickset_invalid", msg);
    }
    return node;
}

Brickset build_brickset(const GroupType& G, const Fan& fan, const LatticePoint& v,
                        const std::vector<Strategy>& strategies) {
    return build_node(G, fan, v, strategies).brickset;
}

BricksetReport verify_brickset(const Brickset& B) {
    BricksetReport rep;
    const GroupType& G = B.group;
    std::set<std::vector<LatticePoint>> seen;
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < B.entries.size(); ++i) {
        const auto& e = B.entries[i];
        EntryReport er;
        er.index = static_cast<int>(i);
        cones.push_back(e.cone);
        if (!seen.insert(e.cone.sorted_rays()).second) rep.distinct_cones = false;
        auto pre = validate_prebrick(G, e.brick.monomials());
        er.prebrick = pre.valid;
        if (!pre.valid) {
            er.message = "axiom (" + std::to_string(pre.violations.front().axiom) + "): " + pre.violations.front().message;
            rep.entries.push_back(er);
            continue;
        }
        er.brick = is_brick(e.brick);
        if (!er.brick) {
            er.message = "cone of the brick is not full-dimensional";
            rep.entries.push_back(er);
            continue;
        }
        auto sd = check_S_equals_dual(e.brick, e.cone);
        er.s_dual = sd.ok;
        if (!sd.ok) {
            er.message = sd.reason;
            if (sd.witness) er.message += " (" + to_string(*sd.witness) + ")";
        }
        rep.entries.push_back(er);
    }
    rep.tiling = cones_tile(cones, positive_octant(G));
    rep.ok = rep.distinct_cones && rep.tiling.tiles;
    for (auto& e : rep.entries) rep.ok = rep.ok && e.ok();
    return rep;
}

std::vector<FamilyTag> detect_family(const GroupType& G) {
    Int r = G.order();
    std::vector<FamilyTag> out;
    auto have = [&](const FamilyTag& t) {
        for (auto& o : out)
            if (o.kind == t.kind && o.a == t.a && o.b == t.b && o.c == t.c && o.center == t.center) return true;
        return false;
    };
    auto add_tag = [&](FamilyTag t) {
        if (have(t)) return;
        try {
            vartheta_formula(t.kind, t.a, t.b, t.c, t.k);
            t.catalog_supported = true;
        } catch (const ValidationError& e) {
            t.note = std::string("family detected, parameter catalog unsupported: ") + e.what();
        }
        out.push_back(t);
    };
    for (Int s = 1; s < r; ++s) {
        if (std::gcd(s, r) != 1) continue;
        Vec3 w;
        for (int i = 0; i < 3; ++i) w[i] = mod(s * G.weights()[i], r);
        for (int p = 0; p < 3; ++p) {
            if (w[p] != 1) continue;
            int q1 = (p + 1) % 3, q2 = (p + 2) % 3;
            if (q1 > q2) std::swap(q1, q2);
            Int a = w[q1], b = w[q2];
            int sa = q1, sb = q2;
            if (a > b) {
                std::swap(a, b);
                std::swap(sa, sb);
            }
            if (a < 1 || std::gcd(a, b) != 1 || (a == b && a != 1)) continue;
            FamilyTag base;
            base.a = a;
            base.b = b;
            base.r = r;
            base.t = s;
            base.center = G.point(w);
            base.slots = {p, sa, sb};
            Int rest = r - a - b - 1;
            if (rest > 0 && rest % (a * b) == 0) {
                FamilyTag t = base;
                t.kind = FamilyKind::case1;
                t.c = rest / (a * b);
                add_tag(t);
            }
            if ((b - 1) % a == 0 && b > 1) {
                Int k = (b - 1) / a;
                Int rest2 = r - a + 2 * b - 1;
                if (rest2 > 0 && rest2 % (a * b) == 0) {
                    FamilyTag t = base;
                    t.c = rest2 / (a * b);
                    t.k = k;
                    t.kind = t.c >= 2 ? FamilyKind::case2a : FamilyKind::case2b;
                    add_tag(t);
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const FamilyTag& x, const FamilyTag& y) { return x.kind < y.kind; });
    return out;
}

LatticePoint canonical_w(const GroupType& G, const FamilyTag& tag) {
    if (tag.kind != FamilyKind::case2a && tag.kind != FamilyKind::case2b)
        throw ValidationError("w is defined for the second family only");
    Int r = G.order();
    if ((r + 1) % tag.a != 0 || (r + tag.b) % tag.a != 0)
        throw MathFailure("w_not_integral", "w has a non-integral coordinate");
    Vec3 n;
    n[tag.slots[0]] = (r + 1) / tag.a;
    n[tag.slots[1]] = 1;
    n[tag.slots[2]] = (r + tag.b) / tag.a;
    LatticePoint w = G.point(n);
    if (!G.contains(w)) throw MathFailure("w_not_in_lattice", "w = " + to_string(w) + " is not a point of L");
    return w;
}

CanonicalModel canonical_model_fan(const GroupType& G, const FamilyTag& tag) {
    CanonicalModel cm;
    cm.v = tag.center;
    Cone oct = positive_octant(G);
    LatticePoint E1 = G.axis(tag.slots[0]), E2 = G.axis(tag.slots[1]), E3 = G.axis(tag.slots[2]);
    Fan xv = star_subdivide(G, oct, cm.v);
    if (tag.kind == FamilyKind::case1) {
        cm.cones = xv.all_cones();
        for (auto& c : cm.cones) {
            if (c.same_as({{cm.v, E2, E3}})) cm.names.push_back("sigma1");
            else if (c.same_as({{E1, cm.v, E3}})) cm.names.push_back("sigma2");
            else cm.names.push_back("sigma3");
        }
        cm.fan = xv;
        return cm;
    }
    if (tag.kind != FamilyKind::case2a && tag.kind != FamilyKind::case2b)
        throw ValidationError("no canonical model for this tag");
    cm.w = canonical_w(G, tag);
    if (!cone_interior({{E1, cm.v, E3}}, cm.w.num))
        throw MathFailure("w_position", "w is not interior to Cone(e1, v, e3)");
    Fan y = star_subdivide(xv, cm.w);
    std::vector<std::pair<std::string, Cone>> pattern = {
        {"sigma1", {{cm.v, E2, E3}}}, {"sigma3", {{E1, E2, cm.v}}}, {"sigma4", {{cm.w, cm.v, E3}}},
        {"sigma6", {{E1, cm.v, cm.w}}}, {"sigma7", {{E1, cm.w, E3}}}};
    std::vector<Cone> cones = y.all_cones();
    if (tag.kind == FamilyKind::case2b) {
        // merge sigma3 and sigma6 across their common facet Cone(e1, v)
        std::vector<Cone> kept;
        for (auto& c : cones)
            if (!c.same_as(pattern[1].second) && !c.same_as(pattern[3].second)) kept.push_back(c);
        if (kept.size() + 2 != cones.size()) throw MathFailure("canonical_model", "unexpected cone structure");
        kept.push_back(make_cone(G, {E1, E2, cm.v, cm.w}));
        cones = kept;
        pattern = {{"sigma1", {{cm.v, E2, E3}}},
                   {"sigma4", {{cm.w, cm.v, E3}}},
                   {"sigma5", {{E1, E2, cm.v, cm.w}}},
                   {"sigma7", {{E1, cm.w, E3}}}};
    }
    for (auto& [name, pc] : pattern) {
        bool found = false;
        for (auto& c : cones)
            if (c.same_as(pc)) {
                cm.names.push_back(name);
                cm.cones.push_back(c);
                found = true;
            }
        if (!found) throw MathFailure("canonical_model", "cone " + name + " was not regenerated");
    }
    if (cm.cones.size() != cones.size()) throw MathFailure("canonical_model", "extra cones after subdivision");
    auto tr = cones_tile(cm.cones, oct);
    if (!tr.tiles) throw MathFailure("canonical_model", "regenerated cones do not tile: " + tr.message);
    cm.fan = Fan::from_cones(G, cm.cones);
    return cm;
}

ModelReport certify_model(const GroupType& G, const Fan& fan) {
    ModelReport rep;
    auto tr = cones_tile(fan, positive_octant(G));
    rep.tiles = tr.tiles;
    if (!tr.tiles) rep.message = tr.message;
    rep.simplicial = rep.terminal = rep.smooth = true;
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        ConeModelRow row;
        row.cone = static_cast<int>(i);
        Cone c = fan.cone(i);
        row.simplicial = c.simplicial();
        if (row.simplicial) {
            row.cls = classify_cone(G, c);
        } else {
            row.cls.applicable = false;
            row.cls.note = "the cone is not simplicial";
        }
        rep.simplicial = rep.simplicial && row.simplicial;
        bool term = row.simplicial && (row.cls.kind == ConeKind::smooth || row.cls.kind == ConeKind::terminal);
        rep.terminal = rep.terminal && term;
        rep.smooth = rep.smooth && row.simplicial && row.cls.kind == ConeKind::smooth;
        rep.cones.push_back(row);
    }
    rep.nef = is_relatively_nef_K(G, fan);
    rep.discrepancies = discrepancies(G, fan);
    return rep;
}

namespace {

int stage_rank(const std::string& s) {
    static const std::vector<std::string> order = {"fan", "restrict", "build", "solve", "subcertificate",
                                                   "vartheta", "find_m", "ok"};
    auto it = std::find(order.begin(), order.end(), s);
    return static_cast<int>(it - order.begin());
}

StabilityCertificate ghilb_certificate(const GroupType& G, const Fan& fan, Int m_max) {
    StabilityCertificate cert;
    cert.group = G;
    cert.fan = fan;
    cert.brickset = G.trivial() ? trivial_brickset(G) : ghilb(G);
    cert.theta_p = theta_plus(G);
    cert.vartheta = Theta::zero(G.order());
    auto fm = find_m(cert.brickset.bricks(), cert.theta_p, cert.vartheta, m_max);
    if (!fm.found) throw MathFailure("find_m", "G-Hilb brick unstable for the positive parameter: " + fm.message);
    cert.m = fm.m;
    cert.thresholds = fm.thresholds;
    cert.margins = fm.margins;
    for (auto& b : cert.brickset.bricks()) cert.symbolic.push_back(min_margin_symbolic(b, cert.theta_p, cert.vartheta));
    return cert;
}

struct AttemptOutcome {
    std::optional<StabilityCertificate> cert;
    Attempt attempt;
};

AttemptOutcome attempt_center(const GroupType& G, const Fan& fan, const LatticePoint& v, const EndToEndOptions& opt) {
    AttemptOutcome out;
    Attempt& at = out.attempt;
    at.center = to_string(v);
    auto fail = [&](const std::string& stage, const std::string& msg) {
        at.stage = stage;
        at.message = msg;
        return out;
    };

    BuildNode node;
    try {
        node = build_node(G, fan, v, {Strategy{}, Strategy{}, Strategy{}});
    } catch (const MathFailure& e) {
        return fail(e.code() == "no_morphism" ? "restrict" : "build", e.what());
    } catch (const ValidationError& e) {
        return fail("build", e.what());
    }
    auto ctxs = chart_contexts(G, v);
    at.rank = pushforward_rank(G, ctxs);
    at.target_dim = 0;
    for (auto& c : ctxs) at.target_dim += static_cast<int>(c.a_k() - 1);
    if (at.rank < at.target_dim) {
        std::ostringstream os;
        os << "pushforward is not surjective: rank " << at.rank << " < " << at.target_dim
           << "; existence of a compatible parameter is undecided";
        return fail("solve", os.str());
    }

    // stabilizing parameters of the charts
    std::vector<std::optional<Theta>> targets;
    std::vector<Strategy> final_strategies;
    std::vector<StrategyKind> kinds;
    for (int k = 0; k < 3; ++k) {
        const BuildNode& child = node.children[k];
        const GroupType& Gk = ctxs[k].subgroup();
        switch (child.kind) {
            case StrategyKind::trivial:
                targets.push_back(Theta::zero(1));
                final_strategies.push_back(Strategy::trivial());
                break;
            case StrategyKind::ghilb:
                targets.push_back(theta_plus(Gk));
                final_strategies.push_back(Strategy::ghilb());
                break;
            default: {
                EndToEndOptions sub_opt;
                sub_opt.m_max = opt.m_max;
                EndToEndResult sub = child.center ? end_to_end_at(Gk, child.fan, *child.center, sub_opt)
                                                  : end_to_end(Gk, child.fan, sub_opt);
                if (!sub.ok() && child.center) sub = end_to_end(Gk, child.fan, sub_opt);
                if (!sub.ok())
                    return fail("subcertificate", "chart " + std::to_string(k + 1) + " (" + Gk.to_string() +
                                                      "): " + sub.stage + ": " + sub.message);
                targets.push_back(sub.certificate->theta());
                final_strategies.push_back(Strategy::load(sub.certificate->brickset));
            }
        }
        kinds.push_back(child.kind);
    }
    Brickset bricks;
    try {
        bricks = build_brickset(G, fan, v, final_strategies);
    } catch (const std::exception& e) {
        return fail("build", e.what());
    }

    auto sol = solve_partial(G, ctxs, targets);
    if (!sol.feasible) return fail("solve", sol.message);

    std::vector<std::pair<std::optional<FamilyTag>, Theta>> params;
    std::string vmsg;
    if (opt.vartheta) {
        params.push_back({std::nullopt, *opt.vartheta});
    } else {
        for (auto& t : detect_family(G)) {
            if (!(t.center == v)) continue;
            if (!t.catalog_supported) {
                vmsg += (vmsg.empty() ? "" : "; ") + to_string(t.kind) + ": " + t.note;
                continue;
            }
            try {
                params.push_back({t, vartheta_catalog(G, t)});
            } catch (const ValidationError& e) {
                vmsg += (vmsg.empty() ? "" : "; ") + to_string(t.kind) + ": " + e.what();
            }
        }
    }
    if (params.empty())
        return fail("vartheta", vmsg.empty() ? "no catalog parameter for center " + to_string(v) : vmsg);

    std::string mmsg;
    for (auto& [tag, vt] : params) {
        auto fm = find_m(bricks.bricks(), *sol.theta, vt, opt.m_max);
        if (!fm.found) {
            mmsg += (mmsg.empty() ? "" : "; ") + (tag ? to_string(tag->kind) : std::string("custom")) + ": " + fm.message;
            continue;
        }
        StabilityCertificate cert;
        cert.group = G;
        cert.fan = fan;
        cert.center = v;
        cert.tag = tag;
        cert.strategies = kinds;
        cert.brickset = bricks;
        for (auto& t : targets) cert.targets.push_back(*t);
        cert.theta_p = *sol.theta;
        cert.vartheta = vt;
        cert.m = fm.m;
        cert.thresholds = fm.thresholds;
        cert.margins = fm.margins;
        for (auto& b : bricks.bricks()) cert.symbolic.push_back(min_margin_symbolic(b, cert.theta_p, vt));
        cert.vartheta_checks = check_vartheta_properties(ctxs, vt);
        cert.rank = at.rank;
        cert.target_dim = at.target_dim;
        at.stage = "ok";
        at.message = "m = " + std::to_string(fm.m);
        out.cert = std::move(cert);
        return out;
    }
    return fail("find_m", mmsg);
}

EndToEndResult finish(std::vector<AttemptOutcome>& outs) {
    EndToEndResult res;
    for (auto& o : outs) res.attempts.push_back(o.attempt);
    for (auto& o : outs)
        if (o.cert) {
            res.certificate = std::move(o.cert);
            res.certificate->attempts = res.attempts;
            res.stage = "ok";
            return res;
        }
    const Attempt* best = nullptr;
    for (auto& a : res.attempts)
        if (!best || stage_rank(a.stage) > stage_rank(best->stage)) best = &a;
    if (best) {
        res.stage = best->stage;
        res.message = "center " + best->center + ": " + best->message;
        res.rank = best->rank;
        res.target_dim = best->target_dim;
    } else {
        res.stage = "build";
        res.message = "no candidate subdivision center";
    }
    return res;
}

bool check_fan(const GroupType& G, const Fan& fan, EndToEndResult& res) {
    if (!(fan.group == G)) {
        res.stage = "fan";
        res.message = "fan group differs from " + G.to_string();
        return false;
    }
    auto tr = cones_tile(fan, positive_octant(G));
    if (!tr.tiles) {
        res.stage = "fan";
        res.message = "fan does not tile the positive octant: " + tr.message;
        return false;
    }
    return true;
}

}  // namespace

EndToEndResult end_to_end(const GroupType& G, const Fan& fan, const EndToEndOptions& opt) {
    EndToEndResult res;
    if (!check_fan(G, fan, res)) return res;
    if (G.trivial() || (G.order() <= 60 && fan == ghilb_fan(G))) {
        try {
            res.certificate = ghilb_certificate(G, fan, opt.m_max);
            res.stage = "ok";
        } catch (const MathFailure& e) {
            res.stage = "find_m";
            res.message = e.what();
        }
        return res;
    }
    std::vector<AttemptOutcome> outs;
    for (auto& c : candidate_centers(G, fan)) {
        outs.push_back(attempt_center(G, fan, c, opt));
        if (outs.back().cert) break;
    }
    return finish(outs);
}

EndToEndResult end_to_end_at(const GroupType& G, const Fan& fan, const LatticePoint& v, const EndToEndOptions& opt) {
    EndToEndResult res;
    if (!check_fan(G, fan, res)) return res;
    std::vector<AttemptOutcome> outs;
    try {
        outs.push_back(attempt_center(G, fan, v, opt));
    } catch (const ValidationError& e) {
        res.stage = "build";
        res.message = e.what();
        return res;
    }
    return finish(outs);
}

}  // namespace brickwork
