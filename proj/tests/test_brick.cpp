#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace brickwork;
using fx::cone_of;
using fx::mono;
using fx::pt;

namespace {

std::vector<Monomial> xchain(Int r) {
    std::vector<Monomial> out;
    for (Int i = 0; i < r; ++i) out.push_back(mono(i, 0, 0));
    return out;
}

std::set<Monomial> as_set(const std::vector<Monomial>& v) { return {v.begin(), v.end()}; }

std::set<Int> weights_of(const GroupType& G, const std::vector<Monomial>& ms) {
    std::set<Int> out;
    for (auto& m : ms) out.insert(G.weight_of(m));
    return out;
}

const GroupType& g20() {
    static GroupType G = GroupType::parse("1/20(1,3,4)");
    return G;
}

RoundDownContext ctx20(int k) { return RoundDownContext::make(g20(), pt(20, {1, 3, 4}), k); }

Vec3 interior(const std::vector<LatticePoint>& rays) {
    Vec3 h{0, 0, 0};
    for (auto& p : rays) h = add(h, p.num);
    return h;
}


}  // namespace

TEST(Prebrick, PrintedGammaOneIsValid) {
    auto rep = validate_prebrick(g20(), fx::gamma1_printed());
    EXPECT_TRUE(rep.valid);
    ASSERT_TRUE(rep.brick.has_value());
    EXPECT_EQ(rep.brick->size(), 20u);
    EXPECT_TRUE(validate_prebrick(g20(), fx::gamma2_printed()).valid);
}

TEST(Prebrick, PowerChainIsValid) {
    for (auto& G : fx::fixture_groups()) {
        if (G.weights()[0] != 1) continue;
        EXPECT_TRUE(validate_prebrick(G, xchain(G.order())).valid) << G.to_string();
    }
}

TEST(Prebrick, BrokenSaturationIsWitnessed) {
    auto g = fx::gamma1_printed();
    std::replace(g.begin(), g.end(), mono(0, 6, 0), mono(1, 6, 0));
    auto rep = validate_prebrick(g20(), g);
    EXPECT_FALSE(rep.valid);
    auto it = std::find_if(rep.violations.begin(), rep.violations.end(), [](auto& v) { return v.axiom == 3; });
    ASSERT_NE(it, rep.violations.end());
    EXPECT_FALSE(it->witness.empty());
    EXPECT_THROW(make_brick(g20(), g), ValidationError);
}

TEST(Prebrick, OtherAxioms) {
    auto G = GroupType::parse("1/3(1,1,1)");
    auto no_one = validate_prebrick(G, {mono(1, 0, 0), mono(2, 0, 0), mono(3, 0, 0)});
    EXPECT_FALSE(no_one.valid);
    EXPECT_EQ(no_one.violations.front().axiom, 1);
    auto dup = validate_prebrick(G, {mono(0, 0, 0), mono(1, 0, 0), mono(0, 1, 0)});
    EXPECT_FALSE(dup.valid);
    EXPECT_EQ(dup.violations.front().axiom, 2);
    auto G5 = GroupType::parse("1/5(1,1,3)");
    auto ok = validate_prebrick(G5, {mono(0, 0, 0), mono(1, 0, 0), mono(2, 0, 0), mono(0, 0, 1), mono(1, 0, 1)});
    EXPECT_TRUE(ok.valid);
    // x^-1 z^5 has weight 4 but no neighbour in the set
    auto far = validate_prebrick(G5, {mono(0, 0, 0), mono(1, 0, 0), mono(2, 0, 0), mono(3, 0, 0), mono(-1, 0, 5)});
    EXPECT_FALSE(far.valid);
    bool conn = false;
    for (auto& v : far.violations) conn |= v.axiom == 4;
    EXPECT_TRUE(conn);
}

TEST(WtBrick, Examples) {
    auto chain = make_brick(g20(), xchain(20));
    EXPECT_EQ(wt_brick(chain, mono(0, 1, 0)), mono(3, 0, 0));
    for (auto& m : chain.monomials()) EXPECT_EQ(wt_brick(chain, m), m);
    auto g2 = make_brick(g20(), fx::gamma2_printed());
    auto w1 = wt_brick(g2, mono(1, 0, 0));
    EXPECT_EQ(g20().weight_of(w1), 1);
    EXPECT_EQ(w1, mono(0, 3, -2));
}

TEST(SemigroupGenerators, Examples) {
    auto chain = make_brick(g20(), xchain(20));
    EXPECT_EQ(as_set(semigroup_generators(chain).generators),
              as_set({mono(20, 0, 0), mono(-3, 1, 0), mono(17, 1, 0), mono(-4, 0, 1), mono(16, 0, 1)}));
    auto T = GroupType::make(1, {0, 0, 0});
    auto one = make_brick(T, {Monomial::one()});
    EXPECT_EQ(as_set(semigroup_generators(one).generators), as_set({mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)}));
}

TEST(BrickCone, Examples) {
    auto& G = g20();
    auto chain = make_brick(G, xchain(20));
    auto c = brick_cone(chain);
    EXPECT_EQ(c.dimension, 3);
    EXPECT_TRUE(c.cone().same_as(cone_of(G, {{1, 3, 4}, {0, 20, 0}, {0, 0, 20}})));
    auto g2 = brick_cone(make_brick(G, fx::gamma2_printed()));
    EXPECT_TRUE(g2.cone().same_as(cone_of(G, {{20, 0, 0}, {1, 3, 4}, {15, 5, 0}})));
    auto g1 = brick_cone(make_brick(G, fx::gamma1_printed()));
    EXPECT_TRUE(g1.cone().same_as(cone_of(G, {{20, 0, 0}, {1, 3, 4}, {7, 1, 8}})));

    EXPECT_TRUE(is_brick(chain));
    EXPECT_TRUE(is_brick(make_brick(G, fx::gamma1_printed())));
}

TEST(BorderBasis, Examples) {
    auto chain = make_brick(g20(), xchain(20));
    auto bb = border_basis(chain);
    std::set<Monomial> want{mono(20, 0, 0)};
    for (Int i = 0; i < 20; ++i) {
        want.insert(mono(i, 1, 0));
        want.insert(mono(i, 0, 1));
    }
    EXPECT_EQ(bb.size(), 41u);
    EXPECT_EQ(as_set(bb), want);

    auto T = GroupType::make(1, {0, 0, 0});
    EXPECT_EQ(as_set(border_basis(make_brick(T, {Monomial::one()}))),
              as_set({mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)}));

    auto G3 = GroupType::parse("1/3(1,1,1)");
    auto z = make_brick(G3, {mono(0, 0, 0), mono(0, 0, 1), mono(0, 0, 2)});
    EXPECT_EQ(as_set(border_basis(z)), as_set({mono(1, 0, 0), mono(1, 0, 1), mono(1, 0, 2), mono(0, 1, 0),
                                               mono(0, 1, 1), mono(0, 1, 2), mono(0, 0, 3)}));
}

TEST(Submodule, Examples) {
    auto& G = g20();
    auto g2 = make_brick(G, fx::gamma2_printed());
    auto A = weights_of(G, fx::set_A_printed());
    EXPECT_EQ(A.size(), 10u);
    EXPECT_TRUE(is_submodule_basis(g2, A));
    auto B = weights_of(G, fx::set_B_printed());
    EXPECT_TRUE(is_submodule_basis(g2, B));
    std::set<Int> all;
    for (Int i = 0; i < 20; ++i) all.insert(i);
    EXPECT_TRUE(is_submodule_basis(g2, all));
    EXPECT_TRUE(is_submodule_basis(g2, {}));
    // y^3 z^-2 alone misses its z-successor y^3 z^-1
    EXPECT_FALSE(is_submodule_basis(g2, {G.weight_of(mono(0, 3, -2))}));
    EXPECT_EQ(closure_of(g2, {G.weight_of(mono(0, 3, -2))}).size(), 5u);
}

TEST(Submodule, SingleStepMatchesFullClosure) {
    std::mt19937_64 rng(11);
    int n = 0;
    for (auto& G : fx::fixture_groups()) {
        if (G.order() > 14) continue;
        for (auto& e : ghilb(G).entries) {
            auto closed = oracle::closed_sets(e.brick);
            std::set<std::vector<int>> cl(closed.begin(), closed.end());
            Int r = G.order();
            for (int s = 0; s < 200; ++s) {
                std::set<Int> A;
                std::vector<int> v;
                for (Int w = 0; w < r; ++w)
                    if (rng() % 2) {
                        A.insert(w);
                        v.push_back(static_cast<int>(w));
                    }
                bool want = A.empty() || static_cast<Int>(A.size()) == r || cl.count(v);
                EXPECT_EQ(is_submodule_basis(e.brick, A), want);
                ++n;
            }
            for (auto& c : closed) EXPECT_TRUE(is_submodule_basis(e.brick, std::set<Int>(c.begin(), c.end())));
        }
    }
    EXPECT_GT(n, 1000);
}

TEST(Lift, PrintedBricks) {
    auto G3 = GroupType::parse("1/3(1,1,1)");
    auto g1p = make_brick(G3, {mono(0, 0, 0), mono(0, 0, 1), mono(0, 0, 2)});
    auto g1 = lift_brick(ctx20(1), g1p);
    EXPECT_EQ(as_set(g1.monomials()), as_set(fx::gamma1_printed()));

    auto G4 = GroupType::parse("1/4(1,3,0)");
    auto g2p = make_brick(G4, {mono(0, 0, 0), mono(0, 1, 0), mono(0, 2, 0), mono(0, 3, 0)});
    auto g2 = lift_brick(ctx20(2), g2p);
    EXPECT_EQ(as_set(g2.monomials()), as_set(fx::gamma2_printed()));

    auto one = make_brick(GroupType::make(1, {0, 0, 0}), {Monomial::one()});
    EXPECT_EQ(as_set(lift_brick(ctx20(0), one).monomials()), as_set(xchain(20)));
    EXPECT_EQ(smooth_cone_brick(ctx20(0)), lift_brick(ctx20(0), one));
}

TEST(Lift, FiberSizes) {
    for (auto& L : fx::lifted_fixture_bricks()) {
        std::map<Monomial, int> count;
        for (auto& m : L.brick.monomials()) ++count[L.ctx.round_down(m)];
        EXPECT_EQ(count.size(), L.sub.size());
        int total = 0;
        for (auto& [k, c] : count) total += c;
        EXPECT_EQ(total, L.ctx.parent().order());
        // each fiber is an unbroken x_k chain
        int k = L.ctx.axis();
        for (auto& m : L.brick.monomials()) {
            auto up = m * Monomial::var(k);
            if (L.ctx.round_down(up) == L.ctx.round_down(m)) EXPECT_TRUE(L.brick.contains(up)) << to_string(m);
        }
    }
}

TEST(SDual, Examples) {
    auto& G = g20();
    auto g1 = make_brick(G, fx::gamma1_printed());
    auto s1 = cone_of(G, {{20, 0, 0}, {1, 3, 4}, {7, 1, 8}});
    EXPECT_TRUE(check_S_equals_dual(g1, s1).ok);
    auto g2 = make_brick(G, fx::gamma2_printed());
    EXPECT_TRUE(check_S_equals_dual(g2, cone_of(G, {{20, 0, 0}, {1, 3, 4}, {15, 5, 0}})).ok);
    auto chain = make_brick(G, xchain(20));
    auto c1 = cone_of(G, {{1, 3, 4}, {0, 20, 0}, {0, 0, 20}});
    EXPECT_TRUE(check_S_equals_dual(chain, c1).ok);
    auto bad = check_S_equals_dual(g1, c1);
    EXPECT_FALSE(bad.ok);
    ASSERT_TRUE(bad.witness.has_value());
    bool outside = false;
    for (auto& u : c1.rays) outside |= dot(u.num, bad.witness->e) < 0;
    EXPECT_TRUE(outside);
}

TEST(Properties, LiftWeightCompatibility) {
    for (auto& L : fx::lifted_fixture_bricks())
        for (Int a = -6; a <= 6; ++a)
            for (Int b = -6; b <= 6; ++b)
                for (Int c = -6; c <= 6; ++c) {
                    auto m = mono(a, b, c);
                    ASSERT_EQ(wt_brick(L.sub, L.ctx.round_down(m)), L.ctx.round_down(wt_brick(L.brick, m)))
                        << L.ctx.parent().to_string() << " k=" << L.ctx.axis() << " m=" << to_string(m);
                }
}

TEST(Properties, LiftSemigroupIdentity) {
    int n = 0;
    for (auto& L : fx::lifted_fixture_bricks()) {
        auto gx = semigroup_generators(L.brick).generators;
        auto gxi = semigroup_generators(L.sub).generators;
        Vec3 hx = interior(brick_cone(L.brick).rays);
        Vec3 hxi = interior(brick_cone(L.sub).rays);
        for (auto& g : gx)
            EXPECT_EQ(semigroup_contains(gxi, L.ctx.from_x_invariant(g), hxi), Membership::yes);
        for (auto& g : gxi) {
            auto q = L.ctx.to_x_exponents(g);
            Monomial m;
            for (int i = 0; i < 3; ++i) {
                ASSERT_EQ(q[i].get_den(), 1);
                m.e[i] = q[i].get_num().get_si();
            }
            EXPECT_EQ(semigroup_contains(gx, m, hx), Membership::yes);
        }
        EXPECT_TRUE(brick_cone(L.brick).cone().same_as(Cone{[&] {
            std::vector<LatticePoint> rs;
            for (auto& p : brick_cone(L.sub).rays) rs.push_back(L.ctx.from_sub(p));
            return rs;
        }()}));
        ++n;
    }
    EXPECT_GT(n, 30);
}

TEST(Properties, DegreeOneGeneration) {
    std::vector<GBrick> bricks;
    for (auto& G : fx::fixture_groups())
        if (G.order() <= 20)
            for (auto& e : ghilb(G).entries) bricks.push_back(e.brick);
    bricks.push_back(make_brick(g20(), fx::gamma1_printed()));
    bricks.push_back(make_brick(g20(), fx::gamma2_printed()));
    for (auto& B : bricks) {
        auto gens = semigroup_generators(B).generators;
        Vec3 h = interior(brick_cone(B).rays);
        for (auto& m : B.monomials())
            for (Int a = 0; a <= 6; ++a)
                for (Int b = 0; a + b <= 6; ++b)
                    for (Int c = 0; a + b + c <= 6; ++c) {
                        auto nm = m * mono(a, b, c);
                        auto ratio = nm / wt_brick(B, nm);
                        if (ratio.is_one()) continue;
                        ASSERT_EQ(semigroup_contains(gens, ratio, h), Membership::yes)
                            << B.group().to_string() << " " << to_string(ratio);
                    }
    }
}

TEST(Properties, BrickCriterionEquivalence) {
    for (auto& G : fx::fixture_groups()) {
        if (G.order() > 14) continue;
        for (auto& e : ghilb(G).entries) {
            EXPECT_TRUE(is_brick(e.brick));
            EXPECT_EQ(brick_cone(e.brick).dimension, 3);
            // no generator is invertible: its inverse pairs negatively with the interior
            Vec3 h = interior(brick_cone(e.brick).rays);
            for (auto& g : semigroup_generators(e.brick).generators) EXPECT_GT(dot(h, g.e), 0);
        }
    }
}

TEST(Properties, SizeAndTransversality) {
    for (auto& L : fx::lifted_fixture_bricks()) {
        auto& B = L.brick;
        EXPECT_EQ(static_cast<Int>(B.size()), B.group().order());
        for (Int w = 0; w < B.group().order(); ++w) EXPECT_EQ(B.group().weight_of(B.at(w)), w);
        EXPECT_TRUE(B.at(0).is_one());
    }
}
