#include "brickwork/brick.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace brickwork {

struct BrickAccess {
    static GBrick build(const GroupType& G, std::vector<Monomial> mons) {
        GBrick b;
        b.G_ = G;
        b.mons_ = std::move(mons);
        return b;
    }
};

PrebrickReport validate_prebrick(const GroupType& G, const std::vector<Monomial>& candidate) {
    PrebrickReport rep;
    Int r = G.order();
    std::set<Monomial> S(candidate.begin(), candidate.end());
    if (S.size() != candidate.size()) rep.violations.push_back({2, "repeated monomial", {}});
    if (!S.count(Monomial::one())) rep.violations.push_back({1, "the monomial 1 is missing", {}});

    std::vector<std::vector<Monomial>> by_weight(r);
    for (auto& m : S) by_weight[G.weight_of(m)].push_back(m);
    for (Int w = 0; w < r; ++w) {
        if (by_weight[w].empty())
            rep.violations.push_back({2, "no monomial of weight " + std::to_string(w), {}});
        else if (by_weight[w].size() > 1)
            rep.violations.push_back({2, "several monomials of weight " + std::to_string(w), by_weight[w]});
    }

    // saturation: everything between two comparable members is a member
    bool sat_reported = false;
    for (auto& lo : S) {
        if (sat_reported) break;
        for (auto& hi : S) {
            if (lo == hi || !lo.divides(hi)) continue;
            Vec3 d = sub(hi.e, lo.e);
            for (Int a = 0; a <= d[0] && !sat_reported; ++a)
                for (Int b = 0; b <= d[1] && !sat_reported; ++b)
                    for (Int c = 0; c <= d[2] && !sat_reported; ++c) {
                        Monomial p{add(lo.e, {a, b, c})};
                        if (!S.count(p)) {
                            rep.violations.push_back(
                                {3, to_string(p) + " divides " + to_string(hi) + " and is a multiple of " +
                                        to_string(lo) + " but is missing",
                                 {lo, p, hi}});
                            sat_reported = true;
                        }
                    }
            if (sat_reported) break;
        }
    }

    // connectivity of the x_i-step graph
    if (!S.empty()) {
        std::set<Monomial> seen;
        std::deque<Monomial> q;
        Monomial start = S.count(Monomial::one()) ? Monomial::one() : *S.begin();
        q.push_back(start);
        seen.insert(start);
        while (!q.empty()) {
            Monomial m = q.front();
            q.pop_front();
            for (int i = 0; i < 3; ++i)
                for (int s : {1, -1}) {
                    Monomial n = m;
                    n.e[i] += s;
                    if (S.count(n) && seen.insert(n).second) q.push_back(n);
                }
        }
        if (seen.size() != S.size()) {
            std::vector<Monomial> lost;
            for (auto& m : S)
                if (!seen.count(m)) lost.push_back(m);
            rep.violations.push_back({4, "not connected, " + std::to_string(lost.size()) +
                                             " monomials unreachable from " + to_string(start),
                                      lost});
        }
    }

    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const Violation& a, const Violation& b) { return a.axiom < b.axiom; });
    rep.valid = rep.violations.empty();
    if (rep.valid) {
        std::vector<Monomial> mons(r);
        for (Int w = 0; w < r; ++w) mons[w] = by_weight[w][0];
        rep.brick = BrickAccess::build(G, std::move(mons));
    }
    return rep;
}

GBrick make_brick(const GroupType& G, const std::vector<Monomial>& candidate) {
    auto rep = validate_prebrick(G, candidate);
    if (!rep.valid) {
        auto& v = rep.violations.front();
        throw ValidationError("not a G-prebrick, axiom (" + std::to_string(v.axiom) + "): " + v.message);
    }
    return *rep.brick;
}

Monomial wt_brick(const GBrick& B, const Monomial& m) { return B.at(B.group().weight_of(m)); }

SemigroupPresentation semigroup_generators(const GBrick& B) {
    std::set<Monomial> gens;
    for (auto& m : B.monomials())
        for (int i = 0; i < 3; ++i) {
            Monomial n = m * Monomial::var(i);
            Monomial g = n / wt_brick(B, n);
            if (!g.is_one()) gens.insert(g);
        }
    return {{gens.begin(), gens.end()}};
}

BrickCone brick_cone(const GBrick& B) {
    BrickCone bc;
    bc.rays = dual_of_monomials(B.group(), semigroup_generators(B).generators);
    // rank of the ray set
    int rank = 0;
    const auto& R = bc.rays;
    if (!R.empty()) rank = 1;
    for (std::size_t i = 0; i < R.size() && rank < 2; ++i)
        for (std::size_t j = i + 1; j < R.size(); ++j)
            if (!is_zero(cross(R[i].num, R[j].num))) {
                rank = 2;
                break;
            }
    if (rank == 2) {
        for (std::size_t i = 0; i < R.size() && rank < 3; ++i)
            for (std::size_t j = i + 1; j < R.size() && rank < 3; ++j)
                for (std::size_t l = j + 1; l < R.size(); ++l)
                    if (det3(R[i].num, R[j].num, R[l].num) != 0) {
                        rank = 3;
                        break;
                    }
    }
    bc.dimension = rank;
    return bc;
}

bool is_brick(const GBrick& B) { return brick_cone(B).dimension == 3; }

std::vector<Monomial> border_basis(const GBrick& B) {
    std::set<Monomial> out;
    for (auto& m : B.monomials())
        for (int i = 0; i < 3; ++i) {
            Monomial n = m * Monomial::var(i);
            if (!B.contains(n)) out.insert(n);
        }
    return {out.begin(), out.end()};
}

std::vector<std::vector<int>> successor_graph(const GBrick& B) {
    std::vector<std::vector<int>> succ(B.size());
    for (std::size_t w = 0; w < B.size(); ++w)
        for (int i = 0; i < 3; ++i) {
            Monomial n = B.at(static_cast<Int>(w)) * Monomial::var(i);
            if (B.contains(n)) succ[w].push_back(static_cast<int>(B.group().weight_of(n)));
        }
    return succ;
}

bool is_submodule_basis(const GBrick& B, const std::set<Int>& A) {
    auto succ = successor_graph(B);
    for (Int w : A) {
        if (w < 0 || w >= static_cast<Int>(B.size())) throw ValidationError("weight out of range");
        for (int s : succ[w])
            if (!A.count(s)) return false;
    }
    return true;
}

std::set<Int> closure_of(const GBrick& B, const std::set<Int>& A) {
    auto succ = successor_graph(B);
    std::set<Int> out = A;
    std::vector<Int> stack(A.begin(), A.end());
    while (!stack.empty()) {
        Int w = stack.back();
        stack.pop_back();
        for (int s : succ[w])
            if (out.insert(s).second) stack.push_back(s);
    }
    return out;
}

GBrick lift_brick(const RoundDownContext& ctx, const GBrick& sub) {
    if (!(sub.group() == ctx.subgroup()))
        throw ValidationError("brick is for " + sub.group().to_string() + ", context needs " +
                              ctx.subgroup().to_string());
    const GroupType& G = ctx.parent();
    std::size_t cap = 10 * static_cast<std::size_t>(G.order());
    std::set<Monomial> seen{Monomial::one()};
    std::deque<Monomial> q{Monomial::one()};
    while (!q.empty()) {
        Monomial m = q.front();
        q.pop_front();
        for (int i = 0; i < 3; ++i)
            for (int s : {1, -1}) {
                Monomial n = m;
                n.e[i] += s;
                if (seen.count(n) || !sub.contains(ctx.round_down(n))) continue;
                seen.insert(n);
                q.push_back(n);
                if (seen.size() > cap)
                    throw MathFailure("lift_diverged", "lifting explored more than 10r monomials; the "
                                                       "sub-brick or the subdivision is not admissible");
            }
    }
    if (static_cast<Int>(seen.size()) != G.order())
        throw MathFailure("lift_size", "lifted set has " + std::to_string(seen.size()) + " monomials, expected " +
                                           std::to_string(G.order()));
    return make_brick(G, {seen.begin(), seen.end()});
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::yes: return "yes";
        case Membership::no: return "no";
        case Membership::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct MemberSearch {
    const std::vector<Monomial>& gens;
    Vec3 height;
    std::size_t cap;
    std::unordered_map<Monomial, bool, MonomialHash> memo;
    bool overflow = false;

    bool run(const Monomial& m) {
        if (m.is_one()) return true;
        if (dot(height, m.e) <= 0) return false;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        if (memo.size() >= cap) {
            overflow = true;
            return false;
        }
        memo[m] = false;
        bool found = false;
        for (auto& g : gens) {
            if (run(m / g)) {
                found = true;
                break;
            }
            if (overflow) return false;
        }
        memo[m] = found;
        return found;
    }
};

}  // namespace

Membership semigroup_contains(const std::vector<Monomial>& gens, const Monomial& target,
                              const Vec3& height, std::size_t cap) {
    for (auto& g : gens)
        if (dot(height, g.e) <= 0) throw ValidationError("height is not positive on generator " + to_string(g));
    MemberSearch s{gens, height, cap, {}, false};
    bool ok = s.run(target);
    if (s.overflow) return Membership::inconclusive;
    return ok ? Membership::yes : Membership::no;
}

SDualReport check_S_equals_dual(const GBrick& B, const Cone& sigma) {
    SDualReport rep;
    const GroupType& G = B.group();
    auto gens = semigroup_generators(B).generators;
    for (auto& g : gens)
        for (auto& u : sigma.rays)
            if (dot(u.num, g.e) < 0) {
                rep.ok = false;
                rep.reason = "generator outside the dual cone";
                rep.witness = g;
                return rep;
            }
    auto bc = brick_cone(B);
    if (bc.dimension != 3 || bc.rays != sigma.sorted_rays()) {
        rep.ok = false;
        rep.reason = "brick cone differs from the given cone";
        return rep;
    }
    Vec3 h{0, 0, 0};
    for (auto& u : sigma.rays) h = add(h, u.num);
    for (auto& hb : hilbert_basis(G, sigma)) {
        auto res = semigroup_contains(gens, hb, h);
        if (res == Membership::yes) continue;
        rep.ok = false;
        rep.inconclusive = res == Membership::inconclusive;
        rep.reason = res == Membership::no ? "Hilbert basis element not generated"
                                           : "membership search inconclusive";
        rep.witness = hb;
        return rep;
    }
    return rep;
}

}  // namespace brickwork
