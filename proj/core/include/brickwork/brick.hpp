#pragma once

#include "brickwork/fan.hpp"
#include "brickwork/lattice.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brickwork {

// r Laurent monomials, entry w has weight w
class GBrick {
public:
    GBrick() = default;
    const GroupType& group() const { return G_; }
    const std::vector<Monomial>& monomials() const { return mons_; }
    std::size_t size() const { return mons_.size(); }
    const Monomial& at(Int w) const { return mons_.at(static_cast<std::size_t>(w)); }
    bool contains(const Monomial& m) const { return mons_[G_.weight_of(m)] == m; }

    friend bool operator==(const GBrick&, const GBrick&) = default;

private:
    friend struct BrickAccess;
    GroupType G_;
    std::vector<Monomial> mons_;
};

struct Violation {
    int axiom = 0;  // 1..4 as in the brick axioms, 0 for size problems
    std::string message;
    std::vector<Monomial> witness;
};

struct PrebrickReport {
    bool valid = false;
    std::vector<Violation> violations;
    std::optional<GBrick> brick;
};

PrebrickReport validate_prebrick(const GroupType& G, const std::vector<Monomial>& candidate);
// throws ValidationError with the first violation
GBrick make_brick(const GroupType& G, const std::vector<Monomial>& candidate);

Monomial wt_brick(const GBrick& B, const Monomial& m);

struct SemigroupPresentation {
    std::vector<Monomial> generators;
};
SemigroupPresentation semigroup_generators(const GBrick& B);

struct BrickCone {
    std::vector<LatticePoint> rays;  // sorted
    int dimension = 0;
    Cone cone() const { return {rays}; }
};
BrickCone brick_cone(const GBrick& B);
bool is_brick(const GBrick& B);

std::vector<Monomial> border_basis(const GBrick& B);

// succ[w] = weights w' with x_i * m_w = m_w' for some i
std::vector<std::vector<int>> successor_graph(const GBrick& B);
bool is_submodule_basis(const GBrick& B, const std::set<Int>& A);
// smallest closed set containing A
std::set<Int> closure_of(const GBrick& B, const std::set<Int>& A);

GBrick lift_brick(const RoundDownContext& ctx, const GBrick& sub);

enum class Membership { yes, no, inconclusive };
std::string to_string(Membership m);

// decide target in the semigroup generated by gens, descending the height <height, .>,
// which must be positive on every generator
Membership semigroup_contains(const std::vector<Monomial>& gens, const Monomial& target,
                              const Vec3& height, std::size_t cap = 10000);

struct SDualReport {
    bool ok = true;
    bool inconclusive = false;
    std::string reason;
    std::optional<Monomial> witness;
};
SDualReport check_S_equals_dual(const GBrick& B, const Cone& sigma);

}  // namespace brickwork
