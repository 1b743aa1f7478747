#pragma once

#include "brickwork/brick.hpp"
#include "brickwork/lattice.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brickwork {

// rational function on the characters 0..r-1, summing to zero
class Theta {
public:
    Theta() = default;
    // throws ValidationError if the values do not sum to zero
    static Theta make(std::vector<Rational> values);
    static Theta zero(Int r) { return make(std::vector<Rational>(static_cast<std::size_t>(r))); }

    std::size_t size() const { return v_.size(); }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Rational>& values() const { return v_; }
    bool is_zero() const;
    Rational on(const std::set<Int>& A) const;
    Rational on(const std::vector<int>& A) const;

    friend Theta operator+(const Theta& a, const Theta& b);
    friend Theta operator*(const Rational& c, const Theta& a);
    friend bool operator==(const Theta&, const Theta&) = default;

private:
    std::vector<Rational> v_;
};

std::string to_string(const Theta& t);

Theta theta_basis(const GroupType& G, Int i);
Theta theta_plus(const GroupType& G);
Theta pushforward(const RoundDownContext& ctx, const Theta& theta);

struct SolveResult {
    bool feasible = false;
    bool surjective = false;
    int rank = 0;        // rank of the combined pushforward on Theta
    int target_dim = 0;  // sum of (a_k - 1)
    std::optional<Theta> theta;
    std::string message;
};

// rank of Theta -> (+)_k Theta^(k)
int pushforward_rank(const GroupType& G, const std::vector<RoundDownContext>& ctxs);

// targets[k] may be empty for a trivial subgroup
SolveResult solve_partial(const GroupType& G, const std::vector<RoundDownContext>& ctxs,
                          const std::vector<std::optional<Theta>>& targets);

enum class FamilyKind { case1, case2a, case2b, none };
std::string to_string(FamilyKind k);

struct FamilyTag {
    FamilyKind kind = FamilyKind::none;
    Int a = 0, b = 0, c = 0, k = 0;
    Int r = 0;
    Int t = 1;          // class of the center (1,a,b)/r in the group's own presentation
    LatticePoint center;
    std::array<int, 3> slots{0, 1, 2};  // positions of the weights 1, a, b
    bool catalog_supported = false;
    std::string note;
};

// parameters only; the catalog formula in weights of the normalized presentation
Theta vartheta_formula(FamilyKind kind, Int a, Int b, Int c, Int k = 0);
// catalog value re-indexed to the group's own characters (ρ ↦ t·ρ)
Theta vartheta_catalog(const GroupType& G, const FamilyTag& tag);
// user supplied piecewise values; must be nonzero and sum to zero
Theta vartheta_custom(const GroupType& G, std::vector<Rational> values);

struct VarthetaCheck {
    int axis = 0;
    bool pushforward_zero = true;
    bool negative_low = true;
    bool fiber_positive = true;
    std::string witness;
    bool all() const { return pushforward_zero && negative_low && fiber_positive; }
};
std::vector<VarthetaCheck> check_vartheta_properties(const std::vector<RoundDownContext>& ctxs,
                                                     const Theta& vartheta);

struct AffineValue {
    Rational constant, slope;  // constant + slope * m
    Rational at(const Rational& m) const { return constant + slope * m; }
    friend bool operator==(const AffineValue&, const AffineValue&) = default;
};

struct StabilityMargin {
    bool vacuous = false;  // no nonempty proper closed subsets (r = 1)
    Rational value;
    std::optional<AffineValue> symbolic;
    std::vector<int> witness;  // weights of the attaining closed set, sorted
    bool stable() const { return vacuous || value > 0; }
};

StabilityMargin min_margin(const GBrick& B, const Theta& theta);
StabilityMargin min_margin_bruteforce(const GBrick& B, const Theta& theta);
// margin of theta_P + m vartheta for all sufficiently large m: lexicographic minimum of
// (slope, constant) over closed sets
StabilityMargin min_margin_symbolic(const GBrick& B, const Theta& theta_p, const Theta& vartheta);
// margin at a given m, with the affine form of theta on the witness
StabilityMargin margin_at(const GBrick& B, const Theta& theta_p, const Theta& vartheta, Int m);

struct FindMResult {
    bool found = false;
    Int m = 0;
    std::vector<StabilityMargin> margins;  // at m
    std::vector<Int> thresholds;           // per brick minimal m, -1 if none up to m_max
    int worst_brick = -1;
    std::string message;
};

FindMResult find_m(const std::vector<GBrick>& bricks, const Theta& theta_p, const Theta& vartheta,
                   Int m_max = Int{1} << 20);

}  // namespace brickwork
