#pragma once

#include "brickwork/arith.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace brickwork {

// Laurent monomial x^e1 y^e2 z^e3
struct Monomial {
    Vec3 e{0, 0, 0};

    static Monomial one() { return {}; }
    static Monomial var(int i) {
        Monomial m;
        m.e[i] = 1;
        return m;
    }
    bool is_one() const { return is_zero(e); }
    bool is_genuine() const { return e[0] >= 0 && e[1] >= 0 && e[2] >= 0; }
    Int degree() const { return e[0] + e[1] + e[2]; }
    Monomial inverse() const { return {{-e[0], -e[1], -e[2]}}; }
    // true if this divides other with a genuine quotient
    bool divides(const Monomial& other) const {
        return other.e[0] >= e[0] && other.e[1] >= e[1] && other.e[2] >= e[2];
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) { return {add(a.e, b.e)}; }
    friend Monomial operator/(const Monomial& a, const Monomial& b) { return {sub(a.e, b.e)}; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

std::string to_string(const Monomial& m, const char* vars = "xyz");

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ull;
        for (Int x : m.e) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

// the point (1/den) * num; den is the order of the owning group
struct LatticePoint {
    Vec3 num{0, 0, 0};
    Int den = 1;

    QVec3 coords() const {
        return {frac(num[0], den), frac(num[1], den), frac(num[2], den)};
    }
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::string to_string(const LatticePoint& p);

struct MembershipReport {
    bool in_lattice = false;
    std::optional<Int> t;  // class with p = (t/r) alpha mod Z^3
    bool primitive = false;
    std::optional<LatticePoint> point;
};

class GroupType {
public:
    GroupType() : r_(1), w_{0, 0, 0} {}
    // throws ValidationError for r < 1 or an unfaithful presentation
    static GroupType make(Int r, const Vec3& weights);
    // "1/20(1,3,4)"
    static GroupType parse(const std::string& text);

    Int order() const { return r_; }
    const Vec3& weights() const { return w_; }
    bool trivial() const { return r_ == 1; }

    Int weight_of(const Monomial& m) const { return mod(dot(w_, m.e), r_); }

    // class t of a numerator triple over r, if the point lies in L
    std::optional<Int> lattice_class(const Vec3& num) const;
    bool contains(const LatticePoint& p) const;
    bool is_primitive(const LatticePoint& p) const;
    MembershipReport lattice_member(const QVec3& p) const;
    bool in_M(const Monomial& m) const { return weight_of(m) == 0; }

    LatticePoint axis(int i) const;
    LatticePoint point(const Vec3& num) const { return {num, r_}; }
    // the lattice point of class t reduced into [0,r)^3
    LatticePoint class_point(Int t) const;
    // primitive L-point on the ray through an integer direction
    LatticePoint primitive_on_ray(const Vec3& dir) const;
    // smallest positive multiple of an integer direction lying in M
    Monomial primitive_in_M(const Vec3& dir) const;

    std::string to_string() const;

    friend bool operator==(const GroupType&, const GroupType&) = default;

private:
    Int r_;
    Vec3 w_;
};

// Star subdivision chart data: the cone sigma_k with v in slot k.
// Axis indices are 0-based here; the CLI and documents use 1-based.
class RoundDownContext {
public:
    static RoundDownContext make(const GroupType& G, const LatticePoint& v, int k);

    const GroupType& parent() const { return parent_; }
    const LatticePoint& center() const { return v_; }
    int axis() const { return k_; }
    Int a(int i) const { return v_.num[i]; }
    Int a_k() const { return v_.num[k_]; }
    // class of v in L/Z^3
    Int t() const { return t_; }
    const GroupType& subgroup() const { return sub_; }
    // exponents of xi_j in terms of x
    const std::array<QVec3, 3>& eigenbasis() const { return basis_; }

    // phi_k, result in xi exponents
    Monomial round_down(const Monomial& m) const;
    // chi image of a character of G
    Int induced_character(Int rho) const;
    // xi exponents -> (possibly fractional) x exponents
    QVec3 to_x_exponents(const Monomial& xi) const;
    // integral M-element in x exponents -> xi exponents (throws if not expressible)
    Monomial from_x_invariant(const Monomial& m) const;

    // L point <-> L_k point (basis e_j, v in slot k)
    LatticePoint to_sub(const LatticePoint& p) const;
    LatticePoint from_sub(const LatticePoint& q) const;

private:
    GroupType parent_;
    LatticePoint v_;
    int k_ = 0;
    Int t_ = 1;
    GroupType sub_;
    std::array<QVec3, 3> basis_;
};

struct GoodnessReport {
    bool good = true;
    std::vector<std::string> violations;
};

GoodnessReport is_good_subdivision(const GroupType& G, const LatticePoint& v);

// v must be an interior primitive point of L with a unit class
void require_center(const GroupType& G, const LatticePoint& v);

}  // namespace brickwork
