#pragma once

#include "brickwork/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace brickwork {

// Full-dimensional pointed cone in L_R. Rays are primitive L-points.
// Three rays (simplicial) or four (the planar quadrilateral-section case).
struct Cone {
    std::vector<LatticePoint> rays;

    bool simplicial() const;
    // rays sorted lexicographically, used for equality as a set
    std::vector<LatticePoint> sorted_rays() const;
    bool same_as(const Cone& other) const { return sorted_rays() == other.sorted_rays(); }
};

// throws ValidationError when the rays do not span a valid cone
Cone make_cone(const GroupType& G, std::vector<LatticePoint> rays);
Cone positive_octant(const GroupType& G);

// rays of a 3D pointed cone in cyclic order around its axis
std::vector<LatticePoint> cyclic_rays(const Cone& c);
// primitive integer inward facet normals, one per facet, in cyclic order
std::vector<Vec3> facet_normals(const Cone& c);
bool cone_contains(const Cone& c, const Vec3& num);
// the point lies in the relative interior of the cone
bool cone_interior(const Cone& c, const Vec3& num);

struct Fan {
    GroupType group;
    std::vector<LatticePoint> rays;
    std::vector<std::vector<int>> cones;

    static Fan from_cones(const GroupType& G, const std::vector<Cone>& cs);
    Cone cone(std::size_t i) const;
    std::vector<Cone> all_cones() const;
    // rays sorted lexicographically, cone index lists sorted, cones sorted
    Fan canonical() const;
    int ray_index(const LatticePoint& p) const;
};

bool operator==(const Fan& a, const Fan& b);

// minimal fan containing Cone(tau, v) for faces tau of the cones around v
Fan star_subdivide(const GroupType& G, const Cone& c, const LatticePoint& v);
Fan star_subdivide(const Fan& fan, const LatticePoint& v);

std::vector<Monomial> dual_generators(const GroupType& G, const Cone& c);
// rays of the cone dual to a set of M directions; empty if not full-dimensional
std::vector<LatticePoint> dual_of_monomials(const GroupType& G, const std::vector<Monomial>& gens);

std::vector<Monomial> hilbert_basis(const GroupType& G, const Cone& c);

enum class ConeKind { smooth, terminal, canonical, none };
std::string to_string(ConeKind k);

struct Classification {
    bool applicable = true;
    ConeKind kind = ConeKind::none;
    bool gorenstein = false;
    QVec3 support{0, 0, 0};  // m with <u, m> = 1 on every ray
    std::string note;
};

std::optional<QVec3> support_monomial(const GroupType& G, const Cone& c);
Classification classify_cone(const GroupType& G, const Cone& c);

struct Discrepancy {
    LatticePoint ray;
    Rational value;
};
std::vector<Discrepancy> discrepancies(const GroupType& G, const Fan& fan);
Rational discrepancy(const GroupType& G, const LatticePoint& u);

struct NefReport {
    bool applicable = true;
    bool nef = true;
    int cone = -1;
    int ray = -1;
    Rational value;  // <u, m_sigma> at the witness
    std::string note;
};
NefReport is_relatively_nef_K(const GroupType& G, const Fan& fan);

std::vector<LatticePoint> coplanar_lattice_points(const GroupType& G,
                                                  const std::vector<LatticePoint>& spanning,
                                                  const Cone& region);

struct TileReport {
    bool tiles = true;
    Rational covered;
    Rational ambient;
    std::string message;
};
TileReport cones_tile(const std::vector<Cone>& cones, const Cone& ambient);
TileReport cones_tile(const Fan& fan, const Cone& ambient);

}  // namespace brickwork
