#pragma once

#include "brickwork/io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fx {

using namespace brickwork;

std::string fixture_path(const std::string& name);
std::string read_text(const std::string& path);

Fan load_fan(const std::string& name);
Theta load_theta(const std::string& name);
GroupType load_group(const std::string& name);

inline Monomial mono(Int a, Int b, Int c) { return {{a, b, c}}; }
inline LatticePoint pt(Int r, Vec3 n) { return {n, r}; }

Cone cone_of(const GroupType& G, const std::vector<Vec3>& nums);

// 1/39(1,5,11): v_i is the class point (i, 5i, 11i) mod 39
Vec3 v39(Int i);

// typed in from the 1/20(1,3,4) worked example
std::vector<Monomial> gamma1_printed();
std::vector<Monomial> gamma2_printed();
std::vector<Monomial> set_A_printed();
std::vector<Monomial> set_B_printed();
// theta_P + m*vartheta as displayed case by case, for integer m
std::vector<Rational> example_theta_values(Int m);

// groups the property suites run over
std::vector<GroupType> fixture_groups();

// interior class points of unit class
std::vector<LatticePoint> interior_centers(const GroupType& G);

// simplicial cones drawn from the fixture fans and star subdivisions of small groups
std::vector<std::pair<GroupType, Cone>> fixture_cones(Int rmax);

struct Lifted {
    RoundDownContext ctx;
    GBrick sub, brick;
};
// every G-Hilb brick of every chart group, lifted, for a few groups and centers
const std::vector<Lifted>& lifted_fixture_bricks();

// G-Hilb bricks of fixture groups with r <= 14 plus lifted chart bricks of two of them
std::vector<GBrick> margin_bricks();

}  // namespace fx
