#pragma once

#include "brickwork/fan.hpp"
#include "brickwork/pipeline.hpp"
#include "brickwork/stability.hpp"

#include <vector>

namespace oracle {

using namespace brickwork;

// every nonempty proper subset closed under x_i-successors inside the brick, by DFS
// with in/out propagation; weights of members per set
std::vector<std::vector<int>> closed_sets(const GBrick& B);

// minimum of theta over closed_sets, or nullopt if there are none
std::optional<Rational> min_margin(const GBrick& B, const Theta& theta);

// smallest m >= 1 with theta_p + m*vartheta stable on every brick, scanning m = 1..m_max
std::optional<Int> minimal_m(const std::vector<GBrick>& bricks, const Theta& theta_p,
                             const Theta& vartheta, Int m_max);

// Reid's criterion by enumerating L-points in the box around the cone's unit simplex
ConeKind reid_kind(const GroupType& G, const Cone& c);

// rank of Theta -> (+)_k Theta^(k) computed from round-down weights of sample monomials
int pushforward_rank(const GroupType& G, const std::vector<RoundDownContext>& ctxs);

// irreducible elements of the dual cone in M, searching exponents in [-B, B]^3
std::vector<Monomial> hilbert_basis(const GroupType& G, const Cone& c, Int B);

// exact rank of a rational matrix
int rank(std::vector<std::vector<Rational>> rows);

}  // namespace oracle
