#pragma once

#include "brickwork/brick.hpp"
#include "brickwork/fan.hpp"
#include "brickwork/lattice.hpp"
#include "brickwork/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace brickwork {

struct BricksetEntry {
    Cone cone;
    GBrick brick;
};

struct Brickset {
    GroupType group;
    std::vector<BricksetEntry> entries;

    std::vector<GBrick> bricks() const;
    Fan fan() const;
};

// all torus-fixed G-clusters with a full-dimensional cone; r <= 60
Brickset ghilb(const GroupType& G);
// fan of G-Hilb alone
Fan ghilb_fan(const GroupType& G);

// the x_k power chain for a smooth chart (a_k = 1)
GBrick smooth_cone_brick(const RoundDownContext& ctx);

// the star subdivision chart sigma_k as a cone of L
Cone chart_cone(const RoundDownContext& ctx);

struct RestrictResult {
    bool ok = false;
    std::vector<Fan> subfans;                     // one per chart, in L_k coordinates
    std::vector<std::vector<int>> source_cones;   // cone indices of the input fan per chart
    std::vector<int> straddling;                  // input cones inside no chart
    std::string message;
};
RestrictResult restrict_fan(const Fan& fan, const std::vector<RoundDownContext>& ctxs);
// single chart, throws MathFailure("no_morphism") when a cone straddles
Fan restrict_fan(const Fan& fan, const RoundDownContext& ctx);

std::vector<RoundDownContext> chart_contexts(const GroupType& G, const LatticePoint& v);

enum class StrategyKind { automatic, trivial, ghilb, recurse, load };
std::string to_string(StrategyKind k);

struct Strategy {
    StrategyKind kind = StrategyKind::automatic;
    std::optional<LatticePoint> center;  // recurse: center in L_k coordinates, empty = search
    std::optional<Brickset> loaded;      // load: a G_k brickset

    static Strategy automatic() { return {}; }
    static Strategy trivial() { return {StrategyKind::trivial, {}, {}}; }
    static Strategy ghilb() { return {StrategyKind::ghilb, {}, {}}; }
    static Strategy recurse(std::optional<LatticePoint> c = {}) { return {StrategyKind::recurse, c, {}}; }
    static Strategy load(Brickset b) { return {StrategyKind::load, {}, std::move(b)}; }
};

// how a brickset was assembled
struct BuildNode {
    GroupType group;
    Fan fan;
    StrategyKind kind = StrategyKind::trivial;  // trivial, ghilb, load, or recurse for a subdivided node
    std::optional<LatticePoint> center;
    std::vector<BuildNode> children;  // one per chart when subdivided
    Brickset brickset;
    std::vector<std::string> log;
};

// throws MathFailure when some chart cannot be filled
BuildNode build_node(const GroupType& G, const Fan& fan, const LatticePoint& v,
                     const std::vector<Strategy>& strategies);
// picks ghilb or trivial when the fan matches, otherwise searches a center
BuildNode build_node_auto(const GroupType& G, const Fan& fan);

Brickset build_brickset(const GroupType& G, const Fan& fan, const LatticePoint& v,
                        const std::vector<Strategy>& strategies);

struct EntryReport {
    int index = 0;
    bool prebrick = false;
    bool brick = false;
    bool s_dual = false;
    std::string message;
    bool ok() const { return prebrick && brick && s_dual; }
};

struct BricksetReport {
    bool ok = false;
    std::vector<EntryReport> entries;
    bool distinct_cones = true;
    TileReport tiling;
};
BricksetReport verify_brickset(const Brickset& B);

std::vector<FamilyTag> detect_family(const GroupType& G);

// cones of the canonical model for a family tag, regenerated from v and w
struct CanonicalModel {
    LatticePoint v, w;
    std::vector<std::string> names;  // sigma labels
    std::vector<Cone> cones;
    Fan fan;
};
LatticePoint canonical_w(const GroupType& G, const FamilyTag& tag);
CanonicalModel canonical_model_fan(const GroupType& G, const FamilyTag& tag);

struct ConeModelRow {
    int cone = 0;
    bool simplicial = false;
    Classification cls;
};

struct ModelReport {
    bool tiles = false;
    bool simplicial = false;
    bool terminal = false;  // every cone terminal or smooth
    bool smooth = false;
    NefReport nef;
    std::vector<ConeModelRow> cones;
    std::vector<Discrepancy> discrepancies;
    std::string message;
    bool minimal_model() const { return tiles && simplicial && terminal && nef.applicable && nef.nef; }
};
ModelReport certify_model(const GroupType& G, const Fan& fan);

struct Attempt {
    std::string center;  // printable
    std::string stage;   // restrict, build, solve, vartheta, find_m, ok
    std::string message;
    int rank = -1, target_dim = -1;
};

struct StabilityCertificate {
    GroupType group;
    Fan fan;
    std::optional<LatticePoint> center;  // empty when the fan is G-Hilb itself
    std::optional<FamilyTag> tag;
    std::vector<StrategyKind> strategies;
    Brickset brickset;
    std::vector<Theta> targets;  // theta^(k), empty Theta for trivial charts
    Theta theta_p, vartheta;
    Int m = 0;
    std::vector<Int> thresholds;
    std::vector<StabilityMargin> margins;          // at m
    std::vector<StabilityMargin> symbolic;         // for large m
    std::vector<VarthetaCheck> vartheta_checks;
    int rank = 0, target_dim = 0;
    std::vector<Attempt> attempts;

    Theta theta() const { return theta_p + Rational(m) * vartheta; }
};

struct EndToEndOptions {
    std::optional<Theta> vartheta;  // overrides the catalog at the top level
    Int m_max = Int{1} << 20;
};

struct EndToEndResult {
    std::optional<StabilityCertificate> certificate;
    std::string stage;  // of the last failure
    std::string message;
    int rank = -1, target_dim = -1;
    std::vector<Attempt> attempts;
    bool ok() const { return certificate.has_value(); }
};

EndToEndResult end_to_end(const GroupType& G, const Fan& fan, const EndToEndOptions& opt = {});
// same with a fixed center
EndToEndResult end_to_end_at(const GroupType& G, const Fan& fan, const LatticePoint& v,
                             const EndToEndOptions& opt = {});

}  // namespace brickwork
