#include "brickwork/io.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace brickwork;

namespace {

const GroupType& g20() {
    static GroupType G = GroupType::parse("1/20(1,3,4)");
    return G;
}

LatticePoint v20() { return {{1, 3, 4}, 20}; }

// ghilb memoizes per group, so each pass runs over groups not seen before
void BM_GHilb(benchmark::State& st) {
    Int r = st.range(0), b = 2;
    std::size_t groups = 0;
    for (auto _ : st) {
        while (b < r && std::gcd(b, r) != 1) ++b;
        if (b >= r) {
            st.SkipWithError("ran out of fresh groups");
            break;
        }
        benchmark::DoNotOptimize(ghilb(GroupType::make(r, {1, b, r - 1 - b})));
        ++b;
        ++groups;
    }
    st.counters["groups"] = static_cast<double>(groups);
}
BENCHMARK(BM_GHilb)->Arg(31)->Arg(41)->Iterations(8)->Unit(benchmark::kMillisecond);

void BM_LiftBrick(benchmark::State& st) {
    auto ctx = RoundDownContext::make(g20(), v20(), 2);
    auto sub = ghilb(ctx.subgroup()).entries.front().brick;
    for (auto _ : st) benchmark::DoNotOptimize(lift_brick(ctx, sub));
}
BENCHMARK(BM_LiftBrick);

void BM_MinMargin(benchmark::State& st) {
    auto G = GroupType::make(st.range(0), {1, 2, st.range(0) - 3});
    auto bricks = ghilb(G).bricks();
    auto th = theta_plus(G);
    for (auto _ : st)
        for (auto& b : bricks) benchmark::DoNotOptimize(min_margin(b, th));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(bricks.size()));
}
BENCHMARK(BM_MinMargin)->Arg(7)->Arg(20)->Arg(31);

void BM_MinMarginBruteForce(benchmark::State& st) {
    auto G = GroupType::make(st.range(0), {1, 2, st.range(0) - 3});
    auto b = ghilb(G).bricks().front();
    auto th = theta_plus(G);
    for (auto _ : st) benchmark::DoNotOptimize(min_margin_bruteforce(b, th));
}
BENCHMARK(BM_MinMarginBruteForce)->Arg(7)->Arg(11)->Arg(14);

void BM_HilbertBasis(benchmark::State& st) {
    auto G = GroupType::parse("1/39(1,5,11)");
    auto c = positive_octant(G);
    for (auto _ : st) benchmark::DoNotOptimize(hilbert_basis(G, c));
}
BENCHMARK(BM_HilbertBasis);

void BM_EndToEndModel20(benchmark::State& st) {
    auto f = star_subdivide(g20(), positive_octant(g20()), v20());
    std::vector<Cone> cones;
    for (auto& ctx : chart_contexts(g20(), v20()))
        for (auto& c : ghilb_fan(ctx.subgroup()).all_cones()) {
            std::vector<LatticePoint> rays;
            for (auto& p : c.rays) rays.push_back(ctx.from_sub(p));
            cones.push_back(make_cone(g20(), rays));
        }
    auto fan = Fan::from_cones(g20(), cones);
    for (auto _ : st) benchmark::DoNotOptimize(end_to_end(g20(), fan));
}
BENCHMARK(BM_EndToEndModel20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
