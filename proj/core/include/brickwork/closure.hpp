#pragma once

#include <cstdint>
#include <vector>

namespace brickwork {

// Minimum-weight closure on a digraph: a set S is closed when every successor of a
// member is a member. Weights are integers; solved by one s-t min cut.
struct ClosureSolution {
    bool feasible = false;
    std::int64_t value = 0;
    std::vector<int> members;  // sorted
};

ClosureSolution min_weight_closure(const std::vector<std::vector<int>>& succ,
                                   const std::vector<std::int64_t>& weight,
                                   const std::vector<int>& forced_in,
                                   const std::vector<int>& forced_out);

// plain Dinic max-flow, exposed for tests
class MaxFlow {
public:
    explicit MaxFlow(int n);
    void add_edge(int u, int v, std::int64_t cap);
    std::int64_t run(int s, int t);
    // vertices reachable from s in the residual graph after run()
    std::vector<bool> source_side(int s) const;

private:
    struct Edge {
        int to;
        std::int64_t cap;
    };
    bool bfs(int s, int t);
    std::int64_t dfs(int u, int t, std::int64_t f);

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_, it_;
};

}  // namespace brickwork
