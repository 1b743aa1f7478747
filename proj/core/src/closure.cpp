#include "brickwork/closure.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace brickwork {

MaxFlow::MaxFlow(int n) : n_(n), adj_(n), level_(n), it_(n) {}

void MaxFlow::add_edge(int u, int v, std::int64_t cap) {
    adj_[u].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({u, 0});
}

bool MaxFlow::bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> q{s};
    level_[s] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int id : adj_[u]) {
            auto& e = edges_[id];
            if (e.cap > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[u] + 1;
                q.push_back(e.to);
            }
        }
    }
    return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int u, int t, std::int64_t f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
        int id = adj_[u][i];
        auto& e = edges_[id];
        if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
        std::int64_t d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
            e.cap -= d;
            edges_[id ^ 1].cap += d;
            return d;
        }
    }
    return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
        std::fill(it_.begin(), it_.end(), 0);
        while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
}

std::vector<bool> MaxFlow::source_side(int s) const {
    std::vector<bool> seen(n_, false);
    std::deque<int> q{s};
    seen[s] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int id : adj_[u]) {
            auto& e = edges_[id];
            if (e.cap > 0 && !seen[e.to]) {
                seen[e.to] = true;
                q.push_back(e.to);
            }
        }
    }
    return seen;
}

ClosureSolution min_weight_closure(const std::vector<std::vector<int>>& succ,
                                   const std::vector<std::int64_t>& weight,
                                   const std::vector<int>& forced_in,
                                   const std::vector<int>& forced_out) {
    int n = static_cast<int>(succ.size());
    // forced-in nodes drag their descendants in; forced-out nodes drag their ancestors out
    std::vector<char> in(n, 0), out(n, 0);
    std::vector<int> stack(forced_in.begin(), forced_in.end());
    for (int v : forced_in) in[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : succ[u])
            if (!in[w]) {
                in[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<std::vector<int>> pred(n);
    for (int u = 0; u < n; ++u)
        for (int w : succ[u]) pred[w].push_back(u);
    stack.assign(forced_out.begin(), forced_out.end());
    for (int v : forced_out) out[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : pred[u])
            if (!out[w]) {
                out[w] = 1;
                stack.push_back(w);
            }
    }
    ClosureSolution sol;
    for (int v = 0; v < n; ++v)
        if (in[v] && out[v]) return sol;
    sol.feasible = true;

    std::int64_t big = 1;
    for (auto w : weight) {
        std::int64_t a = w < 0 ? -w : w;
        if (a > std::numeric_limits<std::int64_t>::max() / 4 - big)
            throw std::overflow_error("closure weights too large");
        big += a;
    }
    // maximise profit -w over closed sets: project selection
    int s = n, t = n + 1;
    MaxFlow mf(n + 2);
    for (int v = 0; v < n; ++v) {
        std::int64_t p = -weight[v];
        if (in[v]) mf.add_edge(s, v, big);
        if (out[v]) mf.add_edge(v, t, big);
        if (p > 0) {
            mf.add_edge(s, v, p);
        } else if (p < 0) {
            mf.add_edge(v, t, -p);
        }
        for (int w : succ[v]) mf.add_edge(v, w, big);
    }
    mf.run(s, t);
    auto side = mf.source_side(s);
    for (int v = 0; v < n; ++v)
        if (side[v]) {
            sol.members.push_back(v);
            sol.value += weight[v];
        }
    return sol;
}

}  // namespace brickwork
