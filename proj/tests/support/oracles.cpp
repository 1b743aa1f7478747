#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

std::vector<std::vector<int>> closed_sets(const GBrick& B) {
    int r = static_cast<int>(B.size());
    std::map<Monomial, int> index;
    for (int w = 0; w < r; ++w) index[B.at(w)] = w;
    std::vector<std::vector<int>> succ(r), pred(r);
    for (int w = 0; w < r; ++w)
        for (int i = 0; i < 3; ++i) {
            auto it = index.find(B.at(w) * Monomial::var(i));
            if (it != index.end() && it->second != w) {
                succ[w].push_back(it->second);
                pred[it->second].push_back(w);
            }
        }
    std::vector<std::vector<int>> out;
    std::vector<int> state(r, 0);  // 0 undecided, 1 in, -1 out
    std::function<bool(int, int)> force = [&](int v, int s) {
        if (state[v] == s) return true;
        if (state[v] == -s) return false;
        state[v] = s;
        for (int u : (s == 1 ? succ[v] : pred[v]))
            if (!force(u, s)) return false;
        return true;
    };
    std::function<void(int)> go = [&](int v) {
        if (v == r) {
            std::vector<int> A;
            for (int i = 0; i < r; ++i)
                if (state[i] == 1) A.push_back(i);
            if (!A.empty() && static_cast<int>(A.size()) < r) out.push_back(A);
            return;
        }
        if (state[v] != 0) {
            go(v + 1);
            return;
        }
        for (int s : {1, -1}) {
            auto saved = state;
            if (force(v, s)) go(v + 1);
            state = saved;
        }
    };
    go(0);
    return out;
}

std::optional<Rational> min_margin(const GBrick& B, const Theta& theta) {
    std::optional<Rational> best;
    for (auto& A : closed_sets(B)) {
        Rational s = 0;
        for (int w : A) s += theta[w];
        if (!best || s < *best) best = s;
    }
    return best;
}

std::optional<Int> minimal_m(const std::vector<GBrick>& bricks, const Theta& theta_p,
                             const Theta& vartheta, Int m_max) {
    // every closed set contributes an affine function p + q m
    std::vector<std::pair<Rational, Rational>> forms;
    for (auto& B : bricks)
        for (auto& A : closed_sets(B)) {
            Rational p = 0, q = 0;
            for (int w : A) {
                p += theta_p[w];
                q += vartheta[w];
            }
            forms.emplace_back(p, q);
        }
    for (Int m = 1; m <= m_max; ++m) {
        bool ok = std::all_of(forms.begin(), forms.end(),
                              [&](auto& f) { return f.first + f.second * m > 0; });
        if (ok) return m;
    }
    return std::nullopt;
}

namespace {

// rational solve of a 3x3 system with rows as the rays: <ray_i, m> = 1
std::optional<QVec3> support(const std::vector<LatticePoint>& rays) {
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(4));
    for (int i = 0; i < 3; ++i) {
        auto c = rays[i].coords();
        for (int j = 0; j < 3; ++j) a[i][j] = c[j];
        a[i][3] = 1;
    }
    for (int col = 0; col < 3; ++col) {
        int p = col;
        while (p < 3 && a[p][col] == 0) ++p;
        if (p == 3) return std::nullopt;
        std::swap(a[p], a[col]);
        for (int i = 0; i < 3; ++i)
            if (i != col && a[i][col] != 0) {
                Rational f = a[i][col] / a[col][col];
                for (int j = col; j < 4; ++j) a[i][j] -= f * a[col][j];
            }
    }
    return QVec3{a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

}  // namespace

ConeKind reid_kind(const GroupType& G, const Cone& c) {
    Int r = G.order();
    auto& R = c.rays;
    Int d = det3(R[0].num, R[1].num, R[2].num);
    // L has covolume 1/r, so a basis of L has |det| = r^3 / r
    if (d == r * r || d == -r * r) return ConeKind::smooth;
    auto m = support(R);
    if (!m) return ConeKind::none;
    // {u in c : <u,m> <= 1} is the simplex on 0 and the rays; scan its bounding box
    Vec3 lo{0, 0, 0}, hi{0, 0, 0};
    for (auto& p : R)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], p.num[i]);
            hi[i] = std::max(hi[i], p.num[i]);
        }
    bool terminal = true, canonical = true;
    for (Int a = lo[0]; a <= hi[0]; ++a)
        for (Int b = lo[1]; b <= hi[1]; ++b)
            for (Int e = lo[2]; e <= hi[2]; ++e) {
                Vec3 n{a, b, e};
                if (is_zero(n) || !G.lattice_class(n) || !cone_contains(c, n)) continue;
                Rational h = (Rational(a) * (*m)[0] + Rational(b) * (*m)[1] + Rational(e) * (*m)[2]) / r;
                if (h < 1) canonical = false;
                if (h <= 1 && std::find_if(R.begin(), R.end(), [&](auto& p) { return p.num == n; }) == R.end())
                    terminal = false;
            }
    if (terminal) return ConeKind::terminal;
    if (canonical) return ConeKind::canonical;
    return ConeKind::none;
}

int rank(std::vector<std::vector<Rational>> rows) {
    int rk = 0;
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    for (std::size_t col = 0; col < cols && rk < static_cast<int>(rows.size()); ++col) {
        std::size_t p = rk;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rk]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rk && rows[i][col] != 0) {
                Rational f = rows[i][col] / rows[rk][col];
                for (std::size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[rk][j];
            }
        ++rk;
    }
    return rk;
}

int pushforward_rank(const GroupType& G, const std::vector<RoundDownContext>& ctxs) {
    Int r = G.order();
    // a genuine monomial x^i realizes weight i only when alpha_1 is a unit; search a small box
    std::vector<std::optional<Monomial>> rep(r);
    for (Int a = 0; a < r; ++a)
        for (Int b = 0; b < r; ++b)
            for (Int e = 0; e < 3; ++e) {
                Monomial m{{a, b, e}};
                auto w = G.weight_of(m);
                if (!rep[w]) rep[w] = m;
            }
    // columns: theta_i for i = 1..r-1; rows: (k, chi) pairs
    std::vector<std::vector<Rational>> rows;
    for (auto& ctx : ctxs) {
        Int ak = ctx.subgroup().order();
        std::vector<std::vector<Rational>> block(ak, std::vector<Rational>(r - 1));
        for (Int w = 0; w < r; ++w)
            if (!rep[w]) throw std::runtime_error("no sample monomial of weight " + std::to_string(w));
        auto chi = [&](Int w) { return ctx.subgroup().weight_of(ctx.round_down(*rep[w])); };
        Int c0 = chi(0);
        for (Int i = 1; i < r; ++i) {
            block[chi(i)][i - 1] += 1;
            block[c0][i - 1] -= 1;
        }
        for (auto& row : block) rows.push_back(row);
    }
    return rank(rows);
}

std::vector<Monomial> hilbert_basis(const GroupType& G, const Cone& c, Int B) {
    std::vector<Monomial> pts;
    for (Int a = -B; a <= B; ++a)
        for (Int b = -B; b <= B; ++b)
            for (Int e = -B; e <= B; ++e) {
                Monomial m{{a, b, e}};
                if (m.is_one() || !G.in_M(m)) continue;
                bool in = std::all_of(c.rays.begin(), c.rays.end(),
                                      [&](auto& u) { return dot(u.num, m.e) >= 0; });
                if (in) pts.push_back(m);
            }
    std::set<Monomial> all(pts.begin(), pts.end());
    std::vector<Monomial> out;
    for (auto& m : pts) {
        bool red = false;
        for (auto& n : pts)
            if (!(n == m) && all.count(m / n)) {
                red = true;
                break;
            }
        if (!red) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
