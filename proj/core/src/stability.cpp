#include "brickwork/stability.hpp"

#include "brickwork/closure.hpp"

#include <algorithm>
#include <sstream>

namespace brickwork {

Theta Theta::make(std::vector<Rational> values) {
    Rational s = 0;
    for (auto& q : values) {
        q.canonicalize();
        s += q;
    }
    if (s != 0) throw ValidationError("stability parameter does not sum to zero (sum " + to_string(s) + ")");
    Theta t;
    t.v_ = std::move(values);
    return t;
}

bool Theta::is_zero() const {
    for (auto& q : v_)
        if (q != 0) return false;
    return true;
}

Rational Theta::on(const std::set<Int>& A) const {
    Rational s = 0;
    for (Int w : A) s += v_.at(static_cast<std::size_t>(w));
    return s;
}

Rational Theta::on(const std::vector<int>& A) const {
    Rational s = 0;
    for (int w : A) s += v_.at(static_cast<std::size_t>(w));
    return s;
}

Theta operator+(const Theta& a, const Theta& b) {
    if (a.size() != b.size()) throw ValidationError("stability parameters of different length");
    Theta t = a;
    for (std::size_t i = 0; i < t.v_.size(); ++i) t.v_[i] += b.v_[i];
    return t;
}

Theta operator*(const Rational& c, const Theta& a) {
    Theta t = a;
    for (auto& q : t.v_) q *= c;
    return t;
}

std::string to_string(const Theta& t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << to_string(t[i]);
    os << ")";
    return os.str();
}

Theta theta_basis(const GroupType& G, Int i) {
    if (i <= 0 || i >= G.order()) throw ValidationError("basis index must lie in [1, r)");
    std::vector<Rational> v(G.order());
    v[0] = -1;
    v[i] = 1;
    return Theta::make(std::move(v));
}

Theta theta_plus(const GroupType& G) {
    std::vector<Rational> v(G.order(), Rational(1));
    v[0] = -(G.order() - 1);
    return Theta::make(std::move(v));
}

Theta pushforward(const RoundDownContext& ctx, const Theta& theta) {
    if (static_cast<Int>(theta.size()) != ctx.parent().order())
        throw ValidationError("stability parameter has the wrong length");
    std::vector<Rational> out(ctx.a_k());
    for (Int i = 0; i < ctx.parent().order(); ++i) out[ctx.induced_character(i)] += theta[i];
    return Theta::make(std::move(out));
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// reduced row echelon form in place, returns pivot columns (ignores the last `aug` columns)
std::vector<int> rref(Matrix& A, int aug = 0) {
    std::vector<int> piv;
    if (A.empty()) return piv;
    int rows = static_cast<int>(A.size()), cols = static_cast<int>(A[0].size()) - aug;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[r], A[p]);
        Rational inv = 1 / A[r][c];
        for (auto& x : A[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t j = 0; j < A[i].size(); ++j) A[i][j] -= f * A[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

// integer weights proportional to theta, and the common scale
std::vector<std::int64_t> scaled(const std::vector<const Theta*>& parts, const std::vector<mpz_class>& mult,
                                 mpz_class& scale) {
    scale = 1;
    for (auto* t : parts)
        for (auto& q : t->values()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    std::size_t n = parts[0]->size();
    std::vector<std::int64_t> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class s = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            Rational q = (*parts[p])[i] * scale;
            q.canonicalize();
            s += q.get_num() * mult[p];
        }
        if (!s.fits_slong_p()) throw std::overflow_error("stability weights exceed 64 bits");
        w[i] = s.get_si();
    }
    return w;
}

StabilityMargin closure_minimum(const GBrick& B, const std::vector<std::int64_t>& w) {
    StabilityMargin best;
    Int r = static_cast<Int>(B.size());
    if (r == 1) {
        best.vacuous = true;
        return best;
    }
    auto succ = successor_graph(B);
    bool have = false;
    std::int64_t val = 0;
    auto take = [&](const std::vector<int>& in, const std::vector<int>& out) {
        auto sol = min_weight_closure(succ, w, in, out);
        if (sol.feasible && (!have || sol.value < val)) {
            have = true;
            val = sol.value;
            best.witness = sol.members;
        }
    };
    // sets by smallest member p: everything below p is out, so p > 0 gives a proper set
    std::vector<int> below;
    for (int p = 1; p < r; ++p) {
        below.push_back(p - 1);
        take({p}, below);
    }
    // sets containing 0 need some other vertex left out
    for (int q = 1; q < r; ++q) take({0}, {q});
    if (!have) throw std::logic_error("no proper closed subset found");
    return best;
}

}  // namespace

int pushforward_rank(const GroupType& G, const std::vector<RoundDownContext>& ctxs) {
    Matrix A;
    for (Int i = 1; i < G.order(); ++i) {
        std::vector<Rational> row;
        Theta b = theta_basis(G, i);
        for (auto& c : ctxs) {
            Theta p = pushforward(c, b);
            row.insert(row.end(), p.values().begin(), p.values().end());
        }
        A.push_back(row);
    }
    if (A.empty() || A[0].empty()) return 0;
    return static_cast<int>(rref(A).size());
}

SolveResult solve_partial(const GroupType& G, const std::vector<RoundDownContext>& ctxs,
                          const std::vector<std::optional<Theta>>& targets) {
    if (targets.size() != ctxs.size()) throw ValidationError("one target per context is required");
    Int r = G.order();
    SolveResult res;
    for (auto& c : ctxs) res.target_dim += static_cast<int>(c.a_k() - 1);
    res.rank = pushforward_rank(G, ctxs);
    res.surjective = res.rank == res.target_dim;

    Matrix A;
    std::vector<Rational> sum_row(r + 1, Rational(1));
    sum_row[r] = 0;
    A.push_back(sum_row);
    for (std::size_t k = 0; k < ctxs.size(); ++k) {
        const auto& c = ctxs[k];
        Theta tgt = targets[k] ? *targets[k] : Theta::zero(c.a_k());
        if (static_cast<Int>(tgt.size()) != c.a_k())
            throw ValidationError("target " + std::to_string(k + 1) + " has length " + std::to_string(tgt.size()) +
                                  ", expected " + std::to_string(c.a_k()));
        for (Int chi = 0; chi < c.a_k(); ++chi) {
            std::vector<Rational> row(r + 1);
            for (Int i = 0; i < r; ++i)
                if (c.induced_character(i) == chi) row[i] = 1;
            row[r] = tgt[chi];
            A.push_back(row);
        }
    }
    auto piv = rref(A, 1);
    for (std::size_t i = piv.size(); i < A.size(); ++i)
        if (A[i][r] != 0) {
            res.feasible = false;
            std::ostringstream os;
            os << "targets are inconsistent; pushforward rank " << res.rank << " of target dimension "
               << res.target_dim;
            res.message = os.str();
            return res;
        }
    std::vector<Rational> x(r);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = A[i][r];
    res.feasible = true;
    res.theta = Theta::make(std::move(x));
    if (!res.surjective) {
        std::ostringstream os;
        os << "pushforward is not surjective: rank " << res.rank << " < " << res.target_dim;
        res.message = os.str();
    }
    return res;
}

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::case1: return "case1";
        case FamilyKind::case2a: return "case2a";
        case FamilyKind::case2b: return "case2b";
        case FamilyKind::none: return "none";
    }
    return "none";
}

Theta vartheta_formula(FamilyKind kind, Int a, Int b, Int c, Int k) {
    if (a < 1 || b < 1 || c < 1) throw ValidationError("family parameters must be positive");
    if (std::gcd(a, b) != 1) throw ValidationError("family parameters a, b must be coprime");
    if (a > b || (a == b && a != 1)) throw ValidationError("family parameters need a < b");
    Int r = 0;
    if (kind == FamilyKind::case1) {
        r = a * b * c + a + b + 1;
    } else if (kind == FamilyKind::case2a || kind == FamilyKind::case2b) {
        if (k < 1 || b != a * k + 1) throw ValidationError("second family needs b = ak+1");
        if (kind == FamilyKind::case2a && c < 2) throw ValidationError("case (a) needs c >= 2");
        if (kind == FamilyKind::case2b && c != 1) throw ValidationError("case (b) needs c = 1");
        r = a * b * c + a - 2 * b + 1;
    } else {
        throw ValidationError("no catalog entry for this family");
    }
    if (r < 2) throw ValidationError("family parameters give r < 2");
    std::vector<Rational> v(r);
    std::vector<bool> used(r, false);
    auto put = [&](Int w, int val) {
        if (w < 0 || w >= r)
            throw ValidationError("breakpoint weight " + std::to_string(w) + " is outside [0," + std::to_string(r) + ")");
        if (used[w]) throw ValidationError("breakpoint collision at weight " + std::to_string(w));
        used[w] = true;
        v[w] = val;
    };
    for (Int w = 0; w < b; ++w) put(w, -1);
    if (kind == FamilyKind::case1) {
        put(a + b, -1);
        for (Int w = r - b - 1; w < r; ++w) put(w, 1);
    } else {
        put(kind == FamilyKind::case2a ? 2 * a * b - 5 * b + 3 : a * b - 5 * b + 3, -1);
        put(r - a - b + 2, 1);
        for (Int w = r - b; w < r; ++w) put(w, 1);
    }
    return Theta::make(std::move(v));
}

Theta vartheta_catalog(const GroupType& G, const FamilyTag& tag) {
    Theta f = vartheta_formula(tag.kind, tag.a, tag.b, tag.c, tag.k);
    Int r = G.order();
    if (static_cast<Int>(f.size()) != r) throw ValidationError("family parameters do not match the group order");
    std::vector<Rational> v(r);
    for (Int i = 0; i < r; ++i) v[i] = f[mod(tag.t * i, r)];
    return Theta::make(std::move(v));
}

Theta vartheta_custom(const GroupType& G, std::vector<Rational> values) {
    if (static_cast<Int>(values.size()) != G.order())
        throw ValidationError("custom parameter needs " + std::to_string(G.order()) + " values");
    Theta t = Theta::make(std::move(values));
    if (t.is_zero()) throw ValidationError("custom parameter must be nonzero");
    return t;
}

std::vector<VarthetaCheck> check_vartheta_properties(const std::vector<RoundDownContext>& ctxs,
                                                     const Theta& vartheta) {
    std::vector<VarthetaCheck> out;
    for (auto& c : ctxs) {
        VarthetaCheck chk;
        chk.axis = c.axis();
        Int r = c.parent().order(), ak = c.a_k();
        if (static_cast<Int>(vartheta.size()) != r) throw ValidationError("parameter has the wrong length");
        // index by the center's own weights
        Int tinv = inverse_mod(c.t(), r);
        auto vw = [&](Int j) { return vartheta[mod(tinv * j, r)]; };
        std::ostringstream wit;
        auto p = pushforward(c, vartheta);
        for (Int chi = 0; chi < ak; ++chi)
            if (p[chi] != 0) {
                if (chk.pushforward_zero) wit << "(i) class " << chi << " sums to " << to_string(p[chi]) << "; ";
                chk.pushforward_zero = false;
            }
        for (Int j = 0; j < ak; ++j)
            if (vw(j) >= 0) {
                if (chk.negative_low) wit << "(ii) value " << to_string(vw(j)) << " at weight " << j << "; ";
                chk.negative_low = false;
            }
        for (Int j = ak; j < r; ++j) {
            Rational s = 0;
            for (Int l = j; l < r; l += ak) s += vw(l);
            if (s <= 0) {
                if (chk.fiber_positive) wit << "(iii) chain from weight " << j << " sums to " << to_string(s) << "; ";
                chk.fiber_positive = false;
            }
        }
        chk.witness = wit.str();
        out.push_back(chk);
    }
    return out;
}

StabilityMargin min_margin(const GBrick& B, const Theta& theta) {
    if (theta.size() != B.size()) throw ValidationError("parameter length differs from the brick size");
    mpz_class sc;
    auto w = scaled({&theta}, {1}, sc);
    auto m = closure_minimum(B, w);
    if (!m.vacuous) m.value = theta.on(m.witness);
    return m;
}

StabilityMargin min_margin_bruteforce(const GBrick& B, const Theta& theta) {
    Int r = static_cast<Int>(B.size());
    if (r > 18) throw ValidationError("exhaustive margin search is limited to r <= 18");
    if (theta.size() != B.size()) throw ValidationError("parameter length differs from the brick size");
    StabilityMargin best;
    if (r == 1) {
        best.vacuous = true;
        return best;
    }
    mpz_class sc;
    auto w = scaled({&theta}, {1}, sc);
    auto succ = successor_graph(B);
    std::vector<std::uint32_t> smask(r, 0);
    for (Int v = 0; v < r; ++v)
        for (int s : succ[v]) smask[v] |= 1u << s;
    std::uint32_t full = (1u << r) - 1;
    bool have = false;
    std::int64_t val = 0;
    std::uint32_t arg = 0;
    for (std::uint32_t A = 1; A < full; ++A) {
        bool closed = true;
        std::int64_t s = 0;
        for (Int v = 0; v < r && closed; ++v)
            if (A >> v & 1u) {
                closed = (smask[v] & ~A) == 0;
                s += w[v];
            }
        if (!closed) continue;
        if (!have || s < val) {
            have = true;
            val = s;
            arg = A;
        }
    }
    for (Int v = 0; v < r; ++v)
        if (arg >> v & 1u) best.witness.push_back(static_cast<int>(v));
    best.value = theta.on(best.witness);
    return best;
}

StabilityMargin min_margin_symbolic(const GBrick& B, const Theta& theta_p, const Theta& vartheta) {
    if (theta_p.size() != B.size() || vartheta.size() != B.size())
        throw ValidationError("parameter length differs from the brick size");
    mpz_class sc;
    auto wp = scaled({&theta_p, &vartheta}, {1, 0}, sc);
    mpz_class K = 1;
    for (auto x : wp) K += 2 * mpz_class(x < 0 ? -x : x);
    auto w = scaled({&theta_p, &vartheta}, {1, K}, sc);
    auto m = closure_minimum(B, w);
    if (!m.vacuous) {
        m.symbolic = AffineValue{theta_p.on(m.witness), vartheta.on(m.witness)};
        m.value = m.symbolic->constant;
    }
    return m;
}

StabilityMargin margin_at(const GBrick& B, const Theta& theta_p, const Theta& vartheta, Int m) {
    Theta th = theta_p + Rational(m) * vartheta;
    auto res = min_margin(B, th);
    if (!res.vacuous) res.symbolic = AffineValue{theta_p.on(res.witness), vartheta.on(res.witness)};
    return res;
}

FindMResult find_m(const std::vector<GBrick>& bricks, const Theta& theta_p, const Theta& vartheta, Int m_max) {
    FindMResult res;
    auto positive = [&](const GBrick& B, Int m) { return margin_at(B, theta_p, vartheta, m).stable(); };
    Int need = 1;
    for (std::size_t i = 0; i < bricks.size(); ++i) {
        const auto& B = bricks[i];
        Int thr = -1;
        if (positive(B, 1)) {
            thr = 1;
        } else {
            Int lo = 1, hi = 2;
            while (hi <= m_max && !positive(B, hi)) {
                lo = hi;
                hi *= 2;
            }
            if (hi <= m_max) {
                // positive set is an interval (the margin is concave in m)
                while (hi - lo > 1) {
                    Int mid = lo + (hi - lo) / 2;
                    if (positive(B, mid)) hi = mid;
                    else lo = mid;
                }
                thr = hi;
            }
        }
        res.thresholds.push_back(thr);
        if (thr < 0 && res.worst_brick < 0) res.worst_brick = static_cast<int>(i);
        need = std::max(need, thr);
    }
    if (res.worst_brick >= 0) {
        res.message = "brick " + std::to_string(res.worst_brick) + " is not stable for any m <= " +
                      std::to_string(m_max);
        return res;
    }
    for (std::size_t i = 0; i < bricks.size(); ++i) {
        auto mg = margin_at(bricks[i], theta_p, vartheta, need);
        if (!mg.stable()) {
            res.worst_brick = static_cast<int>(i);
            res.message = "brick " + std::to_string(i) + " loses stability at m = " + std::to_string(need);
            return res;
        }
        res.margins.push_back(mg);
    }
    res.found = true;
    res.m = need;
    return res;
}

}  // namespace brickwork
