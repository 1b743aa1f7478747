#include "brickwork/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace brickwork {

namespace {

struct Facet {
    int i, j;
    Vec3 normal;
};

// facets of the cone spanned by integer vectors; empty if degenerate
std::vector<Facet> raw_facets(const std::vector<Vec3>& u, bool& extreme_ok) {
    std::vector<Facet> out;
    extreme_ok = true;
    int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec3 c = cross(u[i], u[j]);
            if (is_zero(c)) continue;
            int pos = 0, neg = 0, zero = 0;
            for (int l = 0; l < n; ++l) {
                if (l == i || l == j) continue;
                Int s = dot(c, u[l]);
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
                else ++zero;
            }
            if (pos && neg) continue;
            if (zero) extreme_ok = false;
            if (neg) c = scale(c, -1);
            if (!pos && !neg) continue;  // all coplanar
            out.push_back({i, j, primitive(c)});
        }
    return out;
}

std::vector<Vec3> nums(const Cone& c) {
    std::vector<Vec3> u;
    for (auto& p : c.rays) u.push_back(p.num);
    return u;
}

// cyclic order of facets / rays
std::vector<int> cycle_from_facets(int n, const std::vector<Facet>& fs) {
    std::vector<std::vector<int>> adj(n);
    for (auto& f : fs) {
        adj[f.i].push_back(f.j);
        adj[f.j].push_back(f.i);
    }
    std::vector<int> order{0};
    int prev = -1, cur = 0;
    while (static_cast<int>(order.size()) < n) {
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        if (static_cast<int>(adj[cur].size()) != 2) throw std::logic_error("cone facet graph is not a cycle");
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    return order;
}

struct P2 {
    Rational x, y;
};

Rational cross2(const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// slice of the cone by x+y+z = 1, as a convex polygon in counterclockwise order
std::vector<P2> slice(const Cone& c) {
    std::vector<P2> pts;
    for (auto& p : cyclic_rays(c)) {
        Int s = p.num[0] + p.num[1] + p.num[2];
        if (s <= 0) throw ValidationError("ray " + to_string(p) + " does not meet the slicing plane");
        pts.push_back({frac(p.num[0], s), frac(p.num[1], s)});
    }
    Rational a = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto& p = pts[i];
        auto& q = pts[(i + 1) % pts.size()];
        a += p.x * q.y - q.x * p.y;
    }
    if (a < 0) std::reverse(pts.begin(), pts.end());
    return pts;
}

Rational area2(const std::vector<P2>& pts) {
    Rational a = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto& p = pts[i];
        auto& q = pts[(i + 1) % pts.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return abs(a);
}

// some edge of a separates b into the closed outer half-plane
bool separated_by_edge_of(const std::vector<P2>& a, const std::vector<P2>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto& p = a[i];
        auto& q = a[(i + 1) % a.size()];
        bool all_out = true;
        for (auto& s : b)
            if (cross2(p, q, s) > 0) {
                all_out = false;
                break;
            }
        if (all_out) return true;
    }
    return false;
}

// solve U m = rhs for 3x3 integer U
std::optional<QVec3> solve3(const std::array<Vec3, 3>& U, const Vec3& rhs) {
    Int D = det3(U[0], U[1], U[2]);
    if (D == 0) return std::nullopt;
    QVec3 m;
    for (int c = 0; c < 3; ++c) {
        std::array<Vec3, 3> V = U;
        for (int row = 0; row < 3; ++row) V[row][c] = rhs[row];
        m[c] = frac(det3(V[0], V[1], V[2]), D);
        m[c].canonicalize();
    }
    return m;
}

Rational pair(const Vec3& num, Int den, const QVec3& m) {
    Rational s = 0;
    for (int i = 0; i < 3; ++i) s += m[i] * num[i];
    s /= den;
    return s;
}

}  // namespace

bool Cone::simplicial() const {
    return rays.size() == 3 && det3(rays[0].num, rays[1].num, rays[2].num) != 0;
}

std::vector<LatticePoint> Cone::sorted_rays() const {
    auto r = rays;
    std::sort(r.begin(), r.end());
    return r;
}

Cone make_cone(const GroupType& G, std::vector<LatticePoint> rays) {
    if (rays.size() != 3 && rays.size() != 4)
        throw ValidationError("a cone needs 3 or 4 rays, got " + std::to_string(rays.size()));
    for (auto& p : rays) {
        if (p.den != G.order()) throw ValidationError("ray " + to_string(p) + " has the wrong denominator");
        if (!G.is_primitive(p)) throw ValidationError("ray " + to_string(p) + " is not a primitive point of L");
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (is_zero(cross(rays[i].num, rays[j].num)))
                throw ValidationError("rays " + to_string(rays[i]) + " and " + to_string(rays[j]) +
                                      " are proportional");
    Cone c{std::move(rays)};
    bool ok = true;
    auto fs = raw_facets(nums(c), ok);
    if (!ok || fs.size() != c.rays.size())
        throw ValidationError("rays do not span a pointed full-dimensional cone with every ray extreme");
    std::vector<int> deg(c.rays.size(), 0);
    for (auto& f : fs) {
        ++deg[f.i];
        ++deg[f.j];
    }
    for (int d : deg)
        if (d != 2) throw ValidationError("rays do not span a pointed cone");
    return c;
}

Cone positive_octant(const GroupType& G) { return {{G.axis(0), G.axis(1), G.axis(2)}}; }

std::vector<LatticePoint> cyclic_rays(const Cone& c) {
    if (c.rays.size() == 3) return c.rays;
    bool ok = true;
    auto fs = raw_facets(nums(c), ok);
    std::vector<LatticePoint> out;
    for (int i : cycle_from_facets(static_cast<int>(c.rays.size()), fs)) out.push_back(c.rays[i]);
    return out;
}

std::vector<Vec3> facet_normals(const Cone& c) {
    auto cyc = cyclic_rays(c);
    std::vector<Vec3> out;
    std::size_t n = cyc.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 nv = primitive(cross(cyc[i].num, cyc[(i + 1) % n].num));
        for (std::size_t l = 0; l < n; ++l) {
            Int s = dot(nv, cyc[l].num);
            if (s < 0) {
                nv = scale(nv, -1);
                break;
            }
            if (s > 0) break;
        }
        out.push_back(nv);
    }
    return out;
}

bool cone_contains(const Cone& c, const Vec3& num) {
    for (auto& n : facet_normals(c))
        if (dot(n, num) < 0) return false;
    return true;
}

bool cone_interior(const Cone& c, const Vec3& num) {
    for (auto& n : facet_normals(c))
        if (dot(n, num) <= 0) return false;
    return true;
}

Fan Fan::from_cones(const GroupType& G, const std::vector<Cone>& cs) {
    Fan f;
    f.group = G;
    std::set<LatticePoint> all;
    for (auto& c : cs)
        for (auto& p : c.rays) all.insert(p);
    f.rays.assign(all.begin(), all.end());
    for (auto& c : cs) {
        std::vector<int> idx;
        for (auto& p : c.rays) idx.push_back(f.ray_index(p));
        f.cones.push_back(idx);
    }
    return f;
}

int Fan::ray_index(const LatticePoint& p) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == p) return static_cast<int>(i);
    return -1;
}

Cone Fan::cone(std::size_t i) const {
    Cone c;
    for (int j : cones.at(i)) c.rays.push_back(rays.at(j));
    return c;
}

std::vector<Cone> Fan::all_cones() const {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < cones.size(); ++i) out.push_back(cone(i));
    return out;
}

Fan Fan::canonical() const {
    Fan f;
    f.group = group;
    f.rays = rays;
    std::sort(f.rays.begin(), f.rays.end());
    for (std::size_t i = 0; i < cones.size(); ++i) {
        std::vector<int> idx;
        for (int j : cones[i]) idx.push_back(f.ray_index(rays[j]));
        std::sort(idx.begin(), idx.end());
        f.cones.push_back(idx);
    }
    std::sort(f.cones.begin(), f.cones.end());
    return f;
}

bool operator==(const Fan& a, const Fan& b) {
    if (!(a.group == b.group)) return false;
    Fan x = a.canonical(), y = b.canonical();
    return x.rays == y.rays && x.cones == y.cones;
}

Fan star_subdivide(const GroupType& G, const Cone& c, const LatticePoint& v) {
    if (!G.contains(v)) throw ValidationError("center " + to_string(v) + " is not a point of L");
    if (!cone_contains(c, v.num)) throw ValidationError("center " + to_string(v) + " is outside the cone");
    for (auto& p : c.rays)
        if (p == v) return Fan::from_cones(G, {c});
    for (auto& p : c.rays)
        if (is_zero(cross(p.num, v.num))) throw ValidationError("center lies on a ray but is not primitive");
    std::vector<Cone> out;
    if (c.simplicial()) {
        for (int i = 0; i < 3; ++i) {
            Vec3 n = cross(c.rays[(i + 1) % 3].num, c.rays[(i + 2) % 3].num);
            if (dot(n, v.num) == 0) continue;
            Cone s = c;
            s.rays[i] = v;
            out.push_back(s);
        }
    } else {
        auto cyc = cyclic_rays(c);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            auto& p = cyc[i];
            auto& q = cyc[(i + 1) % cyc.size()];
            if (dot(cross(p.num, q.num), v.num) == 0) continue;
            out.push_back({{p, q, v}});
        }
    }
    return Fan::from_cones(G, out);
}

Fan star_subdivide(const Fan& fan, const LatticePoint& v) {
    const GroupType& G = fan.group;
    if (!G.contains(v)) throw ValidationError("center " + to_string(v) + " is not a point of L");
    std::vector<Cone> out;
    bool hit = false;
    for (auto& c : fan.all_cones()) {
        if (!cone_contains(c, v.num)) {
            out.push_back(c);
            continue;
        }
        hit = true;
        for (auto& s : star_subdivide(G, c, v).all_cones()) out.push_back(s);
    }
    if (!hit) throw ValidationError("center " + to_string(v) + " lies in no cone of the fan");
    return Fan::from_cones(G, out);
}

std::vector<Monomial> dual_generators(const GroupType& G, const Cone& c) {
    std::vector<Monomial> out;
    for (auto& n : facet_normals(c)) out.push_back(G.primitive_in_M(n));
    return out;
}

std::vector<LatticePoint> dual_of_monomials(const GroupType& G, const std::vector<Monomial>& gens) {
    std::set<Vec3> dirs;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Vec3 d = primitive(cross(gens[i].e, gens[j].e));
            if (is_zero(d)) continue;
            for (int sgn : {1, -1}) {
                Vec3 dd = scale(d, sgn);
                bool ok = true;
                for (auto& g : gens)
                    if (dot(dd, g.e) < 0) {
                        ok = false;
                        break;
                    }
                if (ok) dirs.insert(dd);
            }
        }
    std::vector<LatticePoint> out;
    for (auto& d : dirs) out.push_back(G.primitive_on_ray(d));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> hilbert_basis(const GroupType& G, const Cone& c) {
    auto w = dual_generators(G, c);
    std::vector<std::array<Monomial, 3>> simplices;
    if (w.size() == 3) simplices.push_back({w[0], w[1], w[2]});
    else simplices = {{w[0], w[1], w[2]}, {w[0], w[2], w[3]}};
    std::set<Monomial> cand(w.begin(), w.end());
    const long long box_cap = 10'000'000, cand_cap = 1'000'000;
    for (auto& s : simplices) {
        Int D = det3(s[0].e, s[1].e, s[2].e);
        Vec3 lo{0, 0, 0}, hi{0, 0, 0};
        for (auto& g : s)
            for (int i = 0; i < 3; ++i) (g.e[i] < 0 ? lo[i] : hi[i]) += g.e[i];
        long long box = 1;
        for (int i = 0; i < 3; ++i) box *= (hi[i] - lo[i] + 1);
        if (box > box_cap)
            throw MathFailure("hilbert_size", "Hilbert basis zonotope box has " + std::to_string(box) +
                                                  " points, above the cap");
        Int aD = D < 0 ? -D : D;
        for (Int x = lo[0]; x <= hi[0]; ++x)
            for (Int y = lo[1]; y <= hi[1]; ++y)
                for (Int z = lo[2]; z <= hi[2]; ++z) {
                    Vec3 p{x, y, z};
                    if (is_zero(p) || !G.in_M({p})) continue;
                    bool inside = true;
                    for (int i = 0; i < 3 && inside; ++i) {
                        std::array<Vec3, 3> V{s[0].e, s[1].e, s[2].e};
                        V[i] = p;
                        Int Di = det3(V[0], V[1], V[2]);
                        if (D < 0) Di = -Di;
                        inside = Di >= 0 && Di < aD;
                    }
                    if (inside) cand.insert({p});
                    if (static_cast<long long>(cand.size()) > cand_cap)
                        throw MathFailure("hilbert_size", "more than 10^6 Hilbert basis candidates");
                }
    }
    std::vector<Vec3> rays;
    for (auto& p : c.rays) rays.push_back(p.num);
    auto in_dual = [&](const Vec3& m) {
        for (auto& u : rays)
            if (dot(u, m) < 0) return false;
        return true;
    };
    std::vector<Monomial> out;
    for (auto& h : cand) {
        bool reducible = false;
        for (auto& d : cand) {
            if (d == h) continue;
            Vec3 rest = sub(h.e, d.e);
            if (!is_zero(rest) && in_dual(rest)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.push_back(h);
    }
    return out;
}

std::string to_string(ConeKind k) {
    switch (k) {
        case ConeKind::smooth: return "smooth";
        case ConeKind::terminal: return "terminal";
        case ConeKind::canonical: return "canonical";
        case ConeKind::none: return "none";
    }
    return "none";
}

std::optional<QVec3> support_monomial(const GroupType& G, const Cone& c) {
    Int r = G.order();
    auto cyc = c.rays;
    std::optional<QVec3> m;
    for (std::size_t a = 0; a < cyc.size() && !m; ++a)
        for (std::size_t b = a + 1; b < cyc.size() && !m; ++b)
            for (std::size_t d = b + 1; d < cyc.size() && !m; ++d)
                m = solve3({cyc[a].num, cyc[b].num, cyc[d].num}, {r, r, r});
    if (!m) return std::nullopt;
    for (auto& p : c.rays)
        if (pair(p.num, r, *m) != 1) return std::nullopt;
    return m;
}

Classification classify_cone(const GroupType& G, const Cone& c) {
    if (!c.simplicial()) throw ValidationError("classify_cone needs a simplicial cone");
    Classification out;
    auto m = support_monomial(G, c);
    if (!m) {
        out.applicable = false;
        out.note = "criterion inapplicable: no support monomial";
        return out;
    }
    out.support = *m;
    Int r = G.order();
    const auto& U = c.rays;
    Int D = det3(U[0].num, U[1].num, U[2].num);
    Int aD = D < 0 ? -D : D;
    bool smooth = aD == r * r;
    bool terminal = true, canonical = true;
    Vec3 lo{0, 0, 0}, hi{0, 0, 0};
    for (auto& u : U)
        for (int i = 0; i < 3; ++i) {
            hi[i] = std::max(hi[i], u.num[i]);
            lo[i] = std::min(lo[i], u.num[i]);
        }
    // walk the cosets of Z^3 in L
    for (Int t = 0; t < r; ++t) {
        Vec3 b = G.class_point(t).num;
        for (int i = 0; i < 3; ++i) b[i] -= r * ceil_div(b[i] - lo[i], r);
        for (Int x = b[0]; x <= hi[0]; x += r)
            for (Int y = b[1]; y <= hi[1]; y += r)
                for (Int z = b[2]; z <= hi[2]; z += r) {
                    Vec3 n{x, y, z};
                    if (is_zero(n)) continue;
                    Int lam[3], tot = 0;
                    bool in = true;
                    for (int i = 0; i < 3; ++i) {
                        std::array<Vec3, 3> V{U[0].num, U[1].num, U[2].num};
                        V[i] = n;
                        lam[i] = det3(V[0], V[1], V[2]) * (D < 0 ? -1 : 1);
                        if (lam[i] < 0) in = false;
                        tot += lam[i];
                    }
                    if (!in || tot > aD) continue;
                    if (tot < aD) {
                        canonical = false;
                        terminal = false;
                    } else {
                        bool vertex = false;
                        for (auto& u : U) vertex = vertex || u.num == n;
                        if (!vertex) terminal = false;
                    }
                }
    }
    if (smooth) out.kind = ConeKind::smooth;
    else if (terminal) out.kind = ConeKind::terminal;
    else if (canonical) out.kind = ConeKind::canonical;
    else out.kind = ConeKind::none;
    bool integral = true;
    Vec3 mi{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        if ((*m)[i].get_den() != 1) integral = false;
        else mi[i] = (*m)[i].get_num().get_si();
    }
    out.gorenstein = integral && G.in_M({mi});
    return out;
}

Rational discrepancy(const GroupType& G, const LatticePoint& u) {
    Rational d = frac(u.num[0] + u.num[1] + u.num[2], G.order());
    d -= 1;
    return d;
}

std::vector<Discrepancy> discrepancies(const GroupType& G, const Fan& fan) {
    std::vector<Discrepancy> out;
    for (auto& p : fan.canonical().rays) {
        bool axis = false;
        for (int i = 0; i < 3; ++i) axis = axis || p == G.axis(i);
        if (!axis) out.push_back({p, discrepancy(G, p)});
    }
    return out;
}

NefReport is_relatively_nef_K(const GroupType& G, const Fan& fan) {
    NefReport rep;
    for (std::size_t ci = 0; ci < fan.cones.size(); ++ci) {
        auto m = support_monomial(G, fan.cone(ci));
        if (!m) {
            rep.applicable = false;
            rep.nef = false;
            rep.cone = static_cast<int>(ci);
            rep.note = "criterion inapplicable: cone has no support monomial";
            return rep;
        }
        for (std::size_t ri = 0; ri < fan.rays.size(); ++ri) {
            Rational val = pair(fan.rays[ri].num, G.order(), *m);
            if (val < 1) {
                rep.nef = false;
                rep.cone = static_cast<int>(ci);
                rep.ray = static_cast<int>(ri);
                rep.value = val;
                return rep;
            }
        }
    }
    return rep;
}

std::vector<LatticePoint> coplanar_lattice_points(const GroupType& G,
                                                  const std::vector<LatticePoint>& spanning,
                                                  const Cone& region) {
    if (spanning.size() < 3) throw ValidationError("need at least three spanning points");
    Vec3 n = cross(sub(spanning[1].num, spanning[0].num), sub(spanning[2].num, spanning[0].num));
    if (is_zero(n)) throw ValidationError("spanning points are affinely dependent");
    Int d = dot(n, spanning[0].num);
    for (auto& p : spanning)
        if (dot(n, p.num) != d) throw ValidationError(to_string(p) + " is off the spanned plane");
    Int r = G.order();
    std::vector<LatticePoint> out;
    for (Int x = 0; x <= r; ++x)
        for (Int y = 0; y <= r; ++y) {
            // solve for z on the plane when possible
            std::vector<Int> zs;
            if (n[2] != 0) {
                Int rest = d - n[0] * x - n[1] * y;
                if (rest % n[2] == 0) zs.push_back(rest / n[2]);
            } else if (n[0] * x + n[1] * y == d) {
                for (Int z = 0; z <= r; ++z) zs.push_back(z);
            }
            for (Int z : zs) {
                if (z < 0 || z > r) continue;
                LatticePoint p{{x, y, z}, r};
                if (!G.is_primitive(p) || !cone_contains(region, p.num)) continue;
                if (std::find(spanning.begin(), spanning.end(), p) != spanning.end()) continue;
                out.push_back(p);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

TileReport cones_tile(const std::vector<Cone>& cones, const Cone& ambient) {
    TileReport rep;
    auto amb = slice(ambient);
    rep.ambient = area2(amb) / 2;
    std::vector<std::vector<P2>> polys;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        for (auto& p : cones[i].rays)
            if (!cone_contains(ambient, p.num)) {
                rep.tiles = false;
                rep.message = "cone " + std::to_string(i) + " ray " + to_string(p) + " leaves the ambient cone";
                return rep;
            }
        polys.push_back(slice(cones[i]));
        rep.covered += area2(polys.back()) / 2;
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (!separated_by_edge_of(polys[i], polys[j]) && !separated_by_edge_of(polys[j], polys[i])) {
                rep.tiles = false;
                rep.message = "cones " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
                return rep;
            }
    if (rep.covered != rep.ambient) {
        rep.tiles = false;
        rep.message = "covered area " + to_string(rep.covered) + " differs from ambient area " +
                      to_string(rep.ambient);
    }
    return rep;
}

TileReport cones_tile(const Fan& fan, const Cone& ambient) { return cones_tile(fan.all_cones(), ambient); }

}  // namespace brickwork
