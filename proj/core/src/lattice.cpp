#include "brickwork/lattice.hpp"

#include <regex>
#include <sstream>

namespace brickwork {

std::string to_string(const Monomial& m, const char* vars) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        if (m.e[i] == 0) continue;
        os << vars[i];
        if (m.e[i] != 1) os << "^" << m.e[i];
    }
    return os.str();
}

std::string to_string(const LatticePoint& p) {
    if (p.den == 1) return to_string(p.num);
    return to_string(p.num) + "/" + std::to_string(p.den);
}

GroupType GroupType::make(Int r, const Vec3& weights) {
    if (r < 1) throw ValidationError("group order must be positive, got " + std::to_string(r));
    GroupType G;
    G.r_ = r;
    for (int i = 0; i < 3; ++i) G.w_[i] = mod(weights[i], r);
    Int g = std::gcd(r, gcd3(G.w_));
    if (r == 1) g = 1;
    if (g != 1) {
        throw ValidationError("presentation 1/" + std::to_string(r) + brickwork::to_string(weights) +
                              " is not faithful: effective order " + std::to_string(r / g));
    }
    return G;
}

GroupType GroupType::parse(const std::string& text) {
    static const std::regex re(
        R"(^\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$)");
    std::smatch mt;
    if (!std::regex_match(text, mt, re))
        throw ValidationError("malformed group type \"" + text + "\", expected 1/r(a,b,c)");
    return make(std::stoll(mt[1]), {std::stoll(mt[2]), std::stoll(mt[3]), std::stoll(mt[4])});
}

std::string GroupType::to_string() const {
    std::ostringstream os;
    os << "1/" << r_ << "(" << w_[0] << "," << w_[1] << "," << w_[2] << ")";
    return os.str();
}

std::optional<Int> GroupType::lattice_class(const Vec3& num) const {
    if (r_ == 1) return Int{0};
    // solve coordinate 0 first, then test the g0 candidates
    Int g0 = std::gcd(w_[0], r_);
    if (mod(num[0], g0) != 0) return std::nullopt;
    Int step = r_ / g0;
    Int t0 = 0;
    if (step > 1) t0 = mod((num[0] / g0) * inverse_mod(w_[0] / g0, step), step);
    for (Int t = t0; t < r_; t += step) {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) ok = mod(num[i] - t * w_[i], r_) == 0;
        if (ok) return t;
    }
    return std::nullopt;
}

bool GroupType::contains(const LatticePoint& p) const {
    if (p.den != r_) return false;
    return lattice_class(p.num).has_value();
}

bool GroupType::is_primitive(const LatticePoint& p) const {
    if (!contains(p) || is_zero(p.num)) return false;
    Int g = gcd3(p.num);
    for (Int d = 2; d <= g; ++d) {
        if (g % d) continue;
        if (lattice_class({p.num[0] / d, p.num[1] / d, p.num[2] / d})) return false;
    }
    return true;
}

MembershipReport GroupType::lattice_member(const QVec3& p) const {
    MembershipReport rep;
    Vec3 num;
    for (int i = 0; i < 3; ++i) {
        Rational s = p[i] * r_;
        s.canonicalize();
        if (s.get_den() != 1) return rep;
        if (!s.get_num().fits_slong_p()) return rep;
        num[i] = s.get_num().get_si();
    }
    rep.t = lattice_class(num);
    if (!rep.t) return rep;
    rep.in_lattice = true;
    rep.point = LatticePoint{num, r_};
    rep.primitive = is_primitive(*rep.point);
    return rep;
}

LatticePoint GroupType::axis(int i) const {
    LatticePoint p{{0, 0, 0}, r_};
    p.num[i] = r_;
    return p;
}

LatticePoint GroupType::class_point(Int t) const {
    return {{mod(t * w_[0], r_), mod(t * w_[1], r_), mod(t * w_[2], r_)}, r_};
}

LatticePoint GroupType::primitive_on_ray(const Vec3& dir) const {
    if (is_zero(dir)) throw ValidationError("zero direction has no primitive lattice point");
    Vec3 d = primitive(dir);
    for (Int j = 1; j <= r_; ++j) {
        Vec3 n = scale(d, j);
        if (lattice_class(n)) return {n, r_};
    }
    return {scale(d, r_), r_};
}

Monomial GroupType::primitive_in_M(const Vec3& dir) const {
    Vec3 d = primitive(dir);
    Int s = r_ / std::gcd(r_, mod(dot(w_, d), r_));
    return {scale(d, s)};
}

void require_center(const GroupType& G, const LatticePoint& v) {
    if (!G.contains(v)) throw ValidationError("center " + to_string(v) + " is not a point of L");
    for (Int x : v.num)
        if (x <= 0) throw ValidationError("center " + to_string(v) + " is not interior to the positive octant");
    if (!G.is_primitive(v)) throw ValidationError("center " + to_string(v) + " is not primitive");
    Int t = *G.lattice_class(v.num);
    if (std::gcd(t, G.order()) != 1 && G.order() > 1)
        throw ValidationError("center " + to_string(v) + " does not generate L/Z^3 (class " +
                              std::to_string(t) + ")");
}

RoundDownContext RoundDownContext::make(const GroupType& G, const LatticePoint& v, int k) {
    if (k < 0 || k > 2) throw ValidationError("axis index out of range");
    require_center(G, v);
    RoundDownContext c;
    c.parent_ = G;
    c.v_ = v;
    c.k_ = k;
    c.t_ = *G.lattice_class(v.num);
    if (G.order() == 1) c.t_ = 1;
    Int r = G.order(), ak = v.num[k];
    Vec3 beta;
    for (int j = 0; j < 3; ++j) beta[j] = j == k ? mod(-r, ak) : mod(v.num[j], ak);
    c.sub_ = GroupType::make(ak, beta);
    for (int j = 0; j < 3; ++j) {
        QVec3 b{0, 0, 0};
        if (j == k) {
            b[k] = frac(r, ak);
        } else {
            b[j] = 1;
            b[k] = frac(-v.num[j], ak);
        }
        for (auto& q : b) q.canonicalize();
        c.basis_[j] = b;
    }
    // compatibility self-check of the character map against the eigenbasis
    for (Int e0 = -2; e0 <= 2; ++e0)
        for (Int e1 = -2; e1 <= 2; ++e1)
            for (Int e2 = -2; e2 <= 2; ++e2) {
                Monomial m{{e0, e1, e2}};
                if (c.sub_.weight_of(c.round_down(m)) != c.induced_character(G.weight_of(m)))
                    throw std::logic_error("character map incompatible with round-down at " +
                                           to_string(m));
            }
    return c;
}

Monomial RoundDownContext::round_down(const Monomial& m) const {
    Monomial out = m;
    out.e[k_] = floor_div(dot(v_.num, m.e), parent_.order());
    return out;
}

Int RoundDownContext::induced_character(Int rho) const {
    return mod(mod(t_ * rho, parent_.order()), a_k());
}

QVec3 RoundDownContext::to_x_exponents(const Monomial& xi) const {
    QVec3 x{0, 0, 0};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) x[i] += basis_[j][i] * xi.e[j];
    for (auto& q : x) q.canonicalize();
    return x;
}

Monomial RoundDownContext::from_x_invariant(const Monomial& m) const {
    Int s = dot(v_.num, m.e);
    if (mod(s, parent_.order()) != 0)
        throw ValidationError(to_string(m) + " has no integral xi expression");
    return round_down(m);
}

LatticePoint RoundDownContext::to_sub(const LatticePoint& p) const {
    Int r = parent_.order(), ak = a_k();
    LatticePoint q{{0, 0, 0}, ak};
    q.num[k_] = p.num[k_];
    for (int j = 0; j < 3; ++j) {
        if (j == k_) continue;
        Int s = ak * p.num[j] - p.num[k_] * v_.num[j];
        if (mod(s, r) != 0) throw ValidationError(to_string(p) + " is not a point of L");
        q.num[j] = s / r;
    }
    return q;
}

LatticePoint RoundDownContext::from_sub(const LatticePoint& q) const {
    Int r = parent_.order(), ak = a_k();
    LatticePoint p{{0, 0, 0}, r};
    p.num[k_] = q.num[k_];
    for (int j = 0; j < 3; ++j) {
        if (j == k_) continue;
        Int s = r * q.num[j] + q.num[k_] * v_.num[j];
        if (mod(s, ak) != 0) throw ValidationError(to_string(q) + " is not a point of L_k");
        p.num[j] = s / ak;
    }
    return p;
}

GoodnessReport is_good_subdivision(const GroupType& G, const LatticePoint& v) {
    GoodnessReport rep;
    auto fail = [&](std::string s) {
        rep.good = false;
        rep.violations.push_back(std::move(s));
    };
    if (!G.contains(v)) {
        fail("not a point of L");
        return rep;
    }
    if (!G.is_primitive(v)) fail("not primitive");
    Int t = *G.lattice_class(v.num);
    if (G.order() > 1 && std::gcd(t, G.order()) != 1)
        fail("class " + std::to_string(t) + " does not generate L/Z^3");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (v.num[i] + v.num[j] > G.order())
                fail("a" + std::to_string(i + 1) + "+a" + std::to_string(j + 1) + " = " +
                     std::to_string(v.num[i] + v.num[j]) + " > r");
    return rep;
}

}  // namespace brickwork
