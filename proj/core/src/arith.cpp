#include "brickwork/arith.hpp"

#include <sstream>

namespace brickwork {

Int inverse_mod(Int a, Int m) {
    if (m == 1) return 0;
    Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw ValidationError(std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod(old_s, m);
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    auto ok = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string p = s.substr(0, slash);
    std::string q = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!ok(p, true) || !ok(q, false)) throw ValidationError("malformed rational \"" + s + "\"");
    if (p[0] == '+') p = p.substr(1);
    mpz_class num(p), den(q);
    if (den == 0) throw ValidationError("zero denominator in \"" + s + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Vec3& v) {
    std::ostringstream os;
    os << "(" << v[0] << "," << v[1] << "," << v[2] << ")";
    return os.str();
}

}  // namespace brickwork
