#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace brickwork {

using Int = std::int64_t;
using Vec3 = std::array<Int, 3>;
using Rational = mpq_class;
using QVec3 = std::array<Rational, 3>;

// n/d in lowest terms; the two-argument mpq constructor does not reduce
inline Rational frac(Int n, Int d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// bad input (exit code 2 at the CLI)
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// the input is fine but the mathematics refuses (exit code 3)
class MathFailure : public std::runtime_error {
public:
    MathFailure(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Int mod(Int a, Int m) {
    Int x = a % m;
    return x < 0 ? x + m : x;
}

inline Int gcd3(const Vec3& v) {
    return std::gcd(std::gcd(v[0], v[1]), v[2]);
}

inline Int dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Int det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(cross(a, b), c);
}

inline Vec3 add(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 scale(const Vec3& a, Int s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

// divide out the content; zero stays zero
inline Vec3 primitive(const Vec3& v) {
    Int g = gcd3(v);
    if (g == 0) return v;
    return {v[0] / g, v[1] / g, v[2] / g};
}

// modular inverse, throws when not a unit
Int inverse_mod(Int a, Int m);

// "p" or "p/q" in lowest terms
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

std::string to_string(const Vec3& v);

}  // namespace brickwork
