#pragma once

#include "twaf/rational.hpp"

#include <iosfwd>
#include <ostream>

namespace twaf {

// Element a + b*zeta_e of Q(zeta_e) for e in {1,2,3}.  For e <= 2 the root of
// unity is rational (1 resp. -1) and b is normalised to zero on construction,
// so comparisons stay structural.
struct Cyclo {
    Rat a{0};
    Rat b{0};

    Cyclo() = default;
    Cyclo(Rat re) : a(std::move(re)) {}
    Cyclo(int re) : a(re) {}
    Cyclo(Rat re, Rat zc) : a(std::move(re)), b(std::move(zc)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool operator==(const Cyclo& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }
};

inline Cyclo normalize(Cyclo c, int e) {
    if (e == 1 && c.b != 0) { c.a += c.b; c.b = 0; }
    if (e == 2 && c.b != 0) { c.a -= c.b; c.b = 0; }
    return c;
}

inline Cyclo cyc_add(const Cyclo& x, const Cyclo& y) { return {x.a + y.a, x.b + y.b}; }
inline Cyclo cyc_sub(const Cyclo& x, const Cyclo& y) { return {x.a - y.a, x.b - y.b}; }
inline Cyclo cyc_neg(const Cyclo& x) { return {-x.a, -x.b}; }

// zeta^2 = -1 - zeta when e = 3; lower e carry no zeta part.
inline Cyclo cyc_mul(const Cyclo& x, const Cyclo& y, int e) {
    if (e < 3) return {x.a * y.a};
    Rat bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
}

// Galois conjugation zeta -> zeta^{-1}; identity for e <= 2.
inline Cyclo cyc_conj(const Cyclo& x, int e) {
    if (e < 3) return x;
    return {x.a - x.b, -x.b};
}

inline Rat cyc_norm(const Cyclo& x, int e) {
    if (e < 3) return x.a * x.a;
    return x.a * x.a - x.a * x.b + x.b * x.b;
}

inline Cyclo cyc_inv(const Cyclo& x, int e) {
    Rat n = cyc_norm(x, e);
    if (n == 0) throw std::domain_error("cyc_inv: division by zero");
    Cyclo c = cyc_conj(x, e);
    return {c.a / n, c.b / n};
}

// power of zeta_e as a Cyclo
inline Cyclo zeta_pow(int k, int e) {
    k %= e;
    if (k < 0) k += e;
    if (e == 1) return {1};
    if (e == 2) return {k == 0 ? 1 : -1};
    switch (k) {
        case 0: return {1};
        case 1: return {Rat(0), Rat(1)};
        default: return {Rat(-1), Rat(-1)};  // zeta^2
    }
}

inline bool cyc_is_integral(const Cyclo& x) { return is_integer(x.a) && is_integer(x.b); }

// true when every denominator is odd (no factor of 2 below the line)
inline bool cyc_is_2_integral(const Cyclo& x) {
    return den(x.a) % 2 != 0 && den(x.b) % 2 != 0;
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

}  // namespace twaf
