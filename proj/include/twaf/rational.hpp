#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twaf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// floor(a/b) for exact integers, b > 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

// smallest element of offset + step*Z that is >= x (step > 0)
inline Rat ceil_to_progression(const Rat& x, const Rat& offset, const Rat& step) {
    if (step <= 0) throw std::invalid_argument("ceil_to_progression: step must be positive");
    Rat k = (x - offset) / step;
    return offset + Rat(ceil_rat(k)) * step;
}

inline std::string to_string(const Rat& r) { return r.str(); }

// reduction mod a prime p of a rational with denominator prime to p
inline int mod_p(const Rat& r, int p) {
    Int d = den(r) % p;
    if (d == 0) throw std::domain_error("mod_p: denominator divisible by " + std::to_string(p));
    Int n = num(r) % p;
    if (n < 0) n += p;
    // invert d mod p by brute force (p is tiny)
    int di = static_cast<int>(d), inv = 1;
    for (int i = 1; i < p; ++i)
        if ((di * i) % p == 1) { inv = i; break; }
    return static_cast<int>((n * inv) % p);
}

}  // namespace twaf
