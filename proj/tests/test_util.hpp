#pragma once

#include "twaf/scalar.hpp"

#include <random>

namespace twaf::testing {

// deterministic random source for property tests
class Rng {
  public:
    explicit Rng(uint64_t seed) : g_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }

    Rat rational(int max_abs_num = 9, int max_den = 5) {
        int n = integer(-max_abs_num, max_abs_num);
        int d = integer(1, max_den);
        return Rat(n, d);
    }
    Rat nonzero_rational(int max_abs_num = 9, int max_den = 5) {
        Rat r;
        do { r = rational(max_abs_num, max_den); } while (r == 0);
        return r;
    }

    // random Laurent scalar with a few terms, exponents in [-span, span]/e
    Scalar scalar(int e, int terms = 3, int span = 4) {
        Scalar s(e);
        for (int i = 0; i < terms; ++i) {
            Cyclo c(rational());
            if (e == 3 && integer(0, 1)) c.b = rational();
            s += Scalar::monomial(e, integer(-span, span), c);
        }
        return s;
    }
    Scalar nonzero_scalar(int e, int terms = 3, int span = 4) {
        Scalar s(e);
        do { s = scalar(e, terms, span); } while (s.is_zero());
        return s;
    }

  private:
    std::mt19937_64 g_;
};

}  // namespace twaf::testing
