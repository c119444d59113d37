#pragma once

#include "twaf/cyclotomic.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>

namespace twaf {

// Exact element of Q(zeta_e)[t^{1/e}, t^{-1/e}] with e in {1,2,3}.  Exponents
// are stored as integer multiples of 1/e; zero coefficients are never kept.
//
// The Galois group of Q(zeta_e, t^{1/e}) / Q(t) acts by
//   sigma_j : t^{1/e} -> zeta^j t^{1/e}   (coefficients untouched)
//   conj    : zeta    -> zeta^{-1}        (exponents untouched)
class Scalar {
  public:
    Scalar() : e_(1) {}
    explicit Scalar(int twist_order) : e_(check_order(twist_order)) {}
    Scalar(int twist_order, const Rat& constant) : e_(check_order(twist_order)) {
        if (constant != 0) c_[0] = Cyclo(constant);
    }

    static Scalar monomial(int e, long k_over_e, Cyclo coeff = Cyclo(1)) {
        Scalar s(e);
        coeff = normalize(coeff, e);
        if (!coeff.is_zero()) s.c_[k_over_e] = coeff;
        return s;
    }
    // t^{1/e_a} for a sub-extension of degree e_a | e
    static Scalar t_frac(int e, int e_a) {
        if (e % e_a != 0) throw std::invalid_argument("t_frac: e_a must divide e");
        return monomial(e, e / e_a);
    }
    static Scalar t(int e) { return monomial(e, e); }
    static Scalar zeta(int e) { return monomial(e, 0, zeta_pow(1, e)); }
    static Scalar one(int e) { return Scalar(e, 1); }

    int twist_order() const { return e_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<long, Cyclo>& coefficients() const { return c_; }

    bool operator==(const Scalar& o) const { return e_ == o.e_ && c_ == o.c_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const {
        Scalar r(e_);
        for (auto& [k, v] : c_) r.c_[k] = cyc_neg(v);
        return r;
    }
    Scalar& operator+=(const Scalar& o) {
        match(o);
        for (auto& [k, v] : o.c_) set(k, cyc_add(get(k), v));
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        match(o);
        for (auto& [k, v] : o.c_) set(k, cyc_sub(get(k), v));
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.match(b);
        Scalar r(a.e_);
        for (auto& [k1, v1] : a.c_)
            for (auto& [k2, v2] : b.c_) r.set(k1 + k2, cyc_add(r.get(k1 + k2), cyc_mul(v1, v2, a.e_)));
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    friend Scalar operator*(const Rat& q, const Scalar& s) {
        Scalar r(s.e_);
        if (q == 0) return r;
        for (auto& [k, v] : s.c_) r.c_[k] = cyc_mul(Cyclo(q), v, s.e_);
        return r;
    }

    // sigma_j, optionally composed with the cyclotomic conjugation
    Scalar galois(int j, bool conj = false) const {
        Scalar r(e_);
        for (auto& [k, v] : c_) {
            Cyclo c = conj ? cyc_conj(v, e_) : v;
            r.set(k, cyc_mul(c, zeta_pow(static_cast<int>((j * (k % e_)) % e_), e_), e_));
        }
        return r;
    }

    // Norm and trace down to the subring Q(zeta)[t^{+-d/e}], taken over the
    // subgroup of <sigma> fixing t^{d/e}.  The default d = e is the full
    // norm down to Q(zeta)[t^{+-1}].
    Scalar norm(int d = 0) const {
        Scalar r = one(e_);
        for (int j : fixing_coset(d == 0 ? e_ : d)) r = r * galois(j);
        return r;
    }
    Scalar trace(int d = 0) const {
        Scalar r(e_);
        for (int j : fixing_coset(d == 0 ? e_ : d)) r += galois(j);
        return r;
    }

    // membership in Q(zeta)[t^{+-d/e}]
    bool in_subring(int d) const {
        for (auto& [k, v] : c_)
            if (k % d != 0) return false;
        return true;
    }

    // t-adic valuation as a rational (min exponent / e); error on zero
    Rat valuation() const {
        if (c_.empty()) throw std::domain_error("valuation of zero");
        return Rat(c_.begin()->first, e_);
    }

    // units are nonzero monomials
    bool is_unit() const { return c_.size() == 1; }
    Scalar inverse() const {
        if (!is_unit()) throw std::domain_error("Scalar::inverse: not a unit (non-monomial)");
        auto& [k, v] = *c_.begin();
        return monomial(e_, -k, cyc_inv(v, e_));
    }

    // substitute t^{1/e} -> x (nonzero rational); lands in Q(zeta_e)
    Cyclo specialize(const Rat& x) const {
        if (x == 0) throw std::invalid_argument("specialize at 0 is not defined for Laurent scalars");
        Cyclo acc(0);
        for (auto& [k, v] : c_) {
            Rat p = 1;
            long n = k;
            for (; n > 0; --n) p *= x;
            for (; n < 0; ++n) p /= x;
            acc = cyc_add(acc, cyc_mul(v, Cyclo(p), e_));
        }
        return normalize(acc, e_);
    }

    bool is_integral() const {
        for (auto& [k, v] : c_)
            if (!cyc_is_integral(v)) return false;
        return true;
    }
    bool is_2_integral() const {
        for (auto& [k, v] : c_)
            if (!cyc_is_2_integral(v)) return false;
        return true;
    }
    // constant term as rational; error if not a rational constant
    Rat rational_value() const {
        if (c_.empty()) return 0;
        if (c_.size() > 1 || c_.begin()->first != 0 || !c_.begin()->second.is_rational())
            throw std::domain_error("Scalar::rational_value: not a rational constant");
        return c_.begin()->second.a;
    }

    std::string str() const;

  private:
    static int check_order(int e) {
        if (e < 1 || e > 3) throw std::invalid_argument("twist order must be 1, 2 or 3");
        return e;
    }
    void match(const Scalar& o) const {
        if (e_ != o.e_) throw std::invalid_argument("mismatched twist orders");
    }
    Cyclo get(long k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Cyclo(0) : it->second;
    }
    void set(long k, Cyclo v) {
        v = normalize(std::move(v), e_);
        if (v.is_zero())
            c_.erase(k);
        else
            c_[k] = std::move(v);
    }
    // representatives of the subgroup of Z/e fixing t^{d/e}
    std::vector<int> fixing_coset(int d) const {
        if (d < 1 || e_ % d != 0) throw std::invalid_argument("norm/trace: d must divide e");
        std::vector<int> js;
        for (int j = 0; j < e_; ++j)
            if ((j * d) % e_ == 0) js.push_back(j);
        return js;
    }

    int e_;
    std::map<long, Cyclo> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace twaf
