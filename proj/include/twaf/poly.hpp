#pragma once

#include "twaf/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace twaf {

// Multivariate polynomials over Scalar, with a designated action of the
// Galois generator sigma on the variables: each variable maps to a variable
// times +-1 (conjugate pairs u <-> sigma(u), trace-zero v -> -v, cycles for
// e = 3).  Coefficients transform through Scalar::galois(1).
//
// A PolyRing owns the variable table; all polynomials of one computation
// must come from the same ring and the ring must outlive them.
class PolyRing {
  public:
    explicit PolyRing(int twist_order) : e_(twist_order) {}

    // a variable fixed by sigma
    int add_var(const std::string& name) {
        vars_.push_back({name, int(vars_.size()), 1});
        return int(vars_.size()) - 1;
    }
    // a pair u, sigma(u) swapped by sigma
    std::pair<int, int> add_conjugate_pair(const std::string& name) {
        int u = int(vars_.size());
        vars_.push_back({name, u + 1, 1});
        vars_.push_back({"s" + name, u, 1});
        return {u, u + 1};
    }
    // a variable with sigma(v) = -v (trace-zero coordinate)
    int add_antisymmetric_var(const std::string& name) {
        vars_.push_back({name, int(vars_.size()), -1});
        return int(vars_.size()) - 1;
    }
    // a cycle v_0 -> v_1 -> ... -> v_{k-1} -> v_0
    std::vector<int> add_cycle(const std::string& name, int k) {
        std::vector<int> ids;
        int base = int(vars_.size());
        for (int i = 0; i < k; ++i) {
            vars_.push_back({name + std::to_string(i), base + (i + 1) % k, 1});
            ids.push_back(base + i);
        }
        return ids;
    }

    int twist_order() const { return e_; }
    size_t var_count() const { return vars_.size(); }
    const std::string& var_name(int i) const { return vars_[i].name; }
    int sigma_image(int i) const { return vars_[i].image; }
    int sigma_sign(int i) const { return vars_[i].sign; }

  private:
    struct Var {
        std::string name;
        int image;
        int sign;
    };
    int e_;
    std::vector<Var> vars_;
};

using Mono = std::vector<uint16_t>;

class Poly {
  public:
    Poly() : ring_(nullptr) {}
    explicit Poly(const PolyRing* ring) : ring_(ring) {}
    Poly(const PolyRing* ring, const Scalar& c) : ring_(ring) {
        if (!c.is_zero()) t_[Mono(ring->var_count(), 0)] = c;
    }
    static Poly variable(const PolyRing* ring, int v, const Scalar& coeff);
    static Poly constant(const PolyRing* ring, const Rat& q) {
        return Poly(ring, Scalar(ring->twist_order(), q));
    }

    const PolyRing* ring() const { return ring_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::map<Mono, Scalar>& terms() const { return t_; }

    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Scalar& c, const Poly& p);

    // sigma applied k times (variables permuted/signed, coefficients twisted)
    Poly sigma(int k = 1) const;

    // full substitution of every variable by a Scalar
    Scalar substitute(const std::vector<Scalar>& values) const;

    // exact division; requires the divisor's leading coefficient to be a
    // unit Scalar, returns nullopt when the division leaves a remainder
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    bool coefficients_integral() const;
    bool coefficients_2_integral() const;
    // largest power of 2 dividing some coefficient denominator (0 if 2-integral)
    int max_denominator_2_power() const;
    // congruence mod 2 (requires both sides 2-integral)
    static bool mod2_equal(const Poly& a, const Poly& b);

    std::string str() const;

  private:
    void set(const Mono& m, Scalar v);

    const PolyRing* ring_;
    std::map<Mono, Scalar> t_;
};

// Fraction of polynomials without gcd reduction; equality and linear algebra
// go through cross-multiplication.
struct Frac {
    Poly num;
    Poly den;

    Frac() = default;
    Frac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::domain_error("Frac: zero denominator");
    }
    explicit Frac(const Poly& n) : num(n), den(Poly(n.ring(), Scalar::one(n.ring()->twist_order()))) {}

    bool is_zero() const { return num.is_zero(); }

    friend Frac operator+(const Frac& a, const Frac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Frac operator-(const Frac& a, const Frac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Frac operator*(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.num.is_zero()) throw std::domain_error("Frac: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    Frac operator-() const { return {-num, den}; }

    friend bool operator==(const Frac& a, const Frac& b) { return a.num * b.den == b.num * a.den; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

    Frac sigma(int k = 1) const { return {num.sigma(k), den.sigma(k)}; }

    // cancel as much of the denominator as exact division allows
    Frac reduced() const {
        if (auto q = num.divide_exact(den)) return Frac(*q);
        return *this;
    }

    // specialize all variables and t^{1/e} to rationals; exact field value
    Cyclo specialize(const std::vector<Scalar>& values, const Rat& t_root) const;
};

}  // namespace twaf
