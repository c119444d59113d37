#pragma once

#include "twaf/matrix.hpp"
#include "twaf/poly.hpp"

#include <string>

namespace twaf {

// Rank-one building blocks over Q(zeta_2)(t^{1/2}): SL2 for non-divisible
// non-multipliable rays and SU3 for multipliable ones.  sigma is the Galois
// generator t^{1/2} -> -t^{1/2}.
//
// Conventions pinned by the matrix oracle:
//   - Tits-flavor pluriel law  (u,v)(u',v') = (u+u', v+v'+sigma(u)u'-u sigma(u'))
//   - flavor isomorphism Tits -> CS  (u,v) -> (u, (u sigma(u) - v)/2),
//     inverse (r,s) -> (r, r sigma(r) - 2s); it is a group homomorphism
//     (the quoted direction of the source formula fails the homomorphism
//     property, see the round-trip tests)
//   - CS matrix embedding: upper unipotent with entries r, s, sigma(r)
//   - Tits system: positive coordinates rescale by (2u, 4v)

enum class Flavor { Tits, CS };

struct Pluriel {
    Scalar u, v;
    Flavor flavor;

    Pluriel(Scalar uu, Scalar vv, Flavor f) : u(std::move(uu)), v(std::move(vv)), flavor(f) {}
    static Pluriel zero(Flavor f, int e = 2) { return {Scalar(e), Scalar(e), f}; }
};

// invariant: CS s + sigma(s) = u sigma(u); Tits v + sigma(v) = 0
void check_pluriel(const Pluriel& p);

Pluriel pluriel_mul(const Pluriel& p, const Pluriel& q);
Pluriel pluriel_inverse(const Pluriel& p);
Pluriel flavor_to_cs(const Pluriel& p);
Pluriel flavor_to_tits(const Pluriel& p);

// quadratic invariant s(u,v) = u sigma(u) + v of a Tits pair
Scalar pluriel_s(const Pluriel& p);

// --- SU3 matrix model -------------------------------------------------

// 3x3 unipotent embedding; sign = +1 upper, -1 lower.  CS coordinates are
// embedded directly; Tits coordinates go through the flavor isomorphism and
// the positive Tits rescaling.
ExactMatrix su3_embed(const Pluriel& p, int sign);
// the Tits-system root group element x^T_{+-a}(u, v) for Tits pairs
ExactMatrix su3_x(const Pluriel& p, int sign);
// (2a)^vee(lambda) = diag(lambda, 1, lambda^{-1})
ExactMatrix su3_coweight_2a(const Scalar& lambda);
// m_a(p): torus-normalising Weyl representative built from p (s(p) a unit)
ExactMatrix su3_m(const Pluriel& p);

// the explicit quasi-split involution of SL3 (entrywise 2x2 minors)
ExactMatrix su3_matrix_involution(const ExactMatrix& m);
// its differential on sl3
ExactMatrix su3_involution_derivative(const ExactMatrix& x);
// membership of the fixed locus of (galois) o (matrix involution)
bool su3_is_fixed_point(const ExactMatrix& m);

// --- SL2 matrix model -------------------------------------------------

ExactMatrix sl2_x(const Scalar& r, int sign);
ExactMatrix sl2_coweight(const Scalar& lambda);
ExactMatrix sl2_m(const Scalar& r);

struct Sl2Exchange {
    Scalar divisor;    // t(r, r') = 1 - r r'
    Scalar neg_arg;    // r' / t
    Scalar torus_arg;  // t
    Scalar pos_arg;    // r / t
};
// throws std::domain_error when the divisor vanishes ("wall")
Sl2Exchange sl2_exchange(const Scalar& r, const Scalar& rp);

struct Su3Exchange {
    Scalar divisor;  // Norm of the torus argument
    Pluriel neg;
    Scalar torus_arg;
    Pluriel pos;
};
// numeric Tits-flavor exchange via exact LDU; needs the leading minor to be
// a unit of the Laurent ring (e.g. specialised rational arguments)
Su3Exchange su3_exchange(const Pluriel& p, const Pluriel& q);

// --- symbolic expansion and the integrality audit ----------------------

struct Su3SymbolicExchange {
    // formal variables u, sigma(u), v, u', sigma(u'), v'
    PolyRing ring{2};
    int vu, vsu, vv, vu2, vsu2, vv2;

    Frac divisor;         // leading principal minor = torus argument
    Frac neg_u, neg_v;    // coordinates of the x_{-a} factor
    Frac pos_u, pos_v;    // coordinates of the x_{+a} factor
    bool round_trip_ok;   // L D U reassembles the product
    bool torus_is_2a_coweight;  // middle diagonal entry is 1
    Poly paper_divisor;   // 1 - 2 sigma(u) u' + s(u,v) s(u',v') after the
                          // sign similitude that matches this convention
    bool divisor_matches_paper;
    bool first_coordinate_matches_paper;

    Su3SymbolicExchange();
};

Su3SymbolicExchange su3_exchange_symbolic(Flavor flavor);

// --- words in the rank-one generators ----------------------------------

// x_a(arg), m_a(arg) and coweight factors in the SL2 or SU3 matrix model;
// every evaluated word has determinant 1
struct GroupWord {
    struct Factor {
        enum Kind { X, M, Coweight } kind;
        int sign;              // +1 / -1 root for X; ignored otherwise
        Scalar r;              // SL2 argument or coweight value
        std::optional<Pluriel> p;  // SU3 argument
    };
    enum Model { Sl2, Su3 } model;
    std::vector<Factor> factors;

    static GroupWord sl2() { return {Sl2, {}}; }
    static GroupWord su3() { return {Su3, {}}; }
    GroupWord& x(const Scalar& arg, int sign) {
        factors.push_back({Factor::X, sign, arg, std::nullopt});
        return *this;
    }
    GroupWord& x(const Pluriel& arg, int sign) {
        factors.push_back({Factor::X, sign, Scalar(arg.u.twist_order()), arg});
        return *this;
    }
    GroupWord& m(const Scalar& arg) {
        factors.push_back({Factor::M, +1, arg, std::nullopt});
        return *this;
    }
    GroupWord& m(const Pluriel& arg) {
        factors.push_back({Factor::M, +1, Scalar(arg.u.twist_order()), arg});
        return *this;
    }
    GroupWord& coweight(const Scalar& lambda) {
        factors.push_back({Factor::Coweight, +1, lambda, std::nullopt});
        return *this;
    }
};

// exact evaluation; asserts determinant 1
ExactMatrix evaluate_word(const GroupWord& w);

struct IntegralityReport {
    bool pass;
    int denominator_2_power;  // largest 2-power below the line, 0 when passing
    std::string witness;      // offending coordinate, empty when passing
};

// Expands the exchange symbolically and checks that every output coordinate
// lies in Z[u, v, u', v', conjugates][1/t, 1/sigma(t)].  Tits flavor must
// pass; the CS flavor is the positive control exhibiting 2-denominators.
IntegralityReport su3_integrality_audit(Flavor flavor);

// characteristic-2 degeneration: the Tits-coordinate exchange reduces mod 2
// to the SL2 exchange applied to (s(u,v), s(u',v'))
bool su3_char2_collapse_matches_sl2();

}  // namespace twaf
