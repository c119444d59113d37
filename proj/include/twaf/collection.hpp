#pragma once

#include "twaf/poly.hpp"
#include "twaf/types.hpp"

#include <memory>

namespace twaf {

// Words in the absolute root groups y_gamma(arg) with polynomial arguments,
// together with the collection algorithm that brings them to the canonical
// order of a rank-2 cone.  Group commutator corrections are computed from
// the adjoint representation, never tabulated.
struct AbsoluteFactor {
    int root;  // absolute root index
    Poly arg;
};
using AbsoluteWord = std::vector<AbsoluteFactor>;

class WordCalculus {
  public:
    WordCalculus(const TwistedType& type, std::shared_ptr<PolyRing> ring);

    const PolyRing* ring() const { return ring_.get(); }
    const TwistedType& type() const { return *type_; }

    // canonical embeddings of the relative root groups (Tits coordinates);
    // the canonical lift of c is its smallest absolute root
    AbsoluteWord embed_ndnm(const QVec& c, const Poly& r) const;
    AbsoluteWord embed_mult(const QVec& c, const Poly& u, const Poly& v) const;

    AbsoluteWord inverse_word(const AbsoluteWord& w) const;

    // collection into ascending cone order for the cone spanned by a, b
    AbsoluteWord collect(AbsoluteWord w, const QVec& a, const QVec& b) const;

    // adjoint representation over the polynomial ring
    std::vector<std::vector<Poly>> adjoint(const AbsoluteWord& w) const;

    // group commutator of two one-parameter factors as an ordered word,
    // derived from the adjoint representation and cached
    AbsoluteWord commutator_correction(int g, int d, const Poly& x, const Poly& y) const;

  private:
    std::pair<Rat, Rat> cone_coords(const QVec& avg, const QVec& a, const QVec& b) const;
    std::vector<std::pair<int, Rat>> commutator_shape(int g, int d) const;  // (root, C_ij) with powers encoded

    const TwistedType* type_;
    std::shared_ptr<PolyRing> ring_;
    mutable std::map<std::pair<int, int>, std::vector<std::tuple<int, int, int, Rat>>> cache_;
};

// The relative commutator [x_a(..), x_b(..)] expanded as an ordered product
// of root group elements for the interval ]a,b[.
struct RelCommutatorTerm {
    QVec root;
    bool pluriel;  // two Tits coordinates when true
    Poly u;        // the single coordinate for nd-nm roots
    Poly v;
};

struct RelCommutator {
    std::shared_ptr<PolyRing> ring;
    std::vector<int> a_vars;  // (r, sigma r, ...) or (u, sigma u, v)
    std::vector<int> b_vars;
    std::vector<RelCommutatorTerm> terms;
    bool oracle_match;  // adjoint matrices of both sides agree symbolically
};

// requires non-proportional, non-divisible relative roots
RelCommutator relative_commutator(const TwistedType& type, const QVec& a, const QVec& b);

}  // namespace twaf
