#pragma once

#include "twaf/lattice.hpp"
#include "twaf/relative.hpp"

#include <map>

namespace twaf {

// Affine root a + n; the gradient is a relative root, or zero for the
// imaginary roots coming from the loop torus.
struct AffineRoot {
    QVec gradient;
    Rat level;

    bool is_real() const {
        for (const Rat& c : gradient)
            if (c != 0) return true;
        return false;
    }
    bool operator==(const AffineRoot& o) const { return gradient == o.gradient && level == o.level; }
    bool operator<(const AffineRoot& o) const {
        return gradient != o.gradient ? gradient < o.gradient : level < o.level;
    }
};

// a bounded non-empty set of points of the apartment, e.g. a facet sample
struct BoundedSet {
    std::vector<QVec> points;
};

using ConcaveFunction = std::map<int, Rat>;  // relative root index -> f(a)

// The standard apartment: points live in the span of the relative roots,
// evaluation of a gradient on a point goes through the invariant form, and
// the origin is the pinned valuation (omega(t) = 1).
class Apartment {
  public:
    explicit Apartment(std::shared_ptr<const RelativeRootDatum> datum);

    const RelativeRootDatum& datum() const { return *datum_; }

    Rat eval_gradient(const QVec& a, const QVec& x) const { return datum_->form(a, x); }
    Rat eval(const AffineRoot& alpha, const QVec& x) const {
        return alpha.is_real() ? eval_gradient(alpha.gradient, x) + alpha.level : alpha.level;
    }
    bool positive(const AffineRoot& alpha) const;

    // walls of the fundamental alcove (the simple affine roots)
    const std::vector<AffineRoot>& walls() const { return walls_; }
    const std::vector<QVec>& alcove_vertices() const { return vertices_; }
    QVec alcove_barycenter() const;

    // all real affine roots with |level| <= bound
    std::vector<AffineRoot> real_roots(const Rat& bound) const;
    // positive imaginary levels up to the bound
    std::vector<Rat> imaginary_levels(const Rat& bound) const;

    // the optimal concave function of a bounded set
    ConcaveFunction f_omega(const BoundedSet& omega) const;
    // { a : f(a) + f(-a) = 0 }
    std::vector<QVec> residual_roots(const ConcaveFunction& f) const;

    // requires the set to sit inside the closed fundamental alcove
    std::vector<AffineRoot> parahoric_subset(const BoundedSet& facet, const Rat& level_bound) const;

    // facet opposition: pointwise negation with the t -> t^{-1} level
    // bookkeeping; an involution on facets
    BoundedSet opposition(const BoundedSet& facet) const;

    struct LeviDatum {
        std::vector<QVec> residual;       // Phi_f
        std::map<int, Rat> shifts;        // rel root index -> f_f(a)
        size_t weyl_order;                // |W(Phi_f)|
    };
    LeviDatum levi_datum(const BoundedSet& facet) const;

    struct SpecialPoint {
        QVec point;
        std::vector<QVec> residual;
        bool special;  // residual rank equals the relative rank
    };
    // vertices of the fundamental alcove with their residual systems
    std::vector<SpecialPoint> special_points() const;

    // the facet of the fundamental alcove closure with the given walls
    // vanishing (relative-interior sample point)
    BoundedSet facet(const std::vector<int>& vanishing_walls) const;
    BoundedSet fundamental_alcove() const { return facet({}); }

    bool in_closed_alcove(const QVec& x) const;

  private:
    std::shared_ptr<const RelativeRootDatum> datum_;
    std::vector<AffineRoot> walls_;
    std::vector<QVec> vertices_;  // vertex opposite to each wall
};

}  // namespace twaf
