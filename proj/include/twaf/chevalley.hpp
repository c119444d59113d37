#pragma once

#include "twaf/root_system.hpp"

#include <map>
#include <optional>

namespace twaf {

// sparse vector over a Lie algebra basis
using SVec = std::vector<std::pair<int, Rat>>;

SVec sv_add(const SVec& x, const SVec& y);
SVec sv_scale(const Rat& c, const SVec& x);
bool sv_is_zero(const SVec& x);

// Lie ring with a Chevalley basis: basis vectors e_gamma for every root
// gamma, then the simple coroots h_i.  Brackets are exact and integral.
class LieAlgebra {
  public:
    // lattice-cocycle construction; requires a simply laced system
    static LieAlgebra simply_laced(const FiniteRootSystem& rs);

    const FiniteRootSystem& system() const { return rs_; }
    int num_roots() const { return int(rs_.roots.size()); }
    int rank() const { return rs_.rank(); }
    int dim() const { return num_roots() + rank(); }

    // basis index helpers
    int e_index(int root_idx) const { return root_idx; }
    int h_index(int i) const { return num_roots() + i; }
    bool is_root_vector(int basis_idx) const { return basis_idx < num_roots(); }

    const SVec& bracket(int i, int j) const { return table_[i][j]; }
    SVec bracket(const SVec& x, const SVec& y) const;

    // structure constant N_{ab}: [e_a, e_b] = N e_{a+b} (0 if a+b not a root)
    Rat structure_constant(int ra, int rb) const;

    // coroot of an arbitrary root as a sparse h-vector
    SVec coroot(int root_idx) const;

    // weight <h, gamma> of e_gamma against a Cartan element
    Rat weight(const SVec& h, int root_idx) const;

    bool jacobi_holds(int i, int j, int k) const;
    bool jacobi_holds_all() const;  // serial exhaustive check

    // largest p with b - p a a root: |N_{ab}| must equal p + 1
    int string_down_length(int ra, int rb) const;

    // replace e_g and e_{-g} by their negatives (keeps the Chevalley axioms)
    void flip_root_pair(int root_idx);

    // block-diagonal product of `copies` copies over product_system(...)
    static LieAlgebra product(const LieAlgebra& g, int copies);

    // fixed-point subalgebra of an automorphism given by signed root
    // permutation (the image of e_g is eps[g] * e_{sigma g}); returns the
    // folded algebra with basis indexed by the given folded system
    static LieAlgebra fold(const LieAlgebra& g, const DiagramAutomorphism& sigma,
                           const std::vector<int>& eps, const FiniteRootSystem& folded);

  private:
    LieAlgebra() = default;
    void rebuild_from(const std::vector<std::vector<SVec>>& table) { table_ = table; }

    FiniteRootSystem rs_;
    std::vector<std::vector<SVec>> table_;
};

// Chevalley system: a pinned Lie algebra together with the signs of the
// Weyl-element action  Ad(m_gamma) e_b = eps * e_{s_gamma(b)}.
class ChevalleySystem {
  public:
    explicit ChevalleySystem(LieAlgebra L) : L_(std::move(L)) {}

    const LieAlgebra& algebra() const { return L_; }
    const FiniteRootSystem& system() const { return L_.system(); }

    // Ad of the one-parameter unipotent exp(c ad e_gamma) applied to x
    SVec ad_exp(int root_idx, const Rat& c, const SVec& x) const;
    // Ad(m_gamma) with m_gamma = y_gamma(1) y_{-gamma}(1) y_gamma(1)
    SVec weyl_conjugate(int gamma_idx, const SVec& x) const;
    // sign eps_{gamma,b}; computed through the ad oracle and cached
    int weyl_sign(int gamma_idx, int b_idx) const;

    void flip_root_pair(int root_idx) { L_.flip_root_pair(root_idx); cache_.clear(); }

  private:
    LieAlgebra L_;
    mutable std::map<std::pair<int, int>, int> cache_;
};

// signs eps_{gamma,sigma} of a diagram automorphism on the root vectors
struct SteinbergSigns {
    DiagramAutomorphism sigma;
    std::vector<int> eps;  // per root index

    int sign(int root_idx) const { return eps[root_idx]; }
};

// sign table of sigma acting as the pinned Lie homomorphism
SteinbergSigns automorphism_signs(const ChevalleySystem& cs, const DiagramAutomorphism& sigma);

// group generated by a set of diagram automorphisms
std::vector<DiagramAutomorphism> generate_group(int rank, const std::vector<DiagramAutomorphism>& gens);

// Re-sign the system so that eps_{gamma,g} = 1 for every generator g
// whenever the average of gamma is not divisible in the folded system;
// mutates cs and returns the final tables, one per generator.  Throws when
// the constraints cannot be met (never happens for the supported catalogue).
std::vector<SteinbergSigns> steinberg_normalize(ChevalleySystem& cs, const std::vector<DiagramAutomorphism>& gens);
SteinbergSigns steinberg_normalize(ChevalleySystem& cs, const DiagramAutomorphism& sigma);

// divisibility of the orbit-average of an absolute root, used by the
// Chevalley--Steinberg condition; group = all automorphisms generated by
// sigma (and iota when given)
bool average_is_divisible(const FiniteRootSystem& rs, const std::vector<DiagramAutomorphism>& group,
                          const IVec& root);

// root system spanned by the orbit averages; requires the fold to be
// reduced (the non-reduced averages of A_{2n} are handled by the relative
// datum, not by a folded Chevalley basis)
FiniteRootSystem folded_system(const FiniteRootSystem& rs, const DiagramAutomorphism& sigma);

// Exponent tables of the 2-power rescaling that fixes integrality of the
// relative coordinates in the non-reduced case.
struct TitsExponents {
    // absolute side: exponent of 2 for each root index, <varpi_gamma^vee, alpha>
    std::vector<int> absolute;
    // relative side: chi_+(a) for relative roots, keyed by positivity: the
    // multipliable coordinates scale by (2^chi u, 4^chi v)
    bool relative_trivial;  // true when the relative system is reduced
};

}  // namespace twaf
