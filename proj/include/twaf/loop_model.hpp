#pragma once

#include "twaf/apartment.hpp"
#include "twaf/cyclotomic.hpp"
#include "twaf/lattice.hpp"
#include "twaf/parallel.hpp"
#include "twaf/types.hpp"

#include <map>

namespace twaf {

// Fixed points of the twisted Galois action on g tensor Z[zeta_e, s^{+-1}],
// s = t^{1/e}, over the 2-power rescaled (Tits) lattice of g.  Basis
// vectors are graded by the s-degree and carry a weight: a relative root,
// or zero for the Cartan (imaginary) part.  All structure constants are
// integral; this is asserted during construction.
class LoopAlgebra {
  public:
    // level_bound caps |t-level| = |degree| / e
    LoopAlgebra(const TwistedType& type, int level_bound);

    struct BasisVec {
        int degree;    // s-degree m; the t-level is m / e
        int weight;    // relative root index, or -1 for the Cartan part
        ZVec ambient;  // coordinates over the ambient block (see ambient_dim)
    };

    const TwistedType& type() const { return *type_; }
    int level_bound() const { return nlevels_; }
    int dim() const { return int(basis_.size()); }
    const BasisVec& basis(int i) const { return basis_[i]; }
    Rat t_level(int i) const { return Rat(basis_[i].degree, type_->twist_order()); }

    // indices at a given degree / weight
    std::vector<int> at_degree(int degree) const;
    int dim_at_level(const Rat& level) const;
    int cartan_dim_at_level(const Rat& level) const;

    // exact bracket in the fixed basis; nullopt when the result leaves the
    // truncation window
    std::optional<SVec> bracket(int i, int j) const;

    // weight support: for each relative root, the set of admissible levels
    // seen inside the window, with multiplicities
    std::map<int, std::vector<Rat>> real_support() const;

    struct JacobiReport {
        bool pass;
        long long checked;
        std::string witness;
    };
    JacobiReport jacobi_audit(Exec exec = Exec::Serial) const;

    struct DividedPowerReport {
        bool pass;
        long long checked;
        std::string witness;
    };
    // ad(x)^k / k! preserves the lattice for every real root vector x of
    // |t-level| <= 1 and k <= k_max
    DividedPowerReport divided_power_audit(int k_max, Exec exec = Exec::Serial) const;

    struct SpanReport {
        bool pass;               // true when the real-root vectors generate
        long long missing;       // dimension of the complement
        std::vector<std::pair<Rat, int>> missing_cartan;  // (level, dim)
    };
    // subalgebra generated by the real root spaces over Q or F_p
    SpanReport span_test(const std::string& field) const;

  private:
    void build_basis();

    const TwistedType* type_;
    int nlevels_;
    int zdim_;  // 1 or 2: Q-dimension of the cyclotomic coefficient block
    std::vector<BasisVec> basis_;
    std::map<int, std::vector<int>> by_degree_;
    std::vector<int> kexp_;                            // Tits 2-exponents per root
    std::vector<std::vector<SVec>> scaled_table_;      // ambient brackets, rescaled
    std::vector<std::vector<std::pair<int, Int>>> support_;  // nonzero ambient coords
};

// --- affine Kac-Moody data computed from the loop model ------------------

struct AffineGCM {
    std::vector<AffineRoot> walls;   // node s <-> wall s of the alcove
    ZMat cartan;                     // a_ij = alpha_j(h_i)
    ZVec marks;                      // right kernel, positive primitive
    ZVec comarks;                    // left kernel, positive primitive
    std::vector<ZVec> coroot_cartan; // h_s on the degree-0 Cartan lattice
    int distinguished_node;          // wall missing the Phi^nm special point

    int nodes() const { return int(walls.size()); }
};

AffineGCM affine_gcm(const TwistedType& type);

// integral realization of a GCM: weights are stored by their pairings
// (<alpha_i^vee, .>, <d, .>), simple roots by their coordinate vectors
struct IntegralRealization {
    ZMat cartan;
    std::vector<QVec> alpha_coords;  // n+1 coordinates per simple root
    int nodes() const { return int(cartan.size()); }
    QVec fundamental_weight(int i) const;
    QVec delta() const;  // the primitive imaginary vector sum marks_i alpha_i
    ZVec marks;
};

IntegralRealization integral_realization(const AffineGCM& gcm);

struct CentralCharge {
    ZMat matrix;             // rows: h_s on the degree-0 Cartan lattice
    int distinguished_node;
    bool cokernel_free_rank_one;
    Int projection_det;      // |det| after deleting the distinguished row
};

CentralCharge central_charge_matrix(const TwistedType& type);

struct CoefficientRatios {
    std::vector<int> degrees;     // per node: e_{a_s} of the wall gradient
    std::vector<Rat> ratios;      // comark_A / comark_Abar under the matching
    ZVec comarks;                 // twisted diagram
    ZVec dual_comarks;            // very special isogeny dual diagram
    bool balanced;                // ratio * degree == e at every node
};

// requires a twisted type (e in {2,3}); throws std::invalid_argument for
// untwisted input
CoefficientRatios coefficient_ratios(const TwistedType& type);

}  // namespace twaf
