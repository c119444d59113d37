#pragma once

#include "twaf/chevalley.hpp"

#include <optional>

namespace twaf {

enum class RootClass { NdNm, Multipliable, Divisible };

const char* to_string(RootClass c);

// arithmetic progression offset + step * Z
struct LevelSet {
    Rat offset{0};
    Rat step{1};

    bool contains(const Rat& x) const { return is_integer((x - offset) / step); }
    // least element >= x
    Rat ceil(const Rat& x) const { return ceil_to_progression(x, offset, step); }
    bool operator==(const LevelSet& o) const { return offset == o.offset && step == o.step; }
};

struct RelRootInfo {
    QVec root;               // orbit average, coordinates in the absolute simple basis
    RootClass cls;
    int e_a;                 // degree of l_a: orbit size of a lift under the Galois image
    std::vector<int> lifts;  // absolute root indices restricting to this root
    LevelSet levels;         // Gamma'_a
};

// Finite root system with a pinned Galois action and the folded relative
// system.  The Galois image is generated by sigma (order = twist order e)
// and, in the full e = 3 case, an involution iota with iota sigma iota =
// sigma^{-1}.
class RelativeRootDatum {
  public:
    RelativeRootDatum(FiniteRootSystem abs, DiagramAutomorphism sigma, DiagramAutomorphism iota, int e);

    const FiniteRootSystem& absolute() const { return abs_; }
    const DiagramAutomorphism& sigma() const { return sigma_; }
    const DiagramAutomorphism& iota() const { return iota_; }
    int twist_order() const { return e_; }
    const std::vector<DiagramAutomorphism>& galois_group() const { return group_; }

    size_t size() const { return rel_.size(); }
    const RelRootInfo& info(int i) const { return rel_[i]; }
    int index_of(const QVec& a) const;
    bool is_relative_root(const QVec& a) const { return index_of(a) >= 0; }
    const RelRootInfo& info(const QVec& a) const;
    std::vector<QVec> relative_roots() const;

    RootClass classify(const QVec& a) const { return info(a).cls; }
    const LevelSet& level_set(const QVec& a) const { return info(a).levels; }

    QVec restrict_root(const IVec& abs_root) const;

    // geometry of the relative space (restriction of the absolute form)
    Rat form(const QVec& x, const QVec& y) const { return abs_.form(x, y); }
    Rat coroot_pairing(const QVec& a, const QVec& b) const { return abs_.coroot_pairing(a, b); }
    QVec reflect(const QVec& a, const QVec& x) const;

    // relative rank and a basis of simple relative roots (restrictions of
    // the absolute simple roots, non-divisible representatives)
    std::vector<QVec> simple_relative() const;
    int relative_rank() const { return int(simple_relative().size()); }

    // imaginary levels: support is imag_step * Z minus zero
    Rat imag_step() const { return imag_step_; }
    // multiplicity of the imaginary level n (0 when unsupported)
    int imag_multiplicity(const Rat& n) const;

    // filled in by compute_level_sets
    bool levels_ready() const { return levels_ready_; }

    friend void compute_level_sets(RelativeRootDatum& datum, const SteinbergSigns& sigma_signs);

  private:
    FiniteRootSystem abs_;
    DiagramAutomorphism sigma_, iota_;
    int e_;
    std::vector<DiagramAutomorphism> group_;
    std::vector<RelRootInfo> rel_;
    Rat imag_step_{1};
    std::vector<int> imag_mult_by_residue_;  // index m in [0, e): mult of levels = m/e mod 1
    bool levels_ready_ = false;
};

bool relative_root_positive(const RelativeRootDatum& datum, const QVec& a);

// Gamma'_a from the fixed-point rule of the twisted loop action: the level
// m/e is admissible iff the sigma-eigenvalue condition zeta^{m |O|} =
// product of Chevalley--Steinberg signs around some sigma-orbit O of lifts
// has a solution.
void compute_level_sets(RelativeRootDatum& datum, const SteinbergSigns& sigma_signs);

}  // namespace twaf
