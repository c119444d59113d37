#pragma once

#include "twaf/apartment.hpp"

#include <map>
#include <memory>
#include <set>

namespace twaf {

// element of the Iwahori-Weyl group as an affine isometry x -> A x + b of
// the apartment (ambient coordinates, identity off the coroot span)
struct IWElement {
    QMat lin;
    QVec tr;

    bool operator==(const IWElement& o) const { return lin == o.lin && tr == o.tr; }
    bool operator<(const IWElement& o) const { return lin != o.lin ? lin < o.lin : tr < o.tr; }

    QVec act(const QVec& x) const;
    std::string key() const;
};

// Coxeter machine for the affine Weyl group of a supported type (the spec'd
// simply-connected case, where the Iwahori-Weyl group is generated by the
// wall reflections of the fundamental alcove).
class IwahoriWeyl {
  public:
    explicit IwahoriWeyl(std::shared_ptr<const Apartment> apartment);

    const Apartment& apartment() const { return *apt_; }
    int num_generators() const { return int(gens_.size()); }
    const IWElement& generator(int i) const { return gens_[i]; }
    IWElement identity() const;
    IWElement translation(const QVec& lambda) const;

    IWElement mul(const IWElement& a, const IWElement& b) const;
    IWElement inverse(const IWElement& a) const;
    IWElement word_to_element(const std::vector<int>& word) const;

    AffineRoot act_on_root(const IWElement& w, const AffineRoot& alpha) const;

    // length = number of positive real affine roots sent negative
    int length(const IWElement& w) const;
    std::vector<AffineRoot> inversions(const IWElement& w) const;
    std::vector<int> reduced_word(const IWElement& w) const;
    std::vector<std::vector<int>> all_reduced_words(const IWElement& w) const;

    bool bruhat_leq(const IWElement& u, const IWElement& w) const;
    // independent oracle: literal subword enumeration along one reduced word
    bool bruhat_leq_subword_oracle(const IWElement& u, const IWElement& w) const;

    // all elements of length <= bound
    std::vector<IWElement> elements_up_to(int length_bound) const;

    // facets are subsets of wall indices of the fundamental alcove
    using Facet = std::vector<int>;
    bool is_coset_minimal(const IWElement& w, const Facet& f) const;
    IWElement coset_minimize(const IWElement& w, const Facet& f) const;

    // I_w = positive real roots of the alcove sent into the non-positive
    // parahoric side of f; requires a minimal coset representative
    std::vector<AffineRoot> I_w(const IWElement& w, const Facet& f) const;

    // the emptiness criterion of the opposite-orbit intersections
    bool richardson_nonempty(const IWElement& w, const IWElement& v) const;

    // number of length-1 classes below w in W~/W_f
    int picard_rank(const IWElement& w, const Facet& f) const;

    // translation lattice derived from the level steps
    std::vector<QVec> translation_lattice_basis() const;
    QVec dominant_representative(const QVec& mu) const;
    // finite Weyl orbit of a coweight
    std::vector<QVec> finite_orbit(const QVec& mu) const;

    // Bruhat-lower closure of the translations by the orbit of mu, as
    // minimal coset representatives
    std::vector<IWElement> admissible_set(const QVec& mu, const Facet& f) const;

    // minimal antichain {v_k} with  meet of lower intervals = union of
    // lower intervals of the v_k
    std::vector<IWElement> schubert_intersection(const std::vector<IWElement>& ws) const;
    // the same for every nonempty subset, keyed by subset mask (the
    // bookkeeping of the inclusion-exclusion computation)
    std::map<uint32_t, std::vector<IWElement>> schubert_intersection_report(
        const std::vector<IWElement>& ws) const;

    // lower Bruhat interval of w as coset-minimal representatives
    std::vector<IWElement> lower_interval(const IWElement& w, const Facet& f) const;

  private:
    int descent(const IWElement& w) const;  // a left descent, -1 when e

    std::shared_ptr<const Apartment> apt_;
    std::vector<IWElement> gens_;
    QVec sample_;  // alcove interior point for positivity checks
    mutable std::map<std::pair<std::string, std::string>, bool> bruhat_cache_;
};

}  // namespace twaf
