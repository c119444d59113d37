#pragma once

#include "twaf/loop_model.hpp"

#include <map>

namespace twaf {

// Affine weights are stored by their pairings (<alpha_i^vee, .> per node,
// <d, .>), so a weight is a rational vector of length nodes + 1 and the
// dominance test is coordinatewise.
using Weight = QVec;

// finite multiset of affine weights with integer multiplicities
class WeightCharacter {
  public:
    WeightCharacter() = default;
    static WeightCharacter monomial(const Weight& w) {
        WeightCharacter c;
        c.m_[w] = 1;
        return c;
    }

    long long multiplicity(const Weight& w) const {
        auto it = m_.find(w);
        return it == m_.end() ? 0 : it->second;
    }
    void add(const Weight& w, long long k) {
        auto it = m_.emplace(w, 0).first;
        it->second += k;
        if (it->second == 0) m_.erase(it);
    }
    const std::map<Weight, long long>& terms() const { return m_; }
    size_t support_size() const { return m_.size(); }
    long long total_mass() const {
        long long s = 0;
        for (auto& [w, k] : m_) s += k;
        return s;
    }
    bool operator==(const WeightCharacter& o) const { return m_ == o.m_; }
    bool nonnegative() const {
        for (auto& [w, k] : m_)
            if (k < 0) return false;
        return true;
    }

  private:
    std::map<Weight, long long> m_;
};

// Demazure operators D_i f = (f - e^{-alpha_i} s_i(f)) / (1 - e^{-alpha_i})
// over the group algebra of the weight lattice of an integral realization
class DemazureOps {
  public:
    explicit DemazureOps(IntegralRealization realization) : real_(std::move(realization)) {}

    const IntegralRealization& realization() const { return real_; }

    Weight reflect(int i, Weight w) const;
    bool dominant(const Weight& w) const;

    WeightCharacter apply(int i, const WeightCharacter& f) const;

    // D_{i_1} ... D_{i_k} e^lambda; requires lambda dominant
    WeightCharacter character(const std::vector<int>& word, const Weight& lambda) const;

    // lambda - mu as a nonnegative integral combination of the simple roots
    bool in_lower_cone(const Weight& lambda, const Weight& mu) const;

  private:
    IntegralRealization real_;
};

}  // namespace twaf
