#pragma once

#include "twaf/rational.hpp"

#include <string>
#include <vector>

namespace twaf {

using IVec = std::vector<int>;
using QVec = std::vector<Rat>;

// Finite root system presented by its Cartan matrix; roots are stored as
// integer coordinate vectors in the simple-root basis.
struct FiniteRootSystem {
    std::string name;
    std::vector<IVec> cartan;  // a_ij = <alpha_i^vee, alpha_j>
    std::vector<IVec> roots;   // closure of the simple roots under reflections
    std::vector<Rat> d;        // symmetrizer: (alpha_i, alpha_i) = 2 d_i

    int rank() const { return int(cartan.size()); }

    // <alpha_i^vee, beta>
    Rat copairing(int i, const QVec& beta) const {
        Rat s = 0;
        for (int j = 0; j < rank(); ++j) s += Rat(cartan[i][j]) * beta[j];
        return s;
    }
    int copairing(int i, const IVec& beta) const {
        int s = 0;
        for (int j = 0; j < rank(); ++j) s += cartan[i][j] * beta[j];
        return s;
    }

    // W-invariant symmetric form
    Rat form(const QVec& x, const QVec& y) const {
        Rat s = 0;
        for (int i = 0; i < rank(); ++i) {
            Rat row = 0;
            for (int j = 0; j < rank(); ++j) row += Rat(cartan[i][j]) * y[j];
            s += x[i] * d[i] * row;
        }
        return s;
    }

    // <beta^vee, gamma> = 2 (beta, gamma) / (beta, beta)
    Rat coroot_pairing(const QVec& beta, const QVec& gamma) const {
        return 2 * form(beta, gamma) / form(beta, beta);
    }

    IVec reflect(int i, const IVec& beta) const {
        IVec r = beta;
        r[i] -= copairing(i, beta);
        return r;
    }

    bool is_root(const IVec& v) const;
    int root_index(const IVec& v) const;  // -1 when absent
    int height(const IVec& v) const {
        int h = 0;
        for (int c : v) h += c;
        return h;
    }
    IVec simple(int i) const {
        IVec v(rank(), 0);
        v[i] = 1;
        return v;
    }
};

// automorphism of the Dynkin diagram, acting on simple indices
struct DiagramAutomorphism {
    std::vector<int> perm;

    int order() const;
    bool is_trivial() const {
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != int(i)) return false;
        return true;
    }
    IVec apply(const IVec& root) const {
        IVec r(root.size(), 0);
        for (size_t i = 0; i < root.size(); ++i) r[perm[i]] += root[i];
        return r;
    }
    DiagramAutomorphism compose(const DiagramAutomorphism& o) const {
        DiagramAutomorphism r;
        r.perm.resize(perm.size());
        for (size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[o.perm[i]];
        return r;
    }
};

DiagramAutomorphism trivial_automorphism(int rank);
bool preserves_cartan(const FiniteRootSystem& rs, const DiagramAutomorphism& s);

// fill in symmetrizer and root closure from an already-set Cartan matrix
void finish_system(FiniteRootSystem& rs);

// catalogue: irreducible systems A-G, ranks up to 6
FiniteRootSystem simple_system(char letter, int rank);
// product of `copies` copies of rs (for restriction-of-scalars foldings)
FiniteRootSystem product_system(const FiniteRootSystem& rs, int copies);

}  // namespace twaf
