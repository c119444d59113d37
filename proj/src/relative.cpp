#include "twaf/relative.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace twaf {

const char* to_string(RootClass c) {
    switch (c) {
        case RootClass::NdNm: return "nd-nm";
        case RootClass::Multipliable: return "multipliable";
        case RootClass::Divisible: return "divisible";
    }
    return "?";
}

RelativeRootDatum::RelativeRootDatum(FiniteRootSystem abs, DiagramAutomorphism sigma, DiagramAutomorphism iota,
                                     int e)
    : abs_(std::move(abs)), sigma_(std::move(sigma)), iota_(std::move(iota)), e_(e) {
    if (!preserves_cartan(abs_, sigma_) || !preserves_cartan(abs_, iota_))
        throw std::invalid_argument("datum: automorphisms must preserve the Cartan matrix");
    if (sigma_.order() != e_) throw std::invalid_argument("datum: sigma must have order e");
    if (!iota_.is_trivial()) {
        // iota sigma iota = sigma^{-1}
        DiagramAutomorphism lhs = iota_.compose(sigma_).compose(iota_);
        DiagramAutomorphism inv = sigma_;
        for (int k = 2; k < e_; ++k) inv = inv.compose(sigma_);
        if (lhs.perm != inv.perm) throw std::invalid_argument("datum: iota must invert sigma");
    }

    // full Galois image
    std::set<std::vector<int>> seen;
    std::vector<DiagramAutomorphism> frontier = {trivial_automorphism(abs_.rank())};
    seen.insert(frontier[0].perm);
    while (!frontier.empty()) {
        std::vector<DiagramAutomorphism> next;
        for (const auto& g : frontier)
            for (const auto& h : {sigma_, iota_}) {
                DiagramAutomorphism gh = g.compose(h);
                if (seen.insert(gh.perm).second) next.push_back(gh);
            }
        for (auto& g : next) group_.push_back(g);
        frontier = std::move(next);
    }
    group_.push_back(trivial_automorphism(abs_.rank()));

    // orbit averages
    std::map<QVec, std::vector<int>> by_avg;
    for (size_t r = 0; r < abs_.roots.size(); ++r) by_avg[restrict_root(abs_.roots[r])].push_back(int(r));
    for (auto& [avg, lifts] : by_avg) {
        RelRootInfo ri;
        ri.root = avg;
        ri.lifts = lifts;
        // orbit size of a lift under the full group
        std::set<IVec> orbit;
        for (const auto& g : group_) orbit.insert(g.apply(abs_.roots[lifts[0]]));
        ri.e_a = int(orbit.size());
        rel_.push_back(std::move(ri));
    }
    // classification
    auto have = [&](const QVec& v) {
        for (const auto& ri : rel_)
            if (ri.root == v) return true;
        return false;
    };
    for (auto& ri : rel_) {
        QVec twice = ri.root, half = ri.root;
        for (auto& c : twice) c *= 2;
        for (auto& c : half) c /= 2;
        if (have(half))
            ri.cls = RootClass::Divisible;
        else if (have(twice))
            ri.cls = RootClass::Multipliable;
        else
            ri.cls = RootClass::NdNm;
    }
}

int RelativeRootDatum::index_of(const QVec& a) const {
    for (size_t i = 0; i < rel_.size(); ++i)
        if (rel_[i].root == a) return int(i);
    return -1;
}

const RelRootInfo& RelativeRootDatum::info(const QVec& a) const {
    int i = index_of(a);
    if (i < 0) throw std::invalid_argument("not a relative root");
    return rel_[i];
}

std::vector<QVec> RelativeRootDatum::relative_roots() const {
    std::vector<QVec> out;
    for (const auto& ri : rel_) out.push_back(ri.root);
    return out;
}

QVec RelativeRootDatum::restrict_root(const IVec& abs_root) const {
    QVec q(abs_.rank(), 0);
    for (const auto& g : group_) {
        IVec img = g.apply(abs_root);
        for (int i = 0; i < abs_.rank(); ++i) q[i] += Rat(img[i]);
    }
    for (auto& c : q) c /= int(group_.size());
    return q;
}

QVec RelativeRootDatum::reflect(const QVec& a, const QVec& x) const {
    Rat p = coroot_pairing(a, x);
    QVec r = x;
    for (int i = 0; i < abs_.rank(); ++i) r[i] -= p * a[i];
    return r;
}

std::vector<QVec> RelativeRootDatum::simple_relative() const {
    std::vector<QVec> out;
    for (int i = 0; i < abs_.rank(); ++i) {
        QVec a = restrict_root(abs_.simple(i));
        // keep non-divisible representatives, once per orbit
        bool seen = false;
        for (const auto& b : out)
            if (b == a) seen = true;
        if (!seen && classify(a) != RootClass::Divisible) out.push_back(a);
    }
    return out;
}

int RelativeRootDatum::imag_multiplicity(const Rat& n) const {
    if (!levels_ready_) throw std::logic_error("level sets not computed yet");
    if (n == 0) return 0;
    Rat scaled = n * e_;
    if (!is_integer(scaled)) return 0;
    int m = int(num(scaled) % e_);
    if (m < 0) m += e_;
    return imag_mult_by_residue_[m];
}

bool relative_root_positive(const RelativeRootDatum&, const QVec& a) {
    for (const Rat& c : a)
        if (c != 0) return c > 0;
    return false;
}

void compute_level_sets(RelativeRootDatum& datum, const SteinbergSigns& sigma_signs) {
    const FiniteRootSystem& rs = datum.abs_;
    int e = datum.e_;
    auto sigma_index = [&](int idx) { return rs.root_index(datum.sigma_.apply(rs.roots[idx])); };

    for (auto& ri : datum.rel_) {
        // sigma-orbits of the lifts and their sign products
        std::set<int> todo(ri.lifts.begin(), ri.lifts.end());
        std::vector<bool> residue(e, false);
        while (!todo.empty()) {
            int start = *todo.begin();
            int prod = 1, size = 0, cur = start;
            do {
                todo.erase(cur);
                prod *= sigma_signs.sign(cur);
                ++size;
                cur = sigma_index(cur);
            } while (cur != start);
            // zeta^{m * size} = prod, prod in {+-1}
            for (int m = 0; m < e; ++m) {
                int k = (m * size) % e;
                bool ok = (prod == 1 && k == 0) || (prod == -1 && e == 2 && k == 1);
                if (ok) residue[m] = true;
            }
        }
        int count = int(std::count(residue.begin(), residue.end(), true));
        if (count == e) {
            ri.levels = {Rat(0), Rat(1, e)};
        } else if (count == 1) {
            int m = int(std::find(residue.begin(), residue.end(), true) - residue.begin());
            ri.levels = {Rat(m, e), Rat(1)};
        } else {
            throw std::logic_error("level set is not an arithmetic progression");
        }
    }

    // imaginary support and multiplicities from the Cartan permutation
    datum.imag_mult_by_residue_.assign(e, 0);
    std::vector<bool> seen(rs.rank(), false);
    for (int i = 0; i < rs.rank(); ++i) {
        if (seen[i]) continue;
        int size = 0;
        for (int cur = i; !seen[cur]; cur = datum.sigma_.perm[cur]) {
            seen[cur] = true;
            ++size;
        }
        for (int m = 0; m < e; ++m)
            if ((m * size) % e == 0) ++datum.imag_mult_by_residue_[m];
    }
    int support = 0;
    for (int m = 0; m < e; ++m)
        if (datum.imag_mult_by_residue_[m] > 0) ++support;
    if (support == e)
        datum.imag_step_ = Rat(1, e);
    else if (datum.imag_mult_by_residue_[0] > 0 && support == 1)
        datum.imag_step_ = 1;
    else
        throw std::logic_error("imaginary support is not an arithmetic progression");
    datum.levels_ready_ = true;
}

}  // namespace twaf
