#include "twaf/apartment.hpp"

#include <algorithm>
#include <set>

namespace twaf {

namespace {

QVec negate(const QVec& v) {
    QVec r = v;
    for (auto& c : r) c = -c;
    return r;
}

}  // namespace

Apartment::Apartment(std::shared_ptr<const RelativeRootDatum> datum) : datum_(std::move(datum)) {
    if (!datum_->levels_ready()) throw std::invalid_argument("apartment: datum has no level sets");

    // candidate positive affine roots of small level, then sieve out sums
    Rat lmax = 2;
    std::vector<AffineRoot> pool;
    for (const QVec& a : datum_->relative_roots()) {
        const LevelSet& ls = datum_->level_set(a);
        for (Rat n = ls.ceil(relative_root_positive(*datum_, a) ? Rat(0) : Rat(1, 100)); n <= lmax; n += ls.step)
            pool.push_back({a, n});
    }
    std::vector<Rat> imag;
    for (Rat m = datum_->imag_step(); m <= lmax; m += datum_->imag_step()) imag.push_back(m);

    auto decomposable = [&](const AffineRoot& alpha) {
        for (const AffineRoot& beta : pool) {
            if (beta.level > alpha.level) continue;
            // gamma = alpha - beta real?
            QVec g(alpha.gradient.size());
            bool zero = true;
            for (size_t i = 0; i < g.size(); ++i) {
                g[i] = alpha.gradient[i] - beta.gradient[i];
                if (g[i] != 0) zero = false;
            }
            Rat lev = alpha.level - beta.level;
            if (zero) {
                if (lev != 0 && lev > 0 && datum_->imag_multiplicity(lev) > 0) return true;
                continue;
            }
            if (!datum_->is_relative_root(g)) continue;
            if (!datum_->level_set(g).contains(lev)) continue;
            AffineRoot gamma{g, lev};
            if (positive(gamma)) return true;
        }
        // imaginary summand
        for (const Rat& m : imag) {
            if (m >= alpha.level + 1) break;
            Rat lev = alpha.level - m;
            if (datum_->level_set(alpha.gradient).contains(lev) && (lev > 0 || (lev == 0 && relative_root_positive(*datum_, alpha.gradient))))
                return true;
        }
        return false;
    };
    for (const AffineRoot& alpha : pool)
        if (!decomposable(alpha)) walls_.push_back(alpha);
    std::sort(walls_.begin(), walls_.end());

    int r = datum_->relative_rank();
    if (int(walls_.size()) != r + 1)
        throw std::logic_error("apartment: expected rank+1 walls, got " + std::to_string(walls_.size()));

    // vertex opposite to each wall: the other walls vanish
    std::vector<QVec> basis = datum_->simple_relative();
    for (size_t i = 0; i < walls_.size(); ++i) {
        QMat m;
        QVec rhs;
        for (size_t j = 0; j < walls_.size(); ++j) {
            if (j == i) continue;
            QVec row(r);
            for (int k = 0; k < r; ++k) row[k] = datum_->form(walls_[j].gradient, basis[k]);
            m.push_back(std::move(row));
            rhs.push_back(-walls_[j].level);
        }
        auto sol = solve_linear(m, rhs);
        if (!sol) throw std::logic_error("apartment: degenerate wall arrangement");
        QVec x(datum_->absolute().rank(), 0);
        for (int k = 0; k < r; ++k)
            for (size_t c = 0; c < x.size(); ++c) x[c] += (*sol)[k] * basis[k][c];
        if (eval(walls_[i], x) <= 0) throw std::logic_error("apartment: vertex on the wrong side");
        vertices_.push_back(std::move(x));
    }
}

bool Apartment::positive(const AffineRoot& alpha) const {
    if (alpha.level > 0) return true;
    if (alpha.level < 0) return false;
    return alpha.is_real() && relative_root_positive(*datum_, alpha.gradient);
}

QVec Apartment::alcove_barycenter() const {
    QVec x(datum_->absolute().rank(), 0);
    for (const QVec& v : vertices_)
        for (size_t i = 0; i < x.size(); ++i) x[i] += v[i];
    for (auto& c : x) c /= int(vertices_.size());
    return x;
}

std::vector<AffineRoot> Apartment::real_roots(const Rat& bound) const {
    std::vector<AffineRoot> out;
    for (const QVec& a : datum_->relative_roots()) {
        const LevelSet& ls = datum_->level_set(a);
        for (Rat n = ls.ceil(-bound); n <= bound; n += ls.step) out.push_back({a, n});
    }
    return out;
}

std::vector<Rat> Apartment::imaginary_levels(const Rat& bound) const {
    std::vector<Rat> out;
    for (Rat m = datum_->imag_step(); m <= bound; m += datum_->imag_step()) out.push_back(m);
    return out;
}

ConcaveFunction Apartment::f_omega(const BoundedSet& omega) const {
    if (omega.points.empty()) throw std::invalid_argument("f_omega: empty set");
    ConcaveFunction f;
    for (size_t i = 0; i < datum_->size(); ++i) {
        const RelRootInfo& ri = datum_->info(int(i));
        Rat lo = eval_gradient(ri.root, omega.points[0]);
        for (const QVec& x : omega.points) lo = std::min(lo, eval_gradient(ri.root, x));
        // least k in Gamma'_a with a(x) + k >= 0 for all x
        f[int(i)] = ri.levels.ceil(-lo);
    }
    return f;
}

std::vector<QVec> Apartment::residual_roots(const ConcaveFunction& f) const {
    std::vector<QVec> out;
    for (auto& [i, fa] : f) {
        QVec neg = negate(datum_->info(i).root);
        if (fa + f.at(datum_->index_of(neg)) == 0) out.push_back(datum_->info(i).root);
    }
    return out;
}

bool Apartment::in_closed_alcove(const QVec& x) const {
    for (const AffineRoot& w : walls_)
        if (eval(w, x) < 0) return false;
    return true;
}

std::vector<AffineRoot> Apartment::parahoric_subset(const BoundedSet& facet, const Rat& level_bound) const {
    for (const QVec& x : facet.points)
        if (!in_closed_alcove(x))
            throw std::invalid_argument("parahoric_subset: set leaves the closed fundamental alcove");
    std::vector<AffineRoot> out;
    for (const AffineRoot& alpha : real_roots(level_bound)) {
        bool ok = true;
        for (const QVec& x : facet.points)
            if (eval(alpha, x) < 0) ok = false;
        if (ok) out.push_back(alpha);
    }
    QVec zero(datum_->absolute().rank(), 0);
    for (const Rat& m : imaginary_levels(level_bound)) out.push_back({zero, m});
    std::sort(out.begin(), out.end());
    return out;
}

BoundedSet Apartment::opposition(const BoundedSet& facet) const {
    BoundedSet r;
    for (const QVec& x : facet.points) r.points.push_back(negate(x));
    return r;
}

Apartment::LeviDatum Apartment::levi_datum(const BoundedSet& facet) const {
    ConcaveFunction f = f_omega(facet);
    LeviDatum out;
    out.residual = residual_roots(f);
    for (const QVec& a : out.residual) out.shifts[datum_->index_of(a)] = f.at(datum_->index_of(a));
    // Weyl group of the residual system as permutations of the residual set
    std::vector<QVec>& roots = out.residual;
    if (roots.empty()) {
        out.weyl_order = 1;
        return out;
    }
    auto perm_of = [&](const QVec& a) {
        std::vector<int> p(roots.size());
        for (size_t i = 0; i < roots.size(); ++i) {
            QVec img = datum_->reflect(a, roots[i]);
            auto it = std::find(roots.begin(), roots.end(), img);
            if (it == roots.end()) throw std::logic_error("residual system not closed under its reflections");
            p[i] = int(it - roots.begin());
        }
        return p;
    };
    std::set<std::vector<int>> group;
    std::vector<std::vector<int>> gens, frontier;
    for (const QVec& a : roots) gens.push_back(perm_of(a));
    std::vector<int> id(roots.size());
    for (size_t i = 0; i < id.size(); ++i) id[i] = int(i);
    group.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& g : frontier)
            for (auto& s : gens) {
                std::vector<int> gs(g.size());
                for (size_t i = 0; i < g.size(); ++i) gs[i] = s[g[i]];
                if (group.insert(gs).second) next.push_back(gs);
            }
        frontier = std::move(next);
    }
    out.weyl_order = group.size();
    return out;
}

std::vector<Apartment::SpecialPoint> Apartment::special_points() const {
    std::vector<SpecialPoint> out;
    for (const QVec& v : vertices_) {
        SpecialPoint sp;
        sp.point = v;
        sp.residual = residual_roots(f_omega({{v}}));
        // special: every root ray contributes a wall through the point
        sp.special = true;
        for (const QVec& a : datum_->relative_roots()) {
            if (datum_->classify(a) == RootClass::Divisible) continue;
            QVec twice = a;
            for (auto& c : twice) c *= 2;
            bool covered = false;
            for (const QVec& b : sp.residual)
                if (b == a || b == twice) covered = true;
            if (!covered) sp.special = false;
        }
        out.push_back(std::move(sp));
    }
    return out;
}

BoundedSet Apartment::facet(const std::vector<int>& vanishing_walls) const {
    for (int w : vanishing_walls)
        if (w < 0 || w >= int(walls_.size())) throw std::invalid_argument("facet: wall index out of range");
    if (vanishing_walls.size() >= walls_.size()) throw std::invalid_argument("facet: too many walls");
    QVec x(datum_->absolute().rank(), 0);
    int used = 0;
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (std::find(vanishing_walls.begin(), vanishing_walls.end(), int(i)) != vanishing_walls.end()) continue;
        // vertices opposite the non-vanishing walls span the face
        for (size_t c = 0; c < x.size(); ++c) x[c] += vertices_[i][c];
        ++used;
    }
    for (auto& c : x) c /= used;
    // sanity: the sample vanishes exactly on the requested walls
    for (size_t i = 0; i < walls_.size(); ++i) {
        bool want_zero = std::find(vanishing_walls.begin(), vanishing_walls.end(), int(i)) != vanishing_walls.end();
        Rat val = eval(walls_[i], x);
        if (want_zero != (val == 0) || val < 0) throw std::logic_error("facet: bad sample point");
    }
    return {{x}};
}

}  // namespace twaf
