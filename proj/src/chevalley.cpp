#include "twaf/chevalley.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace twaf {

SVec sv_add(const SVec& x, const SVec& y) {
    std::map<int, Rat> acc;
    for (auto& [i, c] : x) acc[i] += c;
    for (auto& [i, c] : y) acc[i] += c;
    SVec r;
    for (auto& [i, c] : acc)
        if (c != 0) r.emplace_back(i, c);
    return r;
}

SVec sv_scale(const Rat& c, const SVec& x) {
    SVec r;
    if (c == 0) return r;
    for (auto& [i, v] : x) r.emplace_back(i, c * v);
    return r;
}

bool sv_is_zero(const SVec& x) { return x.empty(); }

namespace {

// parity of the lattice cocycle exponent for the simply-laced construction
struct Cocycle {
    std::vector<std::vector<int>> E;  // E[i][j] = 1 when eps(alpha_i, alpha_j) = -1

    explicit Cocycle(const FiniteRootSystem& rs) {
        int n = rs.rank();
        E.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j)
                    E[i][j] = 1;
                else if (i < j)
                    E[i][j] = (rs.cartan[i][j] % 2 + 2) % 2;
            }
    }
    int sign(const IVec& a, const IVec& b) const {
        long s = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) s += long(a[i]) * b[j] * E[i][j];
        }
        return s % 2 ? -1 : 1;
    }
};

}  // namespace

LieAlgebra LieAlgebra::simply_laced(const FiniteRootSystem& rs) {
    for (const Rat& di : rs.d)
        if (di != rs.d[0]) throw std::invalid_argument("simply_laced: system is not simply laced");
    if (rs.rank() == 0) {
        LieAlgebra L;
        L.rs_ = rs;
        return L;
    }
    LieAlgebra L;
    L.rs_ = rs;
    Cocycle eps(rs);
    int R = L.num_roots(), n = L.rank(), D = L.dim();
    L.table_.assign(D, std::vector<SVec>(D));
    auto& roots = L.rs_.roots;
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b) {
            IVec sum(n);
            bool zero = true;
            for (int i = 0; i < n; ++i) {
                sum[i] = roots[a][i] + roots[b][i];
                if (sum[i]) zero = false;
            }
            if (zero) {
                // [e_a, e_{-a}] = eps(a,-a) h_a  (simply laced: coroot = root coords)
                int s = eps.sign(roots[a], roots[b]);
                SVec h;
                for (int i = 0; i < n; ++i)
                    if (roots[a][i]) h.emplace_back(L.h_index(i), Rat(s * roots[a][i]));
                L.table_[a][b] = h;
            } else {
                int idx = L.rs_.root_index(sum);
                if (idx >= 0) L.table_[a][b] = {{idx, Rat(eps.sign(roots[a], roots[b]))}};
            }
        }
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < R; ++b) {
            int w = L.rs_.copairing(i, roots[b]);
            if (w) {
                L.table_[L.h_index(i)][b] = {{b, Rat(w)}};
                L.table_[b][L.h_index(i)] = {{b, Rat(-w)}};
            }
        }
    return L;
}

SVec LieAlgebra::bracket(const SVec& x, const SVec& y) const {
    std::map<int, Rat> acc;
    for (auto& [i, ci] : x)
        for (auto& [j, cj] : y)
            for (auto& [k, ck] : table_[i][j]) acc[k] += ci * cj * ck;
    SVec r;
    for (auto& [k, c] : acc)
        if (c != 0) r.emplace_back(k, c);
    return r;
}

Rat LieAlgebra::structure_constant(int ra, int rb) const {
    IVec sum(rank());
    for (int i = 0; i < rank(); ++i) sum[i] = rs_.roots[ra][i] + rs_.roots[rb][i];
    int idx = rs_.root_index(sum);
    if (idx < 0) return 0;
    for (auto& [k, c] : table_[ra][rb])
        if (k == idx) return c;
    return 0;
}

SVec LieAlgebra::coroot(int root_idx) const {
    // express 2(root,-)/(root,root) in the basis of simple coroots
    const IVec& r = rs_.roots[root_idx];
    QVec q(r.begin(), r.end());
    Rat len = rs_.form(q, q);
    SVec out;
    for (int i = 0; i < rank(); ++i) {
        // coefficient of alpha_i^vee: d_i * r_i * 2 / (r,r)
        Rat c = 2 * rs_.d[i] * Rat(r[i]) / len;
        if (c != 0) out.emplace_back(h_index(i), c);
    }
    return out;
}

Rat LieAlgebra::weight(const SVec& h, int root_idx) const {
    Rat w = 0;
    for (auto& [k, c] : h) {
        if (k < num_roots()) throw std::invalid_argument("weight: not a Cartan element");
        w += c * Rat(rs_.copairing(k - num_roots(), rs_.roots[root_idx]));
    }
    return w;
}

bool LieAlgebra::jacobi_holds(int i, int j, int k) const {
    SVec a = bracket(bracket(i, j), SVec{{k, 1}});
    SVec b = bracket(SVec{{i, 1}}, bracket(j, k));
    SVec c = bracket(SVec{{j, 1}}, bracket(SVec{{i, 1}}, SVec{{k, 1}}));
    // [[x,y],z] = [x,[y,z]] - [y,[x,z]]
    return sv_is_zero(sv_add(a, sv_scale(-1, sv_add(b, sv_scale(-1, c)))));
}

bool LieAlgebra::jacobi_holds_all() const {
    for (int i = 0; i < dim(); ++i)
        for (int j = i; j < dim(); ++j)
            for (int k = j; k < dim(); ++k)
                if (!jacobi_holds(i, j, k)) return false;
    return true;
}

int LieAlgebra::string_down_length(int ra, int rb) const {
    int p = 0;
    IVec v = rs_.roots[rb];
    while (true) {
        for (int i = 0; i < rank(); ++i) v[i] -= rs_.roots[ra][i];
        if (!rs_.is_root(v)) break;
        ++p;
    }
    return p;
}

void LieAlgebra::flip_root_pair(int root_idx) {
    IVec neg = rs_.roots[root_idx];
    for (auto& c : neg) c = -c;
    int neg_idx = rs_.root_index(neg);
    for (int g : {root_idx, neg_idx})
        for (int j = 0; j < dim(); ++j) {
            table_[g][j] = sv_scale(-1, table_[g][j]);
            table_[j][g] = sv_scale(-1, table_[j][g]);
        }
    // entries landing on e_g flip once more (coordinates of the new basis)
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            for (auto& [k, c] : table_[i][j])
                if (k == root_idx || k == neg_idx) c = -c;
}

SVec ChevalleySystem::ad_exp(int root_idx, const Rat& c, const SVec& x) const {
    SVec acc = x, cur = x;
    Rat fact = 1;
    for (int k = 1; !sv_is_zero(cur); ++k) {
        cur = L_.bracket(SVec{{root_idx, c}}, cur);
        fact *= k;
        acc = sv_add(acc, sv_scale(Rat(1) / fact, cur));
        if (k > 64) throw std::logic_error("ad_exp: not nilpotent");
    }
    return acc;
}

SVec ChevalleySystem::weyl_conjugate(int gamma_idx, const SVec& x) const {
    IVec neg = L_.system().roots[gamma_idx];
    for (auto& c : neg) c = -c;
    int neg_idx = L_.system().root_index(neg);
    SVec r = ad_exp(gamma_idx, 1, x);
    r = ad_exp(neg_idx, 1, r);
    return ad_exp(gamma_idx, 1, r);
}

int ChevalleySystem::weyl_sign(int gamma_idx, int b_idx) const {
    auto key = std::make_pair(gamma_idx, b_idx);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SVec img = weyl_conjugate(gamma_idx, SVec{{b_idx, 1}});
    // target root s_gamma(b)
    const FiniteRootSystem& rs = L_.system();
    QVec g(rs.roots[gamma_idx].begin(), rs.roots[gamma_idx].end());
    QVec b(rs.roots[b_idx].begin(), rs.roots[b_idx].end());
    Rat pair = rs.coroot_pairing(g, b);
    IVec target = rs.roots[b_idx];
    for (int i = 0; i < rs.rank(); ++i) {
        Rat c = Rat(target[i]) - pair * Rat(rs.roots[gamma_idx][i]);
        if (!is_integer(c)) throw std::logic_error("weyl_sign: reflection left the root lattice");
        target[i] = int(c);
    }
    int tgt = rs.root_index(target);
    if (tgt < 0 || img.size() != 1 || img[0].first != tgt || (img[0].second != 1 && img[0].second != -1))
        throw std::logic_error("weyl_sign: conjugation did not permute the root vectors");
    int s = img[0].second == 1 ? 1 : -1;
    cache_[key] = s;
    return s;
}

SteinbergSigns automorphism_signs(const ChevalleySystem& cs, const DiagramAutomorphism& sigma) {
    const LieAlgebra& L = cs.algebra();
    const FiniteRootSystem& rs = L.system();
    if (!preserves_cartan(rs, sigma)) throw std::invalid_argument("automorphism does not preserve the Cartan matrix");
    int R = L.num_roots();
    SteinbergSigns out;
    out.sigma = sigma;
    out.eps.assign(R, 0);

    // seed on simple roots (pinning: sign +1), then propagate as a Lie
    // homomorphism through sums of positive roots, then to negatives via
    // the coroot bracket.
    std::vector<int> by_height(R);
    for (int i = 0; i < R; ++i) by_height[i] = i;
    std::sort(by_height.begin(), by_height.end(), [&](int x, int y) {
        return rs.height(rs.roots[x]) < rs.height(rs.roots[y]);
    });
    auto neg_index = [&](int idx) {
        IVec v = rs.roots[idx];
        for (auto& c : v) c = -c;
        return rs.root_index(v);
    };
    for (int idx : by_height) {
        int h = rs.height(rs.roots[idx]);
        if (h < 0) continue;
        if (h == 1) {
            out.eps[idx] = 1;
            out.eps[neg_index(idx)] = 1;
            continue;
        }
        // find a decomposition idx = a + b with both positive of lower height
        bool done = false;
        for (int a = 0; a < R && !done; ++a) {
            if (rs.height(rs.roots[a]) <= 0 || rs.height(rs.roots[a]) >= h || out.eps[a] == 0) continue;
            IVec rem = rs.roots[idx];
            for (int i = 0; i < rs.rank(); ++i) rem[i] -= rs.roots[a][i];
            int b = rs.root_index(rem);
            if (b < 0 || out.eps[b] == 0) continue;
            // sigma(e_idx) = sigma([e_a,e_b]) / N_{ab}
            Rat n = L.structure_constant(a, b);
            if (n == 0) continue;
            int sa = rs.root_index(sigma.apply(rs.roots[a]));
            int sb = rs.root_index(sigma.apply(rs.roots[b]));
            Rat m = L.structure_constant(sa, sb);
            Rat s = Rat(out.eps[a] * out.eps[b]) * m / n;
            if (s != 1 && s != -1) throw std::logic_error("automorphism sign propagation failed");
            out.eps[idx] = s == 1 ? 1 : -1;
            // negative root: sigma respects [e_g, e_{-g}] = +-h_g, and the
            // coroot image pins the product of the two signs to +1
            out.eps[neg_index(idx)] = out.eps[idx];
            done = true;
        }
        if (!done) throw std::logic_error("positive root with no admissible decomposition");
    }
    return out;
}

bool average_is_divisible(const FiniteRootSystem& rs, const std::vector<DiagramAutomorphism>& group,
                          const IVec& root) {
    auto average = [&](const IVec& r) {
        QVec q(rs.rank(), 0);
        for (const auto& g : group) {
            IVec img = g.apply(r);
            for (int i = 0; i < rs.rank(); ++i) q[i] += Rat(img[i]);
        }
        for (auto& c : q) c /= int(group.size());
        return q;
    };
    QVec half = average(root);
    for (auto& c : half) c /= 2;
    for (const IVec& r : rs.roots)
        if (average(r) == half) return true;
    return false;
}

std::vector<DiagramAutomorphism> generate_group(int rank, const std::vector<DiagramAutomorphism>& gens) {
    std::set<std::vector<int>> seen;
    std::vector<DiagramAutomorphism> group = {trivial_automorphism(rank)};
    seen.insert(group[0].perm);
    std::vector<DiagramAutomorphism> frontier = group;
    while (!frontier.empty()) {
        std::vector<DiagramAutomorphism> next;
        for (const auto& g : frontier)
            for (const auto& h : gens) {
                DiagramAutomorphism gh = g.compose(h);
                if (seen.insert(gh.perm).second) {
                    group.push_back(gh);
                    next.push_back(gh);
                }
            }
        frontier = std::move(next);
    }
    return group;
}

std::vector<SteinbergSigns> steinberg_normalize(ChevalleySystem& cs, const std::vector<DiagramAutomorphism>& gens) {
    const FiniteRootSystem& rs = cs.system();
    int R = cs.algebra().num_roots();
    std::vector<DiagramAutomorphism> group = generate_group(rs.rank(), gens);

    std::vector<SteinbergSigns> eps;
    for (const auto& g : gens) eps.push_back(automorphism_signs(cs, g));

    // sign flips s on positive root pairs solve  s_g s_{sigma g} eps = 1
    // on the constrained locus; propagate as an F2 system
    std::vector<int> constrained(R, 0);
    for (int idx = 0; idx < R; ++idx)
        if (rs.height(rs.roots[idx]) > 0 && !average_is_divisible(rs, group, rs.roots[idx])) constrained[idx] = 1;

    // undirected parity graph: an edge (v, g v) with parity eps_{v,g}
    std::vector<std::vector<std::pair<int, int>>> adj(R);
    auto img = [&](size_t gi, int idx) { return rs.root_index(gens[gi].apply(rs.roots[idx])); };
    for (int v = 0; v < R; ++v) {
        if (!constrained[v]) continue;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            int w = img(gi, v);
            int p = eps[gi].sign(v);  // s_w = s_v * p
            adj[v].emplace_back(w, p);
            adj[w].emplace_back(v, p);
        }
    }
    std::vector<int> flip(R, 0);
    for (int seed = 0; seed < R; ++seed) {
        if (rs.height(rs.roots[seed]) < 0 || flip[seed] != 0) continue;
        flip[seed] = 1;
        std::vector<int> stack = {seed};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, p] : adj[v]) {
                int need = flip[v] * p;
                if (flip[w] == 0) {
                    flip[w] = need;
                    stack.push_back(w);
                } else if (flip[w] != need) {
                    throw std::logic_error("Chevalley-Steinberg constraint unsatisfiable");
                }
            }
        }
    }
    for (int idx = 0; idx < R; ++idx)
        if (rs.height(rs.roots[idx]) > 0 && flip[idx] == -1) cs.flip_root_pair(idx);

    std::vector<SteinbergSigns> out;
    for (const auto& g : gens) {
        SteinbergSigns table = automorphism_signs(cs, g);
        for (int idx = 0; idx < R; ++idx)
            if (constrained[idx] && table.sign(idx) != 1)
                throw std::logic_error("Chevalley-Steinberg normalisation failed");
        out.push_back(std::move(table));
    }
    return out;
}

SteinbergSigns steinberg_normalize(ChevalleySystem& cs, const DiagramAutomorphism& sigma) {
    return steinberg_normalize(cs, std::vector<DiagramAutomorphism>{sigma})[0];
}

LieAlgebra LieAlgebra::fold(const LieAlgebra& g, const DiagramAutomorphism& sigma,
                            const std::vector<int>& eps, const FiniteRootSystem& folded) {
    const FiniteRootSystem& rs = g.system();
    int ord = sigma.order();

    // orbits of roots under sigma
    std::vector<int> orbit_rep(g.num_roots(), -1);
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < g.num_roots(); ++i) {
        if (orbit_rep[i] >= 0) continue;
        std::vector<int> orb = {i};
        orbit_rep[i] = i;
        int cur = rs.root_index(sigma.apply(rs.roots[i]));
        while (cur != i) {
            orbit_rep[cur] = i;
            orb.push_back(cur);
            cur = rs.root_index(sigma.apply(rs.roots[cur]));
        }
        orbits.push_back(std::move(orb));
    }

    // orbit sums with eps-corrections must be sigma-fixed
    // folded root ordering: map each orbit to a vector in the folded simple basis
    // orbits of simple roots give the folded simple roots, in the order of
    // their smallest member
    std::vector<std::vector<int>> simple_orbits;
    std::vector<int> simple_orbit_of(rs.rank(), -1);
    for (int i = 0; i < rs.rank(); ++i) {
        if (simple_orbit_of[i] >= 0) continue;
        std::vector<int> orb = {i};
        simple_orbit_of[i] = int(simple_orbits.size());
        for (int cur = sigma.perm[i]; cur != i; cur = sigma.perm[cur]) {
            simple_orbit_of[cur] = int(simple_orbits.size());
            orb.push_back(cur);
        }
        simple_orbits.push_back(std::move(orb));
    }
    int fn = int(simple_orbits.size());
    if (folded.rank() != fn) throw std::invalid_argument("fold: folded system has wrong rank");

    // avg(sum m_i alpha_i) = sum_j (sum_{i in O_j} m_i) abar_j
    auto folded_coords = [&](const IVec& root) {
        IVec c(fn, 0);
        for (int i = 0; i < rs.rank(); ++i) c[simple_orbit_of[i]] += root[i];
        return c;
    };

    LieAlgebra out;
    out.rs_ = folded;
    int FR = out.num_roots(), FN = out.rank(), FD = out.dim();

    // basis vectors of the fixed algebra, expressed in g
    std::vector<SVec> basis(FD);
    for (auto& orb : orbits) {
        IVec fc = folded_coords(rs.roots[orb[0]]);
        if (fc.empty()) throw std::logic_error("fold: orbit average not in the folded lattice");
        int fidx = folded.root_index(fc);
        if (fidx < 0) throw std::logic_error("fold: orbit average is not a folded root");
        SVec v;
        Rat c = 1;
        v.emplace_back(orb[0], c);
        for (size_t k = 0; k + 1 < orb.size(); ++k) {
            c *= eps[orb[k]];
            v.emplace_back(orb[k + 1], c);
        }
        // closure of the orbit must carry sign +1, otherwise no fixed vector
        if (c * Rat(eps[orb.back()]) != 1) throw std::logic_error("fold: orbit signs do not close");
        if (!basis[fidx].empty()) throw std::logic_error("fold: duplicate folded root");
        basis[fidx] = v;
    }
    for (int j = 0; j < fn; ++j) {
        SVec h;
        for (int i : simple_orbits[j]) h.emplace_back(g.h_index(i), Rat(1));
        basis[FR + j] = h;
    }

    // express a sigma-fixed vector of g in the folded basis
    auto express = [&](const SVec& x) {
        std::map<int, Rat> rest(x.begin(), x.end());
        SVec out_v;
        for (int b = 0; b < FD; ++b) {
            if (basis[b].empty()) continue;
            auto it = rest.find(basis[b][0].first);
            if (it == rest.end() || it->second == 0) continue;
            Rat c = it->second / basis[b][0].second;
            for (auto& [k, v] : basis[b]) {
                rest[k] -= c * v;
                if (rest[k] == 0) rest.erase(k);
            }
            if (c != 0) out_v.emplace_back(b, c);
        }
        if (!rest.empty()) throw std::logic_error("fold: bracket left the fixed algebra");
        std::sort(out_v.begin(), out_v.end());
        return out_v;
    };

    out.table_.assign(FD, std::vector<SVec>(FD));
    for (int i = 0; i < FD; ++i)
        for (int j = 0; j < FD; ++j) out.table_[i][j] = express(g.bracket(basis[i], basis[j]));
    return out;
}


FiniteRootSystem folded_system(const FiniteRootSystem& rs, const DiagramAutomorphism& sigma) {
    int n = rs.rank();
    std::vector<std::vector<int>> simple_orbits;
    std::vector<int> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> orb = {i};
        seen[i] = 1;
        for (int cur = sigma.perm[i]; cur != i; cur = sigma.perm[cur]) {
            seen[cur] = 1;
            orb.push_back(cur);
        }
        simple_orbits.push_back(std::move(orb));
    }
    int fn = int(simple_orbits.size());
    auto average = [&](int j) {
        QVec q(n, 0);
        for (int i : simple_orbits[j]) q[i] = Rat(1, int(simple_orbits[j].size()));
        return q;
    };
    FiniteRootSystem out;
    out.name = rs.name + "^fold";
    out.cartan.assign(fn, IVec(fn, 0));
    for (int i = 0; i < fn; ++i)
        for (int j = 0; j < fn; ++j) {
            Rat p = rs.coroot_pairing(average(i), average(j));
            if (!is_integer(p)) throw std::logic_error("folded_system: non-integral Cartan pairing");
            out.cartan[i][j] = int(num(p));
            if (i == j && out.cartan[i][j] != 2) throw std::logic_error("folded_system: fold is not reduced");
        }
    finish_system(out);
    return out;
}


LieAlgebra LieAlgebra::product(const LieAlgebra& g, int copies) {
    const FiniteRootSystem& rs = g.system();
    LieAlgebra out;
    out.rs_ = product_system(rs, copies);
    int n = rs.rank(), R = g.num_roots();
    int FD = out.dim();

    // map (block, inner root index) -> product root index
    auto embed_root = [&](int block, int r) {
        IVec v(n * copies, 0);
        for (int i = 0; i < n; ++i) v[block * n + i] = rs.roots[r][i];
        int idx = out.rs_.root_index(v);
        if (idx < 0) throw std::logic_error("product: missing embedded root");
        return idx;
    };
    std::vector<int> block_of(out.num_roots(), -1), inner_of(out.num_roots(), -1);
    for (int b = 0; b < copies; ++b)
        for (int r = 0; r < R; ++r) {
            int idx = embed_root(b, r);
            block_of[idx] = b;
            inner_of[idx] = r;
        }
    auto map_basis = [&](int b, int k) {
        // inner basis index -> product basis index
        return k < R ? embed_root(b, k) : out.num_roots() + b * n + (k - R);
    };

    out.table_.assign(FD, std::vector<SVec>(FD));
    auto put = [&](int i, int j, const SVec& inner, int block) {
        SVec v;
        for (auto& [k, c] : inner) v.emplace_back(map_basis(block, k), c);
        std::sort(v.begin(), v.end());
        out.table_[i][j] = v;
    };
    for (int i = 0; i < FD; ++i)
        for (int j = 0; j < FD; ++j) {
            int bi = i < out.num_roots() ? block_of[i] : (i - out.num_roots()) / n;
            int bj = j < out.num_roots() ? block_of[j] : (j - out.num_roots()) / n;
            if (bi != bj) continue;  // different factors commute
            int ii = i < out.num_roots() ? inner_of[i] : R + (i - out.num_roots()) % n;
            int jj = j < out.num_roots() ? inner_of[j] : R + (j - out.num_roots()) % n;
            put(i, j, g.bracket(ii, jj), bi);
        }
    return out;
}

}  // namespace twaf
