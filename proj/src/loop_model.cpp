#include "twaf/loop_model.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace twaf {

namespace {

// bracket on the 2-power rescaled basis; integrality is the content of the
// Tits modification and is asserted by the caller
SVec bracket_scaled(const LieAlgebra& L, const std::vector<int>& k, int i, int j) {
    auto kof = [&](int b) { return L.is_root_vector(b) ? k[b] : 0; };
    SVec out;
    for (auto& [w, c] : L.bracket(i, j)) {
        int exp = kof(i) + kof(j) - kof(w);
        Rat f = 1;
        for (int p = 0; p < exp; ++p) f *= 2;
        for (int p = 0; p > exp; --p) f /= 2;
        out.emplace_back(w, c * f);
    }
    return out;
}

}  // namespace

LoopAlgebra::LoopAlgebra(const TwistedType& type, int level_bound) : type_(&type), nlevels_(level_bound) {
    zdim_ = type.twist_order() == 3 ? 2 : 1;
    kexp_ = tits_exponents_absolute(type);
    const LieAlgebra& L = type.chevalley->algebra();
    int D = L.dim();
    scaled_table_.assign(D, std::vector<SVec>(D));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) scaled_table_[i][j] = bracket_scaled(L, kexp_, i, j);
    build_basis();
    for (const BasisVec& b : basis_) {
        std::vector<std::pair<int, Int>> sup;
        for (size_t a = 0; a < b.ambient.size(); ++a)
            if (b.ambient[a] != 0) sup.emplace_back(int(a), b.ambient[a]);
        support_.push_back(std::move(sup));
    }
}

void LoopAlgebra::build_basis() {
    const TwistedType& T = *type_;
    const RelativeRootDatum& d = *T.datum;
    const LieAlgebra& L = T.chevalley->algebra();
    const FiniteRootSystem& rs = d.absolute();
    int e = d.twist_order();
    int D = L.dim();
    std::vector<int> kexp = tits_exponents_absolute(T);

    auto amb = [&](int lie, int c) { return lie * zdim_ + c; };

    // the twisted action on the ambient block at a fixed degree, as exact
    // rational matrices; rows = images
    auto sigma_index = [&](int r) { return rs.root_index(d.sigma().apply(rs.roots[r])); };
    auto iota_index = [&](int r) { return rs.root_index(d.iota().apply(rs.roots[r])); };

    int degmax = nlevels_ * e;
    for (int m = -degmax; m <= degmax; ++m) {
        // blocks: one per relative root (its lifts), plus the Cartan
        struct Block {
            int weight;             // -1 for Cartan
            std::vector<int> lie;   // lie basis indices
        };
        std::vector<Block> blocks;
        for (size_t ri = 0; ri < d.size(); ++ri) blocks.push_back({int(ri), d.info(int(ri)).lifts});
        Block cartan{-1, {}};
        for (int i = 0; i < rs.rank(); ++i) cartan.lie.push_back(L.h_index(i));
        blocks.push_back(cartan);

        for (const Block& blk : blocks) {
            int nb = int(blk.lie.size()) * zdim_;
            std::vector<int> pos(D, -1);
            for (size_t a = 0; a < blk.lie.size(); ++a) pos[blk.lie[a]] = int(a);

            // equations (action - 1) x = 0 for each generator of the image
            QMat eqs;
            auto add_action = [&](bool use_iota) {
                // action on basis vector (lie u, zeta^c s^m)
                QMat act(nb, QVec(nb, 0));
                for (size_t a = 0; a < blk.lie.size(); ++a) {
                    int u = blk.lie[a];
                    int img_lie;
                    Rat coeff = 1;
                    if (L.is_root_vector(u)) {
                        int r = u;
                        int ir = use_iota ? iota_index(r) : sigma_index(r);
                        int sgn = use_iota ? T.iota_signs.sign(r) : T.sigma_signs.sign(r);
                        int dexp = kexp[r] - kexp[ir];
                        coeff = Rat(sgn);
                        for (int p = 0; p < dexp; ++p) coeff *= 2;
                        for (int p = 0; p > dexp; --p) coeff /= 2;
                        img_lie = ir;
                    } else {
                        int i = u - L.num_roots();
                        img_lie = L.h_index(use_iota ? d.iota().perm[i] : d.sigma().perm[i]);
                    }
                    if (pos[img_lie] < 0) throw std::logic_error("loop model: block not action-stable");
                    for (int c = 0; c < zdim_; ++c) {
                        // coefficient zeta^c transforms; sigma also multiplies by zeta^m
                        Cyclo z = zeta_pow(c, e);
                        if (use_iota)
                            z = cyc_conj(z, e);
                        else
                            z = cyc_mul(z, zeta_pow(m, e), e);
                        // write coeff * z over the basis {1, zeta}
                        Rat comps[2] = {coeff * z.a, coeff * z.b};
                        for (int c2 = 0; c2 < zdim_; ++c2)
                            if (comps[c2] != 0) act[size_t(pos[img_lie]) * zdim_ + c2][a * zdim_ + c] = comps[c2];
                    }
                }
                for (int row = 0; row < nb; ++row) {
                    QVec eq = act[row];
                    eq[row] -= 1;
                    bool nonzero = false;
                    for (const Rat& x : eq)
                        if (x != 0) nonzero = true;
                    if (nonzero) eqs.push_back(eq);
                }
            };
            add_action(false);
            if (!d.iota().is_trivial()) add_action(true);

            ZMat zeqs;
            for (const QVec& eq : eqs) {
                Int lcm = 1;
                for (const Rat& c : eq) lcm = lcm / boost::multiprecision::gcd(lcm, den(c)) * den(c);
                ZVec z(eq.size());
                for (size_t i2 = 0; i2 < eq.size(); ++i2) z[i2] = num(eq[i2] * Rat(lcm));
                zeqs.push_back(std::move(z));
            }
            ZMat fixed = zeqs.empty() ? ZMat() : integer_kernel(zeqs);
            if (zeqs.empty()) {
                fixed.assign(nb, ZVec(nb, 0));
                for (int i2 = 0; i2 < nb; ++i2) fixed[i2][i2] = 1;
            }
            for (const ZVec& v : fixed) {
                BasisVec b;
                b.degree = m;
                b.weight = blk.weight;
                b.ambient.assign(size_t(D) * zdim_, 0);
                for (size_t a = 0; a < blk.lie.size(); ++a)
                    for (int c = 0; c < zdim_; ++c) b.ambient[amb(blk.lie[a], c)] = v[a * zdim_ + c];
                by_degree_[m].push_back(int(basis_.size()));
                basis_.push_back(std::move(b));
            }
        }
    }
}

std::vector<int> LoopAlgebra::at_degree(int degree) const {
    auto it = by_degree_.find(degree);
    return it == by_degree_.end() ? std::vector<int>() : it->second;
}

int LoopAlgebra::dim_at_level(const Rat& level) const {
    Rat deg = level * type_->twist_order();
    if (!is_integer(deg)) return 0;
    return int(at_degree(int(num(deg))).size());
}

int LoopAlgebra::cartan_dim_at_level(const Rat& level) const {
    Rat deg = level * type_->twist_order();
    if (!is_integer(deg)) return 0;
    int n = 0;
    for (int i : at_degree(int(num(deg))))
        if (basis_[i].weight < 0) ++n;
    return n;
}

std::optional<SVec> LoopAlgebra::bracket(int i, int j) const {
    const LieAlgebra& L = type_->chevalley->algebra();
    int e = type_->twist_order();
    int m = basis_[i].degree + basis_[j].degree;
    if (m < -nlevels_ * e || m > nlevels_ * e) return std::nullopt;
    int D = L.dim();

    // ambient bracket with cyclotomic coefficient products
    QVec out(size_t(D) * zdim_, 0);
    for (auto& [au, xu] : support_[i]) {
        int u = au / zdim_, cu = au % zdim_;
        for (auto& [av, yv] : support_[j]) {
            int v = av / zdim_, cv = av % zdim_;
            const SVec& br = scaled_table_[u][v];
            if (br.empty()) continue;
            Cyclo z = cyc_mul(zeta_pow(cu, e), zeta_pow(cv, e), e);
            for (auto& [w, c] : br) {
                Rat f = c * Rat(xu) * Rat(yv);
                out[size_t(w) * zdim_ + 0] += f * z.a;
                if (zdim_ > 1) out[size_t(w) * zdim_ + 1] += f * z.b;
            }
        }
    }
    // express over the fixed basis at the target degree, block by block
    SVec res;
    QVec rest = out;
    // group target basis indices by weight for small solves
    std::map<int, std::vector<int>> groups;
    for (int b : at_degree(m)) groups[basis_[b].weight].push_back(b);
    for (auto& [w, idxs] : groups) {
        // support of the group
        std::vector<int> support;
        for (int b : idxs)
            for (size_t a = 0; a < basis_[b].ambient.size(); ++a)
                if (basis_[b].ambient[a] != 0 &&
                    std::find(support.begin(), support.end(), int(a)) == support.end())
                    support.push_back(int(a));
        bool touched = false;
        for (int a : support)
            if (rest[a] != 0) touched = true;
        if (!touched) continue;
        QMat sys(support.size(), QVec(idxs.size(), 0));
        QVec rhs(support.size(), 0);
        for (size_t r = 0; r < support.size(); ++r) {
            for (size_t cidx = 0; cidx < idxs.size(); ++cidx)
                sys[r][cidx] = Rat(basis_[idxs[cidx]].ambient[support[r]]);
            rhs[r] = rest[support[r]];
        }
        auto sol = solve_linear(sys, rhs);
        if (!sol) throw std::logic_error("loop bracket left the fixed lattice span");
        for (size_t cidx = 0; cidx < idxs.size(); ++cidx) {
            if ((*sol)[cidx] == 0) continue;
            res.emplace_back(idxs[cidx], (*sol)[cidx]);
            for (size_t a = 0; a < rest.size(); ++a)
                rest[a] -= (*sol)[cidx] * Rat(basis_[idxs[cidx]].ambient[a]);
        }
    }
    for (const Rat& c : rest)
        if (c != 0) throw std::logic_error("loop bracket has components outside the fixed algebra");
    for (auto& [k, c] : res)
        if (!is_integer(c)) throw std::logic_error("loop model: non-integral structure constant");
    std::sort(res.begin(), res.end());
    return res;
}

std::map<int, std::vector<Rat>> LoopAlgebra::real_support() const {
    std::map<int, std::vector<Rat>> out;
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].weight >= 0) out[basis_[i].weight].push_back(t_level(i));
    for (auto& [w, v] : out) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return out;
}

LoopAlgebra::JacobiReport LoopAlgebra::jacobi_audit(Exec exec) const {
    int n = dim();
    // pair table first (the expensive part), then the triple verification;
    // both stages are data-parallel over independent slots
    std::vector<std::optional<SVec>> table(size_t(n) * n);
    parallel_for(exec, int64_t(n) * n, [&](int64_t t) {
        int i = int(t / n), j = int(t % n);
        table[size_t(t)] = bracket(i, j);
    });
    auto tab = [&](int i, int j) -> const std::optional<SVec>& { return table[size_t(i) * n + j]; };

    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) triples.push_back({i, j, k});
    std::vector<char> ok(triples.size(), 1);
    parallel_for(exec, int64_t(triples.size()), [&](int64_t t) {
        auto [i, j, k] = triples[size_t(t)];
        const auto &bij = tab(i, j), &bjk = tab(j, k), &bik = tab(i, k);
        if (!bij || !bjk || !bik) return;  // out of window
        // [[i,j],k] = [i,[j,k]] - [j,[i,k]] whenever every piece stays inside
        std::map<int, Rat> acc;
        bool window = true;
        auto add = [&](const std::optional<SVec>& sv, const Rat& f) {
            if (!sv) {
                window = false;
                return;
            }
            for (auto& [b, c] : *sv) acc[b] += f * c;
        };
        for (auto& [b, c] : *bij) add(tab(b, k), c);
        for (auto& [b, c] : *bjk) add(tab(i, b), -c);
        for (auto& [b, c] : *bik) add(tab(j, b), c);
        if (!window) return;
        for (auto& [b, c] : acc)
            if (c != 0) ok[size_t(t)] = 0;
    });
    for (size_t t = 0; t < triples.size(); ++t)
        if (!ok[t]) {
            std::ostringstream os;
            os << "triple (" << triples[t][0] << "," << triples[t][1] << "," << triples[t][2] << ")";
            return {false, (long long)triples.size(), os.str()};
        }
    return {true, (long long)triples.size(), ""};
}

LoopAlgebra::DividedPowerReport LoopAlgebra::divided_power_audit(int k_max, Exec exec) const {
    int e = type_->twist_order();
    // real root vectors with |t-level| <= 1
    std::vector<int> xs;
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].weight >= 0 && t_level(i) >= -1 && t_level(i) <= 1) xs.push_back(i);
    std::vector<std::array<int, 2>> jobs;
    for (int x : xs)
        for (int y = 0; y < dim(); ++y) jobs.push_back({x, y});
    std::vector<char> ok(jobs.size(), 1);
    parallel_for(exec, int64_t(jobs.size()), [&](int64_t t) {
        auto [x, y] = jobs[size_t(t)];
        std::map<int, Rat> cur = {{y, 1}};
        Rat fact = 1;
        for (int k = 1; k <= k_max; ++k) {
            std::map<int, Rat> next;
            bool window = true;
            for (auto& [b, c] : cur) {
                auto br = bracket(x, b);
                if (!br) {
                    window = false;
                    break;
                }
                for (auto& [b2, c2] : *br) next[b2] += c * c2;
            }
            if (!window) return;  // ad^k left the window: nothing to check
            cur = std::move(next);
            fact *= k;
            for (auto& [b, c] : cur)
                if (!is_integer(c / fact)) ok[size_t(t)] = 0;
        }
        (void)e;
    });
    for (size_t t = 0; t < jobs.size(); ++t)
        if (!ok[t]) {
            std::ostringstream os;
            os << "ad(x)^k/k! with x basis " << jobs[t][0] << " on basis " << jobs[t][1];
            return {false, (long long)jobs.size(), os.str()};
        }
    return {true, (long long)jobs.size(), ""};
}

LoopAlgebra::SpanReport LoopAlgebra::span_test(const std::string& field) const {
    int p = 0;
    if (field == "Q" || field == "q")
        p = 0;
    else if (field == "F2" || field == "f2")
        p = 2;
    else if (field == "F3" || field == "f3")
        p = 3;
    else
        throw std::invalid_argument("span_test: field must be Q, F2 or F3");

    int n = dim();
    // sparse echelon rows keyed by pivot; brackets stay inside single
    // (degree, weight) blocks, so the fill-in is bounded by the block size
    using Row = std::map<int, Rat>;
    auto normalize = [&](Row& v) {
        if (!p) return;
        for (auto it = v.begin(); it != v.end();) {
            it->second = Rat(mod_p(it->second, p));
            if (it->second == 0)
                it = v.erase(it);
            else
                ++it;
        }
    };
    std::map<int, Row> echelon;  // pivot -> row with leading coefficient 1
    auto reduce = [&](Row v) {
        normalize(v);
        while (!v.empty()) {
            int piv = v.begin()->first;
            auto it = echelon.find(piv);
            if (it == echelon.end()) break;
            Rat f = v.begin()->second;
            for (auto& [k, c] : it->second) {
                auto vit = v.emplace(k, 0).first;
                vit->second -= f * c;
                if (p) vit->second = Rat(mod_p(vit->second, p));
                if (vit->second == 0) v.erase(vit);
            }
        }
        return v;
    };
    auto insert = [&](Row v) -> std::optional<int> {
        v = reduce(std::move(v));
        if (v.empty()) return std::nullopt;
        Rat lead = v.begin()->second;
        for (auto& [k, c] : v) {
            c /= lead;
            if (p) c = Rat(mod_p(c, p));
        }
        int piv = v.begin()->first;
        echelon.emplace(piv, std::move(v));
        return piv;
    };

    std::vector<Row> frontier;
    for (int i = 0; i < n; ++i) {
        if (basis_[i].weight < 0) continue;
        Row v = {{i, 1}};
        if (auto piv = insert(v)) frontier.push_back(echelon.at(*piv));
    }
    std::vector<Row> all = frontier;
    while (!frontier.empty()) {
        std::vector<Row> next;
        size_t snapshot = all.size();
        for (const Row& x : frontier)
            for (size_t yi = 0; yi < snapshot; ++yi) {
                const Row& y = all[yi];
                Row acc;
                for (auto& [i, ci] : x)
                    for (auto& [j, cj] : y) {
                        auto br = bracket(i, j);
                        if (!br) continue;  // outside the window
                        for (auto& [b, c] : *br) {
                            auto it = acc.emplace(b, 0).first;
                            it->second += ci * cj * c;
                            if (it->second == 0) acc.erase(it);
                        }
                    }
                auto piv = insert(std::move(acc));
                if (piv) next.push_back(echelon.at(*piv));
            }
        for (const Row& v : next) all.push_back(v);
        frontier = std::move(next);
    }

    SpanReport rep;
    rep.missing = n - (long long)echelon.size();
    rep.pass = true;
    auto in_span = [&](int i) { return reduce(Row{{i, 1}}).empty(); };
    // report the Cartan levels missing inside the conclusive window
    std::map<Rat, std::pair<int, int>> cartan_counts;
    for (int i = 0; i < n; ++i) {
        if (basis_[i].weight >= 0) continue;
        Rat lev = t_level(i);
        if (lev < Rat(1 - nlevels_) || lev > Rat(nlevels_ - 1)) continue;
        auto& cnt = cartan_counts[lev];
        ++cnt.second;
        if (in_span(i)) ++cnt.first;
    }
    for (auto& [lev, cnt] : cartan_counts)
        if (cnt.first < cnt.second) {
            rep.missing_cartan.emplace_back(lev, cnt.second - cnt.first);
            rep.pass = false;
        }
    for (int i = 0; i < n; ++i) {
        if (basis_[i].weight < 0) continue;
        Rat lev = t_level(i);
        if (lev < Rat(1 - nlevels_) || lev > Rat(nlevels_ - 1)) continue;
        if (!in_span(i)) rep.pass = false;
    }
    return rep;
}

// ---------------------------------------------------------------------
// affine Kac-Moody data

AffineGCM affine_gcm(const TwistedType& type) {
    Apartment apt(type.datum);
    const RelativeRootDatum& d = *type.datum;
    int e = d.twist_order();
    LoopAlgebra loop(type, 2);

    AffineGCM out;
    out.walls = apt.walls();
    int n = int(out.walls.size());

    // degree-0 Cartan block: the cocharacter lattice of S
    std::vector<int> cartan0;
    for (int i : loop.at_degree(0))
        if (loop.basis(i).weight < 0) cartan0.push_back(i);

    // sl2 triple per wall
    std::vector<SVec> hs;
    for (const AffineRoot& wall : out.walls) {
        int widx = d.index_of(wall.gradient);
        Rat deg = wall.level * e;
        int m = int(num(deg));
        int epos = -1, eneg = -1;
        for (int i : loop.at_degree(m))
            if (loop.basis(i).weight == widx) {
                if (epos >= 0) throw std::logic_error("affine_gcm: real root space not one-dimensional");
                epos = i;
            }
        QVec negg = wall.gradient;
        for (auto& x : negg) x = -x;
        int nwidx = d.index_of(negg);
        for (int i : loop.at_degree(-m))
            if (loop.basis(i).weight == nwidx) eneg = i;
        if (epos < 0 || eneg < 0) throw std::logic_error("affine_gcm: missing root vector for a wall");
        auto br = loop.bracket(epos, eneg);
        if (!br) throw std::logic_error("affine_gcm: bracket left the window");
        hs.push_back(*br);
    }

    // evaluate a gradient on a Cartan element given by basis coordinates
    const LieAlgebra& L = type.chevalley->algebra();
    auto eval_on_h = [&](const SVec& h, const QVec& a) {
        Rat val = 0;
        for (auto& [bidx, c] : h) {
            const auto& bv = loop.basis(bidx);
            if (bv.weight >= 0) throw std::logic_error("affine_gcm: coroot has a non-Cartan part");
            // ambient h-part is zeta-free at degree 0
            for (int i = 0; i < d.absolute().rank(); ++i) {
                Int coord = bv.ambient[size_t(L.h_index(i)) * (e == 3 ? 2 : 1)];
                if (coord == 0) continue;
                val += c * Rat(coord) * d.absolute().copairing(i, a);
            }
        }
        return val;
    };

    // normalise: alpha_s(h_s) = 2
    for (int s = 0; s < n; ++s) {
        Rat diag = eval_on_h(hs[s], out.walls[s].gradient);
        if (diag == -2)
            hs[s] = sv_scale(-1, hs[s]);
        else if (diag != 2)
            throw std::logic_error("affine_gcm: pairing is not +-2");
    }
    out.cartan.assign(n, ZVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = eval_on_h(hs[i], out.walls[j].gradient);
            if (!is_integer(v)) throw std::logic_error("affine_gcm: non-integral Cartan entry");
            out.cartan[i][j] = num(v);
        }

    // marks and comarks: positive primitive kernel vectors
    auto kernel_vec = [&](bool left) {
        QMat m(n, QVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = Rat(left ? out.cartan[j][i] : out.cartan[i][j]);
        QMat ker = nullspace(m);
        if (ker.size() != 1) throw std::logic_error("affine_gcm: corank is not 1");
        QVec v = ker[0];
        Int lcm = 1;
        for (const Rat& c : v) lcm = lcm / boost::multiprecision::gcd(lcm, den(c)) * den(c);
        ZVec z(n);
        Int g = 0;
        for (int i = 0; i < n; ++i) {
            z[i] = num(v[i] * Rat(lcm));
            g = boost::multiprecision::gcd(g, z[i]);
        }
        for (auto& x : z) x /= g;
        bool neg = false;
        for (auto& x : z)
            if (x < 0) neg = true;
        if (neg)
            for (auto& x : z) x = -x;
        for (auto& x : z)
            if (x <= 0) throw std::logic_error("affine_gcm: kernel vector is not positive");
        return z;
    };
    out.marks = kernel_vec(false);
    out.comarks = kernel_vec(true);

    // h_s over the degree-0 Cartan basis
    for (int s = 0; s < n; ++s) {
        ZVec row(cartan0.size(), 0);
        for (auto& [bidx, c] : hs[s]) {
            auto it = std::find(cartan0.begin(), cartan0.end(), bidx);
            if (it == cartan0.end()) throw std::logic_error("affine_gcm: coroot outside the S-lattice");
            if (!is_integer(c)) throw std::logic_error("affine_gcm: non-integral coroot coordinate");
            row[it - cartan0.begin()] = num(c);
        }
        out.coroot_cartan.push_back(std::move(row));
    }

    // distinguished node: the wall not through the special point whose
    // residual system is Phi^nm
    out.distinguished_node = -1;
    for (const auto& sp : apt.special_points()) {
        if (!sp.special) continue;
        bool all_nm = true;
        for (const QVec& a : sp.residual)
            if (d.classify(a) == RootClass::Multipliable) all_nm = false;
        // Phi^nm exactly: every non-multipliable ray must appear
        for (const QVec& a : d.relative_roots()) {
            if (d.classify(a) == RootClass::Multipliable) continue;
            bool found = false;
            for (const QVec& b : sp.residual)
                if (b == a) found = true;
            if (!found) all_nm = false;
        }
        if (!all_nm) continue;
        for (int s = 0; s < n; ++s)
            if (apt.eval(out.walls[s], sp.point) != 0) {
                out.distinguished_node = s;
                break;
            }
        if (out.distinguished_node >= 0) break;
    }
    if (out.distinguished_node < 0) throw std::logic_error("affine_gcm: no distinguished special point");
    return out;
}

IntegralRealization integral_realization(const AffineGCM& gcm) {
    IntegralRealization r;
    r.cartan = gcm.cartan;
    r.marks = gcm.marks;
    int n = gcm.nodes();
    // coordinates of alpha_j: (<alpha_i^vee, alpha_j>)_i plus <d, alpha_j> =
    // delta_{j, node0}; node0 is the distinguished node
    for (int j = 0; j < n; ++j) {
        QVec v(n + 1, 0);
        for (int i = 0; i < n; ++i) v[i] = Rat(gcm.cartan[i][j]);
        v[n] = j == gcm.distinguished_node ? 1 : 0;
        r.alpha_coords.push_back(std::move(v));
    }
    return r;
}

QVec IntegralRealization::fundamental_weight(int i) const {
    QVec v(nodes() + 1, 0);
    v[i] = 1;
    return v;
}

QVec IntegralRealization::delta() const {
    QVec v(nodes() + 1, 0);
    for (int j = 0; j < nodes(); ++j)
        for (int c = 0; c <= nodes(); ++c) v[c] += Rat(marks[j]) * alpha_coords[j][c];
    return v;
}

CentralCharge central_charge_matrix(const TwistedType& type) {
    AffineGCM gcm = affine_gcm(type);
    CentralCharge out;
    out.matrix = gcm.coroot_cartan;
    out.distinguished_node = gcm.distinguished_node;
    // cokernel of X^*(S) -> sum_s Z L_s: free of rank 1 iff all invariant
    // factors are 1 and the rank drops by exactly one
    ZVec snf = smith_normal_form(out.matrix);
    int r = int(out.matrix.empty() ? 0 : out.matrix[0].size());
    out.cokernel_free_rank_one = int(snf.size()) == r && int(out.matrix.size()) == r + 1;
    for (const Int& dgl : snf)
        if (dgl != 1) out.cokernel_free_rank_one = false;
    // projection omitting the distinguished node
    ZMat sq;
    for (size_t s = 0; s < out.matrix.size(); ++s)
        if (int(s) != out.distinguished_node) sq.push_back(out.matrix[s]);
    out.projection_det = abs_det(sq);
    return out;
}

CoefficientRatios coefficient_ratios(const TwistedType& type) {
    const RelativeRootDatum& d = *type.datum;
    int e = d.twist_order();
    // restriction-of-scalars foldings carry untwisted affine diagrams and
    // sit on the dual side of the comparison themselves
    if (e == 1 || type.name.find('x') != std::string::npos)
        throw std::invalid_argument("coefficient_ratios: twisted types only");

    AffineGCM A = affine_gcm(type);
    int n = A.nodes();

    // the very special isogeny dual: restriction of scalars of the dual of
    // the relative type (the Phi^nm type in the non-reduced case)
    std::string dual_name;
    {
        const std::string& nm = type.name;
        char letter = nm[0];
        int rank = nm[1] - '0';
        std::ostringstream os;
        if (letter == 'A' && rank % 2 == 0)
            os << 'C' << rank / 2;  // BC_n: the quotient has type C_n
        else if (letter == 'A')
            os << 'B' << (rank + 1) / 2;  // relative C_n, dual B_n
        else if (letter == 'D' && e == 2)
            os << 'C' << rank - 1;  // relative B_n, dual C_n
        else if (letter == 'E')
            os << 'F' << 4;
        else if (letter == 'D' && e == 3)
            os << 'G' << 2;
        else
            throw std::invalid_argument("coefficient_ratios: unsupported twisted type");
        std::string base = os.str();
        if (base == "C1") base = "A1";
        if (base == "B1") base = "A1";
        if (base == "B2") base = "C2";
        dual_name = base + "x" + std::to_string(e);
    }
    AffineGCM Abar = affine_gcm(get_type(dual_name));
    if (Abar.nodes() != n) throw std::logic_error("coefficient_ratios: node count mismatch");

    CoefficientRatios out;
    out.comarks = A.comarks;
    out.dual_comarks = Abar.comarks;
    // inseparable degree of the root-group comparison on the wall line:
    // non-reduced case: e on multipliable walls, 1 elsewhere (the isogeny
    // is an isomorphism on the nd-nm root groups); reduced (exotic) case:
    // e on the short walls, which is the field degree e_{a_s}
    bool reduced = type.reduced();
    for (int s = 0; s < n; ++s) {
        const QVec& g = A.walls[s].gradient;
        int deg = reduced ? d.info(g).e_a : (d.classify(g) == RootClass::Multipliable ? e : 1);
        out.degrees.push_back(deg);
    }

    // diagram-respecting matching with cm_A = (e / deg) cm_Abar
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end());
    out.balanced = false;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            Rat ratio = Rat(e) / out.degrees[i];
            if (Rat(A.comarks[i]) != ratio * Rat(Abar.comarks[perm[i]])) ok = false;
            for (int j = 0; j < n && ok; ++j)
                if ((A.cartan[i][j] != 0) != (Abar.cartan[perm[i]][perm[j]] != 0)) ok = false;
        }
        if (ok) {
            out.balanced = true;
            out.ratios.assign(n, 0);
            for (int i = 0; i < n; ++i) out.ratios[i] = Rat(e) / out.degrees[i];
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace twaf
