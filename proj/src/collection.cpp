#include "twaf/collection.hpp"

#include "twaf/lattice.hpp"

#include <algorithm>

namespace twaf {

namespace {

QVec scale_root(const QVec& v, const Rat& c) {
    QVec r = v;
    for (auto& x : r) x *= c;
    return r;
}

// signed Tits 2-exponent <varpi^vee_{2c}, a> of a non-divisible
// non-multipliable relative root in a non-reduced system
int ndnm_tits_exponent(const TwistedType& T, const QVec& a) {
    if (T.reduced()) return 0;
    const RelativeRootDatum& d = *T.datum;
    std::vector<QVec> simples = d.simple_relative();
    QMat m;
    QVec rhs;
    for (size_t i = 0; i < a.size(); ++i) {
        QVec row;
        for (const QVec& s : simples) row.push_back(s[i]);
        m.push_back(row);
        rhs.push_back(a[i]);
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) throw std::logic_error("ndnm_tits_exponent: not in the root lattice");
    Rat exp = 0;
    for (size_t j = 0; j < simples.size(); ++j)
        if (d.classify(simples[j]) == RootClass::Multipliable) exp += (*sol)[j] / 2;
    if (!is_integer(exp)) throw std::logic_error("ndnm_tits_exponent: non-integral pairing");
    return int(num(exp));
}

int orbit_power(const RelativeRootDatum& d, int from, int to) {
    // smallest k with sigma^k(from) = to
    const FiniteRootSystem& rs = d.absolute();
    int cur = from;
    for (int k = 0; k < d.twist_order(); ++k) {
        if (cur == to) return k;
        cur = rs.root_index(d.sigma().apply(rs.roots[cur]));
    }
    throw std::logic_error("orbit_power: roots not in one sigma-orbit");
}

}  // namespace

WordCalculus::WordCalculus(const TwistedType& type, std::shared_ptr<PolyRing> ring)
    : type_(&type), ring_(std::move(ring)) {}

AbsoluteWord WordCalculus::embed_ndnm(const QVec& c, const Poly& r) const {
    const RelativeRootDatum& d = *type_->datum;
    const RelRootInfo& info = d.info(c);
    if (info.cls != RootClass::NdNm) throw std::invalid_argument("embed_ndnm: root class mismatch");
    int base = *std::min_element(info.lifts.begin(), info.lifts.end());
    // Tits rescaling 2^{<varpi_{2c}^vee, c>} of the coordinate
    int texp = ndnm_tits_exponent(*type_, c);
    Rat f = 1;
    for (int t = 0; t < texp; ++t) f *= 2;
    for (int t = 0; t > texp; --t) f /= 2;
    AbsoluteWord w;
    // one factor per sigma-power, argument conjugated alongside
    std::vector<int> done;
    int cur = base;
    Poly arg = Scalar(ring_->twist_order(), f) * r;
    for (int k = 0; k < d.twist_order(); ++k) {
        if (std::find(done.begin(), done.end(), cur) == done.end()) {
            w.push_back({cur, arg});
            done.push_back(cur);
        }
        cur = d.absolute().root_index(d.sigma().apply(d.absolute().roots[cur]));
        arg = arg.sigma();
    }
    return w;
}

AbsoluteWord WordCalculus::embed_mult(const QVec& c, const Poly& u, const Poly& v) const {
    const RelativeRootDatum& d = *type_->datum;
    const FiniteRootSystem& rs = d.absolute();
    const RelRootInfo& info = d.info(c);
    if (info.cls != RootClass::Multipliable) throw std::invalid_argument("embed_mult: root class mismatch");
    int alpha = *std::min_element(info.lifts.begin(), info.lifts.end());
    int beta = rs.root_index(d.sigma().apply(rs.roots[alpha]));
    IVec sumv = rs.roots[alpha];
    for (int i = 0; i < rs.rank(); ++i) sumv[i] += rs.roots[beta][i];
    int ab = rs.root_index(sumv);
    if (ab < 0) throw std::logic_error("embed_mult: alpha + sigma(alpha) is not a root");
    Rat n = type_->chevalley->algebra().structure_constant(alpha, beta);

    // Tits system: positive coordinates rescale by (2u, 4v)
    bool positive = relative_root_positive(d, c);
    Rat cu = positive ? 2 : 1;
    Poly R = Scalar(2, cu) * u;
    // CS middle coordinate of (cu u, cu^2 v): cu^2 (u sigma(u) - v) / 2
    Poly mid = Scalar(2, cu * cu * Rat(1, 2)) * (u * u.sigma() - v);
    AbsoluteWord w;
    w.push_back({beta, R.sigma()});
    w.push_back({ab, Scalar(2, 1 / n) * mid});
    w.push_back({alpha, R});
    return w;
}

AbsoluteWord WordCalculus::inverse_word(const AbsoluteWord& w) const {
    AbsoluteWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->root, -it->arg});
    return r;
}

std::pair<Rat, Rat> WordCalculus::cone_coords(const QVec& avg, const QVec& a, const QVec& b) const {
    // solve avg = p a + q b in the rank-2 span
    QMat m;
    QVec rhs;
    for (size_t i = 0; i < avg.size(); ++i) {
        m.push_back({a[i], b[i]});
        rhs.push_back(avg[i]);
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) throw std::logic_error("cone_coords: root outside the plane of a and b");
    // verify
    for (size_t i = 0; i < avg.size(); ++i)
        if ((*sol)[0] * a[i] + (*sol)[1] * b[i] != avg[i])
            throw std::logic_error("cone_coords: root outside the plane of a and b");
    if ((*sol)[0] < 0 || (*sol)[1] < 0) throw std::logic_error("cone_coords: root outside the cone");
    return {(*sol)[0], (*sol)[1]};
}

AbsoluteWord WordCalculus::commutator_correction(int g, int d, const Poly& x, const Poly& y) const {
    auto key = std::make_pair(g, d);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        // derive [y_g(x), y_d(y)] = prod y_{ig+jd}(C x^i y^j) from the
        // adjoint representation over a fresh two-variable ring
        const LieAlgebra& L = type_->chevalley->algebra();
        const FiniteRootSystem& rs = L.system();
        PolyRing ring2(type_->twist_order());
        int vx = ring2.add_var("x"), vy = ring2.add_var("y");
        Poly px = Poly::variable(&ring2, vx, Scalar::one(ring2.twist_order()));
        Poly py = Poly::variable(&ring2, vy, Scalar::one(ring2.twist_order()));

        int D = L.dim();
        auto mat_id = [&]() {
            std::vector<std::vector<Poly>> m(D, std::vector<Poly>(D, Poly(&ring2)));
            for (int i = 0; i < D; ++i) m[i][i] = Poly::constant(&ring2, 1);
            return m;
        };
        auto mat_mul = [&](const std::vector<std::vector<Poly>>& A, const std::vector<std::vector<Poly>>& B) {
            std::vector<std::vector<Poly>> C(D, std::vector<Poly>(D, Poly(&ring2)));
            for (int i = 0; i < D; ++i)
                for (int k = 0; k < D; ++k) {
                    if (A[i][k].is_zero()) continue;
                    for (int j = 0; j < D; ++j)
                        if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
                }
            return C;
        };
        auto exp_ad = [&](int root, const Poly& arg) {
            // exp(arg ad e_root) columnwise on the basis
            auto m = mat_id();
            for (int col = 0; col < D; ++col) {
                SVec cur = {{col, 1}};
                Poly pw = Poly::constant(&ring2, 1);
                Rat fact = 1;
                for (int k = 1; !cur.empty(); ++k) {
                    cur = L.bracket(SVec{{root, 1}}, cur);
                    pw = pw * arg;
                    fact *= k;
                    for (auto& [b, c2] : cur) m[b][col] += Scalar(ring2.twist_order(), c2 / fact) * pw;
                    if (k > 40) throw std::logic_error("exp_ad: not nilpotent");
                }
            }
            return m;
        };
        auto A = exp_ad(g, px), B = exp_ad(d, py);
        auto Ai = exp_ad(g, -px), Bi = exp_ad(d, -py);
        auto W = mat_mul(mat_mul(A, B), mat_mul(Ai, Bi));

        // strip ascending in (i + j, i); roots ig + jd
        std::vector<std::tuple<int, int, int>> cone;  // (i, j, root)
        const IVec& gv = rs.roots[g];
        const IVec& dv = rs.roots[d];
        for (int i2 = 0; i2 <= 4; ++i2)
            for (int j2 = 0; j2 <= 4; ++j2) {
                if (i2 + j2 < 2 && !(i2 == 1 && j2 == 1)) continue;
                if (i2 + j2 < 2) continue;
                IVec v(rs.rank());
                for (int t = 0; t < rs.rank(); ++t) v[t] = i2 * gv[t] + j2 * dv[t];
                int idx = rs.root_index(v);
                if (idx >= 0 && i2 >= 1 && j2 >= 1) cone.push_back({i2, j2, idx});
            }
        std::sort(cone.begin(), cone.end());
        std::vector<std::tuple<int, int, int, Rat>> shape;
        for (auto& [i2, j2, idx] : cone) {
            // coefficient of e_idx in (W - 1) h for a generic Cartan probe
            // equals -C * (ig+jd)(h) at the current minimal slot
            Rat coeff = 0;
            for (int hi = 0; hi < rs.rank(); ++hi) {
                int h = L.h_index(hi);
                // (W - 1) applied to basis h: column h
                const Poly& entry = W[idx][h];
                if (entry.is_zero()) continue;
                // want the x^i y^j coefficient
                Mono want(ring2.var_count(), 0);
                want[vx] = uint16_t(i2);
                want[vy] = uint16_t(j2);
                auto itt = entry.terms().find(want);
                if (itt == entry.terms().end()) continue;
                Rat val = itt->second.rational_value();
                Rat pairing = -Rat(rs.copairing(hi, rs.roots[idx]));
                // pairing of the root on h_i is copairing(hi, root); the ad
                // action gives -C * <alpha, h>: here <root, h_i> value
                Rat root_on_h = Rat(rs.copairing(hi, rs.roots[idx]));
                if (root_on_h == 0) continue;
                (void)pairing;
                coeff = val / (-root_on_h);
                break;
            }
            if (coeff != 0) {
                // strip exp(-coeff x^i y^j ad e_idx) from the left
                Poly mono = Poly::constant(&ring2, coeff);
                for (int t = 0; t < i2; ++t) mono = mono * px;
                for (int t = 0; t < j2; ++t) mono = mono * py;
                W = mat_mul(exp_ad(idx, -mono), W);
                shape.emplace_back(i2, j2, idx, coeff);
            }
        }
        // W must now be the identity
        for (int i2 = 0; i2 < D; ++i2)
            for (int j2 = 0; j2 < D; ++j2) {
                bool diag = i2 == j2;
                const Poly& entry = W[i2][j2];
                if (diag && !(entry == Poly::constant(&ring2, 1)))
                    throw std::logic_error("commutator_correction: residue after stripping");
                if (!diag && !entry.is_zero())
                    throw std::logic_error("commutator_correction: residue after stripping");
            }
        it = cache_.emplace(key, std::move(shape)).first;
    }
    AbsoluteWord out;
    for (auto& [i2, j2, idx, coeff] : it->second) {
        Poly arg = Poly(ring_.get(), Scalar(ring_->twist_order(), coeff));
        for (int t = 0; t < i2; ++t) arg = arg * x;
        for (int t = 0; t < j2; ++t) arg = arg * y;
        out.push_back({idx, arg});
    }
    return out;
}

AbsoluteWord WordCalculus::collect(AbsoluteWord w, const QVec& a, const QVec& b) const {
    const RelativeRootDatum& d = *type_->datum;
    const FiniteRootSystem& rs = d.absolute();
    auto theta = [&](int root) {
        auto [p, q] = cone_coords(d.restrict_root(rs.roots[root]), a, b);
        return std::make_tuple(Rat(p + q), p, root);
    };
    for (long guard = 0;; ++guard) {
        if (guard > 200000) throw std::logic_error("collect: runaway");
        // drop zero factors and merge equal neighbours
        bool changed = false;
        for (size_t i = 0; i < w.size();) {
            if (w[i].arg.is_zero()) {
                w.erase(w.begin() + i);
                changed = true;
            } else if (i + 1 < w.size() && w[i].root == w[i + 1].root) {
                w[i].arg += w[i + 1].arg;
                w.erase(w.begin() + i + 1);
                changed = true;
            } else {
                ++i;
            }
        }
        // find an inversion
        size_t pos = w.size();
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (theta(w[i].root) > theta(w[i + 1].root)) {
                pos = i;
                break;
            }
        if (pos == w.size()) {
            if (!changed) return w;
            continue;
        }
        // y_g(x) y_d(y) = prod corrections * y_d(y) y_g(x)
        AbsoluteFactor A = w[pos], B = w[pos + 1];
        AbsoluteWord corr = commutator_correction(A.root, B.root, A.arg, B.arg);
        w.erase(w.begin() + pos, w.begin() + pos + 2);
        AbsoluteWord insert;
        for (auto& f : corr) insert.push_back(f);
        insert.push_back(B);
        insert.push_back(A);
        w.insert(w.begin() + pos, insert.begin(), insert.end());
    }
}

std::vector<std::vector<Poly>> WordCalculus::adjoint(const AbsoluteWord& w) const {
    const LieAlgebra& L = type_->chevalley->algebra();
    int D = L.dim();
    std::vector<std::vector<Poly>> M(D, std::vector<Poly>(D, Poly(ring_.get())));
    for (int i = 0; i < D; ++i) M[i][i] = Poly::constant(ring_.get(), 1);
    for (const AbsoluteFactor& f : w) {
        // M := M * exp(arg ad e_root)
        std::vector<std::vector<Poly>> E(D, std::vector<Poly>(D, Poly(ring_.get())));
        for (int col = 0; col < D; ++col) {
            E[col][col] = Poly::constant(ring_.get(), 1);
            SVec cur = {{col, 1}};
            Poly pw = Poly::constant(ring_.get(), 1);
            Rat fact = 1;
            for (int k = 1; !cur.empty(); ++k) {
                cur = L.bracket(SVec{{f.root, 1}}, cur);
                pw = pw * f.arg;
                fact *= k;
                for (auto& [bb, cc] : cur) E[bb][col] += Scalar(ring_->twist_order(), cc / fact) * pw;
                if (k > 40) throw std::logic_error("adjoint: not nilpotent");
            }
        }
        std::vector<std::vector<Poly>> R(D, std::vector<Poly>(D, Poly(ring_.get())));
        for (int i = 0; i < D; ++i)
            for (int k = 0; k < D; ++k) {
                if (M[i][k].is_zero()) continue;
                for (int j = 0; j < D; ++j)
                    if (!E[k][j].is_zero()) R[i][j] += M[i][k] * E[k][j];
            }
        M = std::move(R);
    }
    return M;
}

RelCommutator relative_commutator(const TwistedType& type, const QVec& a, const QVec& b) {
    const RelativeRootDatum& d = *type.datum;
    if (!d.is_relative_root(a) || !d.is_relative_root(b)) throw std::invalid_argument("not relative roots");
    if (d.classify(a) == RootClass::Divisible || d.classify(b) == RootClass::Divisible)
        throw std::invalid_argument("relative_commutator: use the non-divisible representatives");
    // proportionality test
    {
        QMat m = {a, b};
        if (rank_of(m) < 2) throw std::invalid_argument("relative_commutator: proportional roots");
    }

    RelCommutator out;
    out.ring = std::make_shared<PolyRing>(type.twist_order());
    PolyRing* ring = out.ring.get();
    int e = type.twist_order();
    auto make_vars = [&](const QVec& c, const std::string& base) {
        std::vector<int> ids;
        const RelRootInfo& info = d.info(c);
        if (info.cls == RootClass::Multipliable) {
            auto [u, su] = ring->add_conjugate_pair(base);
            ids = {u, su, ring->add_antisymmetric_var(base + "v")};
        } else if (info.e_a == 1) {
            ids = {ring->add_var(base)};
        } else if (info.e_a == e) {
            if (e == 2) {
                auto [r, sr] = ring->add_conjugate_pair(base);
                ids = {r, sr};
            } else {
                ids = ring->add_cycle(base, e);
            }
        } else {
            throw std::logic_error("unsupported coordinate field for symbolic arguments");
        }
        return ids;
    };
    out.a_vars = make_vars(a, "r");
    out.b_vars = make_vars(b, "w");

    WordCalculus calc(type, out.ring);
    auto word_of = [&](const QVec& c, const std::vector<int>& vars, int sign) {
        Poly first = Poly::variable(ring, vars[0], Scalar::one(e));
        if (d.classify(c) == RootClass::Multipliable) {
            Poly v = Poly::variable(ring, vars[2], Scalar::one(e));
            if (sign < 0) return calc.embed_mult(c, -first, -v);  // pluriel inverse
            return calc.embed_mult(c, first, v);
        }
        if (sign < 0) return calc.embed_ndnm(c, -first);
        return calc.embed_ndnm(c, first);
    };
    AbsoluteWord w;
    for (auto& f : word_of(a, out.a_vars, +1)) w.push_back(f);
    for (auto& f : word_of(b, out.b_vars, +1)) w.push_back(f);
    for (auto& f : word_of(a, out.a_vars, -1)) w.push_back(f);
    for (auto& f : word_of(b, out.b_vars, -1)) w.push_back(f);

    AbsoluteWord flat = calc.collect(w, a, b);

    // peel the canonical form into relative packs ordered by the cone
    // position, solving for the pluriel coordinates as they appear
    AbsoluteWord rest = flat;
    auto strip = [&](const AbsoluteWord& pack) {
        AbsoluteWord inv = calc.inverse_word(pack);
        AbsoluteWord joined = inv;
        for (auto& f : rest) joined.push_back(f);
        rest = calc.collect(joined, a, b);
    };
    std::vector<RelCommutatorTerm> terms;
    for (long guard = 0; !rest.empty(); ++guard) {
        if (guard > 64) throw std::logic_error("relative_commutator: peeling failed");
        int root = rest.front().root;
        QVec avg = d.restrict_root(d.absolute().roots[root]);
        if (avg == a || avg == b) throw std::logic_error("relative_commutator: residue on the boundary rays");
        RootClass cls = d.classify(avg);
        if (cls == RootClass::Divisible) {
            // pure second-coordinate contribution of the halved root
            QVec half = scale_root(avg, Rat(1, 2));
            // x_half(0, v): match the single (alpha+beta) coordinate
            const RelRootInfo& info = d.info(half);
            int alpha = *std::min_element(info.lifts.begin(), info.lifts.end());
            int beta = d.absolute().root_index(d.sigma().apply(d.absolute().roots[alpha]));
            Rat n = type.chevalley->algebra().structure_constant(alpha, beta);
            bool positive = relative_root_positive(d, half);
            Rat cu = positive ? 2 : 1;
            // mid = cu^2 (0 - v)/2 / n  =>  v = -2 n mid / cu^2
            Poly mid = Scalar(e, n) * rest.front().arg;
            Poly v = Scalar(e, Rat(-2) / (cu * cu)) * mid;
            // merge into an existing pluriel term or create one
            bool merged = false;
            for (auto& t : terms)
                if (t.root == half && t.pluriel) {
                    // x(u,0) x(0,v) = x(u, v + correction)? group law:
                    // (u,0)(0,v) = (u, v); safe to set directly
                    t.v += v;
                    merged = true;
                }
            if (!merged) {
                RelCommutatorTerm t;
                t.root = half;
                t.pluriel = true;
                t.u = Poly(ring);
                t.v = v;
                terms.push_back(std::move(t));
            }
            strip(calc.embed_mult(half, Poly(ring), v));
        } else if (cls == RootClass::Multipliable) {
            // the leading coordinate is sigma^k of the u-argument
            const RelRootInfo& info = d.info(avg);
            int alpha = *std::min_element(info.lifts.begin(), info.lifts.end());
            int k = orbit_power(d, alpha, root);
            bool positive = relative_root_positive(d, avg);
            Rat cu = positive ? 2 : 1;
            Poly u = Scalar(e, 1 / cu) * rest.front().arg.sigma(e - k % e);
            RelCommutatorTerm t;
            t.root = avg;
            t.pluriel = true;
            t.u = u;
            t.v = Poly(ring);
            terms.push_back(std::move(t));
            strip(calc.embed_mult(avg, u, Poly(ring)));
        } else {
            const RelRootInfo& info = d.info(avg);
            int base = *std::min_element(info.lifts.begin(), info.lifts.end());
            int k = orbit_power(d, base, root);
            int texp = ndnm_tits_exponent(type, avg);
            Rat f = 1;
            for (int t = 0; t < texp; ++t) f /= 2;
            for (int t = 0; t > texp; --t) f *= 2;
            Poly r = Scalar(e, f) * rest.front().arg.sigma((e - k % e) % e);
            RelCommutatorTerm t;
            t.root = avg;
            t.pluriel = false;
            t.u = r;
            t.v = Poly(ring);
            terms.push_back(std::move(t));
            strip(calc.embed_ndnm(avg, r));
        }
    }
    // merge split pluriel packs into single terms and sort by cone position
    std::vector<RelCommutatorTerm> merged;
    for (auto& t : terms) {
        bool found = false;
        for (auto& m : merged)
            if (m.root == t.root) {
                // group law composition inside one root group
                if (t.pluriel) {
                    Poly cross = m.u.sigma() * t.u - m.u * t.u.sigma();
                    m.v += t.v + cross;
                    m.u += t.u;
                } else {
                    m.u += t.u;
                }
                found = true;
            }
        if (!found) merged.push_back(t);
    }
    out.terms = std::move(merged);

    // independent oracle: both sides agree in the adjoint representation
    AbsoluteWord rhs;
    for (auto& t : out.terms) {
        AbsoluteWord part = t.pluriel ? calc.embed_mult(t.root, t.u, t.v) : calc.embed_ndnm(t.root, t.u);
        for (auto& f : part) rhs.push_back(f);
    }
    out.oracle_match = calc.adjoint(w) == calc.adjoint(rhs);
    return out;
}

}  // namespace twaf
