#include "twaf/iwahori.hpp"

#include <algorithm>
#include <sstream>

namespace twaf {

QVec IWElement::act(const QVec& x) const {
    size_t n = tr.size();
    QVec y(n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) y[i] += lin[i][j] * x[j];
        y[i] += tr[i];
    }
    return y;
}

std::string IWElement::key() const {
    std::ostringstream os;
    for (const auto& row : lin)
        for (const Rat& c : row) os << c << ",";
    os << ";";
    for (const Rat& c : tr) os << c << ",";
    return os.str();
}

IwahoriWeyl::IwahoriWeyl(std::shared_ptr<const Apartment> apartment) : apt_(std::move(apartment)) {
    const RelativeRootDatum& d = apt_->datum();
    int n = d.absolute().rank();
    for (const AffineRoot& wall : apt_->walls()) {
        // s(x) = x - (a(x) + n) a^vee with a^vee = 2a/(a,a)
        QVec a = wall.gradient;
        Rat len = d.form(a, a);
        QVec avee(n);
        for (int i = 0; i < n; ++i) avee[i] = 2 * a[i] / len;
        IWElement s;
        s.lin.assign(n, QVec(n, 0));
        for (int i = 0; i < n; ++i) {
            s.lin[i][i] = 1;
            for (int j = 0; j < n; ++j) {
                // subtract avee_i * form(a, e_j)
                Rat fa = 0;
                for (int k = 0; k < n; ++k) fa += Rat(d.absolute().cartan[j][k]) * a[k] * d.absolute().d[j];
                s.lin[i][j] -= avee[i] * fa;
            }
        }
        s.tr.assign(n, 0);
        for (int i = 0; i < n; ++i) s.tr[i] = -wall.level * avee[i];
        gens_.push_back(std::move(s));
    }
    sample_ = apt_->alcove_barycenter();
}

IWElement IwahoriWeyl::identity() const {
    int n = apt_->datum().absolute().rank();
    IWElement e;
    e.lin.assign(n, QVec(n, 0));
    for (int i = 0; i < n; ++i) e.lin[i][i] = 1;
    e.tr.assign(n, 0);
    return e;
}

IWElement IwahoriWeyl::translation(const QVec& lambda) const {
    IWElement t = identity();
    t.tr = lambda;
    return t;
}

IWElement IwahoriWeyl::mul(const IWElement& a, const IWElement& b) const {
    size_t n = a.tr.size();
    IWElement r;
    r.lin.assign(n, QVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a.lin[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r.lin[i][j] += a.lin[i][k] * b.lin[k][j];
        }
    r.tr = a.act(b.tr);
    return r;
}

IWElement IwahoriWeyl::inverse(const IWElement& a) const {
    size_t n = a.tr.size();
    QMat m = a.lin;
    QMat inv(n, QVec(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    // Gauss-Jordan
    for (size_t c = 0, r = 0; c < n && r < n; ++c) {
        size_t sel = r;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) throw std::logic_error("IWElement: singular linear part");
        std::swap(m[sel], m[r]);
        std::swap(inv[sel], inv[r]);
        Rat p = m[r][c];
        for (size_t j = 0; j < n; ++j) {
            m[r][j] /= p;
            inv[r][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[r][j];
                inv[i][j] -= f * inv[r][j];
            }
        }
        ++r;
    }
    IWElement r2;
    r2.lin = inv;
    QVec nb(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) nb[i] -= inv[i][j] * a.tr[j];
    r2.tr = nb;
    return r2;
}

IWElement IwahoriWeyl::word_to_element(const std::vector<int>& word) const {
    IWElement w = identity();
    for (int i : word) w = mul(w, gens_[i]);
    return w;
}

AffineRoot IwahoriWeyl::act_on_root(const IWElement& w, const AffineRoot& alpha) const {
    if (!alpha.is_real()) return alpha;
    const RelativeRootDatum& d = apt_->datum();
    size_t n = alpha.gradient.size();
    QVec g(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i] += w.lin[i][j] * alpha.gradient[j];
    Rat lev = alpha.level - d.form(g, w.tr);
    return {g, lev};
}

std::vector<AffineRoot> IwahoriWeyl::inversions(const IWElement& w) const {
    const RelativeRootDatum& d = apt_->datum();
    // levels moved by at most the translation pairing; bound the search
    Rat shift = 0;
    for (const QVec& a : d.relative_roots()) {
        Rat s = d.form(a, w.tr);
        if (s < 0) s = -s;
        shift = std::max(shift, s);
    }
    std::vector<AffineRoot> inv;
    for (const AffineRoot& alpha : apt_->real_roots(shift + 2)) {
        if (!apt_->positive(alpha)) continue;
        AffineRoot beta = act_on_root(w, alpha);
        if (!apt_->positive(beta)) inv.push_back(alpha);
    }
    return inv;
}

int IwahoriWeyl::length(const IWElement& w) const { return int(inversions(w).size()); }

int IwahoriWeyl::descent(const IWElement& w) const {
    IWElement wi = inverse(w);
    for (size_t i = 0; i < gens_.size(); ++i) {
        AffineRoot img = act_on_root(wi, apt_->walls()[i]);
        if (!apt_->positive(img)) return int(i);
    }
    return -1;
}

std::vector<int> IwahoriWeyl::reduced_word(const IWElement& w) const {
    std::vector<int> word;
    IWElement cur = w;
    while (true) {
        int i = descent(cur);
        if (i < 0) break;
        word.push_back(i);
        cur = mul(gens_[i], cur);
        if (word.size() > 4096) throw std::logic_error("reduced_word: runaway");
    }
    if (!(cur == identity())) throw std::logic_error("reduced_word: did not reach the identity");
    return word;
}

std::vector<std::vector<int>> IwahoriWeyl::all_reduced_words(const IWElement& w) const {
    if (w == identity()) return {{}};
    std::vector<std::vector<int>> out;
    IWElement wi = inverse(w);
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (apt_->positive(act_on_root(wi, apt_->walls()[i]))) continue;
        for (auto rest : all_reduced_words(mul(gens_[i], w))) {
            rest.insert(rest.begin(), int(i));
            out.push_back(std::move(rest));
        }
    }
    return out;
}

bool IwahoriWeyl::bruhat_leq(const IWElement& u, const IWElement& w) const {
    if (u == w) return true;
    auto key = std::make_pair(u.key(), w.key());
    auto it = bruhat_cache_.find(key);
    if (it != bruhat_cache_.end()) return it->second;
    bool res;
    int s = descent(w);
    if (s < 0) {
        res = u == w;  // w = e
    } else {
        IWElement sw = mul(gens_[s], w);
        IWElement su = mul(gens_[s], u);
        // standard lifting: u <= w iff (su < u ? su <= sw : u <= sw)
        bool su_less = !apt_->positive(act_on_root(inverse(u), apt_->walls()[s]));
        res = su_less ? bruhat_leq(su, sw) : bruhat_leq(u, sw);
    }
    bruhat_cache_[key] = res;
    return res;
}

bool IwahoriWeyl::bruhat_leq_subword_oracle(const IWElement& u, const IWElement& w) const {
    std::vector<int> word = reduced_word(w);
    size_t n = word.size();
    if (n > 20) throw std::invalid_argument("subword oracle: word too long");
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(word[i]);
        if (word_to_element(sub) == u) return true;
    }
    return false;
}

std::vector<IWElement> IwahoriWeyl::elements_up_to(int length_bound) const {
    std::set<std::string> seen;
    std::vector<IWElement> all = {identity()};
    seen.insert(identity().key());
    std::vector<IWElement> frontier = all;
    for (int l = 1; l <= length_bound; ++l) {
        std::vector<IWElement> next;
        for (const IWElement& w : frontier)
            for (const IWElement& s : gens_) {
                IWElement ws = mul(w, s);
                if (seen.insert(ws.key()).second) {
                    next.push_back(ws);
                    all.push_back(ws);
                }
            }
        frontier = std::move(next);
    }
    return all;
}

bool IwahoriWeyl::is_coset_minimal(const IWElement& w, const Facet& f) const {
    for (int i : f) {
        // w s_i < w iff w(alpha_i) < 0
        if (!apt_->positive(act_on_root(w, apt_->walls()[i]))) return false;
    }
    return true;
}

IWElement IwahoriWeyl::coset_minimize(const IWElement& w, const Facet& f) const {
    IWElement cur = w;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i : f)
            if (!apt_->positive(act_on_root(cur, apt_->walls()[i]))) {
                cur = mul(cur, gens_[i]);
                progress = true;
            }
    }
    return cur;
}

std::vector<AffineRoot> IwahoriWeyl::I_w(const IWElement& w, const Facet& f) const {
    if (!is_coset_minimal(w, f)) throw std::invalid_argument("I_w: representative is not coset-minimal");
    const RelativeRootDatum& d = apt_->datum();
    BoundedSet facet_set = f.empty() ? apt_->fundamental_alcove() : apt_->facet(f);
    IWElement wi = inverse(w);
    Rat shift = 0;
    for (const QVec& a : d.relative_roots()) {
        Rat s = d.form(a, wi.tr);
        if (s < 0) s = -s;
        shift = std::max(shift, s);
    }
    std::vector<AffineRoot> out;
    for (const AffineRoot& alpha : apt_->real_roots(shift + 2)) {
        if (!apt_->positive(alpha)) continue;  // positive on the alcove
        AffineRoot beta = act_on_root(wi, alpha);
        // w^{-1} alpha lands in the opposite radical: strictly negative on
        // the relative interior (roots vanishing on f belong to the Levi)
        bool strictly_neg = true;
        for (const QVec& x : facet_set.points)
            if (apt_->eval(beta, x) >= 0) strictly_neg = false;
        if (strictly_neg) out.push_back(alpha);
    }
    return out;
}

bool IwahoriWeyl::richardson_nonempty(const IWElement& w, const IWElement& v) const {
    return bruhat_leq(w, v);
}

int IwahoriWeyl::picard_rank(const IWElement& w, const Facet& f) const {
    int count = 0;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (std::find(f.begin(), f.end(), int(i)) != f.end()) continue;  // lands in W_f
        if (bruhat_leq(gens_[i], w)) ++count;
    }
    return count;
}

std::vector<QVec> IwahoriWeyl::translation_lattice_basis() const {
    const RelativeRootDatum& d = apt_->datum();
    int n = d.absolute().rank();
    std::vector<QVec> basis;
    QMat span;
    for (const QVec& a : d.relative_roots()) {
        if (d.classify(a) == RootClass::Divisible) continue;
        Rat len = d.form(a, a);
        QVec v(n);
        for (int i = 0; i < n; ++i) v[i] = d.level_set(a).step * 2 * a[i] / len;
        QMat test = span;
        test.push_back(v);
        if (rank_of(test) > rank_of(span)) {
            span.push_back(v);
            basis.push_back(v);
        }
    }
    return basis;
}

QVec IwahoriWeyl::dominant_representative(const QVec& mu) const {
    const RelativeRootDatum& d = apt_->datum();
    QVec cur = mu;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const QVec& a : d.simple_relative())
            if (d.form(a, cur) < 0) {
                cur = d.reflect(a, cur);
                progress = true;
            }
    }
    return cur;
}

std::vector<QVec> IwahoriWeyl::finite_orbit(const QVec& mu) const {
    const RelativeRootDatum& d = apt_->datum();
    std::set<QVec> seen = {mu};
    std::vector<QVec> frontier = {mu};
    while (!frontier.empty()) {
        std::vector<QVec> next;
        for (const QVec& x : frontier)
            for (const QVec& a : d.simple_relative()) {
                QVec y = d.reflect(a, x);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<IWElement> IwahoriWeyl::lower_interval(const IWElement& w, const Facet& f) const {
    std::vector<int> word = reduced_word(w);
    size_t n = word.size();
    if (n > 20) throw std::invalid_argument("lower_interval: word too long");
    std::set<std::string> seen;
    std::vector<IWElement> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(word[i]);
        IWElement u = coset_minimize(word_to_element(sub), f);
        if (seen.insert(u.key()).second) out.push_back(u);
    }
    return out;
}

std::vector<IWElement> IwahoriWeyl::admissible_set(const QVec& mu, const Facet& f) const {
    QVec dom = dominant_representative(mu);
    std::set<std::string> seen;
    std::vector<IWElement> out;
    for (const QVec& lambda : finite_orbit(dom)) {
        IWElement t = coset_minimize(translation(lambda), f);
        for (const IWElement& u : lower_interval(t, f))
            if (seen.insert(u.key()).second) out.push_back(u);
    }
    return out;
}

std::vector<IWElement> IwahoriWeyl::schubert_intersection(const std::vector<IWElement>& ws) const {
    if (ws.empty()) throw std::invalid_argument("schubert_intersection: empty input");
    Facet none;
    std::vector<IWElement> universe = lower_interval(ws[0], none);
    std::vector<IWElement> meet;
    for (const IWElement& u : universe) {
        bool in_all = true;
        for (const IWElement& w : ws)
            if (!bruhat_leq(u, w)) in_all = false;
        if (in_all) meet.push_back(u);
    }
    // maximal elements
    std::vector<IWElement> antichain;
    for (const IWElement& u : meet) {
        bool maximal = true;
        for (const IWElement& v : meet)
            if (!(v == u) && bruhat_leq(u, v)) maximal = false;
        if (maximal) antichain.push_back(u);
    }
    return antichain;
}

std::map<uint32_t, std::vector<IWElement>> IwahoriWeyl::schubert_intersection_report(
    const std::vector<IWElement>& ws) const {
    if (ws.size() > 10) throw std::invalid_argument("schubert_intersection_report: too many strata");
    std::map<uint32_t, std::vector<IWElement>> out;
    for (uint32_t mask = 1; mask < (1u << ws.size()); ++mask) {
        std::vector<IWElement> subset;
        for (size_t i = 0; i < ws.size(); ++i)
            if (mask & (1u << i)) subset.push_back(ws[i]);
        out[mask] = schubert_intersection(subset);
    }
    return out;
}

}  // namespace twaf
