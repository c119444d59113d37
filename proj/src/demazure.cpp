#include "twaf/demazure.hpp"

namespace twaf {

Weight DemazureOps::reflect(int i, Weight w) const {
    Rat k = w[i];
    const QVec& alpha = real_.alpha_coords[i];
    for (size_t c = 0; c < w.size(); ++c) w[c] -= k * alpha[c];
    return w;
}

bool DemazureOps::dominant(const Weight& w) const {
    for (int i = 0; i < real_.nodes(); ++i)
        if (w[i] < 0) return false;
    return true;
}

WeightCharacter DemazureOps::apply(int i, const WeightCharacter& f) const {
    WeightCharacter out;
    const QVec& alpha = real_.alpha_coords[i];
    for (auto& [w, mult] : f.terms()) {
        Rat kq = w[i];
        if (!is_integer(kq)) throw std::domain_error("Demazure operator on a non-integral weight");
        long long k = (long long)num(kq);
        auto shifted = [&](long long j) {
            Weight v = w;
            for (size_t c = 0; c < v.size(); ++c) v[c] -= Rat(j) * alpha[c];
            return v;
        };
        if (k >= 0) {
            for (long long j = 0; j <= k; ++j) out.add(shifted(j), mult);
        } else if (k <= -2) {
            for (long long j = -1; j >= k + 1; --j) out.add(shifted(j), -mult);
        }
        // k == -1 contributes nothing
    }
    return out;
}

WeightCharacter DemazureOps::character(const std::vector<int>& word, const Weight& lambda) const {
    if (int(lambda.size()) != real_.nodes() + 1)
        throw std::invalid_argument("demazure: weight has the wrong coordinate count");
    if (!dominant(lambda)) throw std::invalid_argument("demazure: highest weight must be dominant");
    WeightCharacter f = WeightCharacter::monomial(lambda);
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = apply(*it, f);
    return f;
}

bool DemazureOps::in_lower_cone(const Weight& lambda, const Weight& mu) const {
    // solve lambda - mu = sum c_j alpha_j with integral c_j >= 0
    int n = real_.nodes();
    QMat m(lambda.size(), QVec(n, 0));
    QVec rhs(lambda.size());
    for (size_t r = 0; r < lambda.size(); ++r) {
        for (int j = 0; j < n; ++j) m[r][j] = real_.alpha_coords[j][r];
        rhs[r] = lambda[r] - mu[r];
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) return false;
    // verify (solve_linear returns one solution; alphas are independent here)
    for (size_t r = 0; r < lambda.size(); ++r) {
        Rat acc = 0;
        for (int j = 0; j < n; ++j) acc += (*sol)[j] * real_.alpha_coords[j][r];
        if (acc != rhs[r]) return false;
    }
    for (const Rat& c : *sol)
        if (c < 0 || !is_integer(c)) return false;
    return true;
}

}  // namespace twaf
