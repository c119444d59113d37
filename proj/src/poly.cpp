#include "twaf/poly.hpp"

#include <sstream>

namespace twaf {

Poly Poly::variable(const PolyRing* ring, int v, const Scalar& coeff) {
    Poly p(ring);
    if (coeff.is_zero()) return p;
    Mono m(ring->var_count(), 0);
    m[v] = 1;
    p.t_[m] = coeff;
    return p;
}

void Poly::set(const Mono& m, Scalar v) {
    if (v.is_zero())
        t_.erase(m);
    else
        t_[m] = std::move(v);
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (auto& [m, c] : t_) r.t_[m] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    for (auto& [m, c] : o.t_) {
        auto it = t_.find(m);
        if (it == t_.end())
            t_[m] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    for (auto& [m, c] : o.t_) {
        auto it = t_.find(m);
        if (it == t_.end())
            t_[m] = -c;
        else {
            it->second -= c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.ring_ ? a.ring_ : b.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) {
            Mono m(ma);
            for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            auto it = r.t_.find(m);
            if (it == r.t_.end())
                r.t_[m] = ca * cb;
            else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

Poly operator*(const Scalar& c, const Poly& p) {
    Poly r(p.ring_);
    if (c.is_zero()) return r;
    for (auto& [m, v] : p.t_) {
        Scalar w = c * v;
        if (!w.is_zero()) r.t_[m] = w;
    }
    return r;
}

Poly Poly::sigma(int k) const {
    Poly cur = *this;
    for (int step = 0; step < ((k % 100) + 100) % 100; ++step) {
        Poly r(ring_);
        for (auto& [m, c] : cur.t_) {
            Mono im(m.size(), 0);
            int sign = 1;
            for (size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                im[ring_->sigma_image(int(i))] += m[i];
                if (ring_->sigma_sign(int(i)) < 0 && m[i] % 2 == 1) sign = -sign;
            }
            Scalar cc = c.galois(1);
            if (sign < 0) cc = -cc;
            auto it = r.t_.find(im);
            if (it == r.t_.end())
                r.t_[im] = cc;
            else {
                it->second += cc;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        cur = r;
    }
    return cur;
}

Scalar Poly::substitute(const std::vector<Scalar>& values) const {
    int e = ring_->twist_order();
    if (values.size() != ring_->var_count()) throw std::invalid_argument("substitute: wrong number of values");
    Scalar acc(e);
    for (auto& [m, c] : t_) {
        Scalar term = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (int p = 0; p < m[i]; ++p) term *= values[i];
        acc += term;
    }
    return acc;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    const auto& dlead = *divisor.t_.rbegin();
    if (!dlead.second.is_unit()) return std::nullopt;
    Scalar dlead_inv = dlead.second.inverse();

    Poly rem = *this, quot(ring_);
    while (!rem.is_zero()) {
        const auto& rlead = *rem.t_.rbegin();
        Mono q(rlead.first.size());
        bool divisible = true;
        for (size_t i = 0; i < q.size(); ++i) {
            if (rlead.first[i] < dlead.first[i]) {
                divisible = false;
                break;
            }
            q[i] = uint16_t(rlead.first[i] - dlead.first[i]);
        }
        if (!divisible) return std::nullopt;
        Poly qt(ring_);
        qt.t_[q] = rlead.second * dlead_inv;
        quot += qt;
        rem -= qt * divisor;
    }
    return quot;
}

bool Poly::coefficients_integral() const {
    for (auto& [m, c] : t_)
        if (!c.is_integral()) return false;
    return true;
}

bool Poly::coefficients_2_integral() const {
    for (auto& [m, c] : t_)
        if (!c.is_2_integral()) return false;
    return true;
}

int Poly::max_denominator_2_power() const {
    int best = 0;
    for (auto& [m, c] : t_)
        for (auto& [k, v] : c.coefficients())
            for (const Rat& q : {v.a, v.b}) {
                Int d = den(q);
                int p = 0;
                while (d % 2 == 0) {
                    d /= 2;
                    ++p;
                }
                best = std::max(best, p);
            }
    return best;
}

bool Poly::mod2_equal(const Poly& a, const Poly& b) {
    Poly d = a - b;
    if (!d.coefficients_2_integral())
        throw std::domain_error("mod2_equal: coefficients not 2-integral");
    for (auto& [m, c] : d.terms())
        for (auto& [k, v] : c.coefficients())
            for (const Rat& q : {v.a, v.b})
                if (num(q) % 2 != 0) return false;
    return true;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second << ")";
        for (size_t i = 0; i < it->first.size(); ++i) {
            if (!it->first[i]) continue;
            os << "*" << ring_->var_name(int(i));
            if (it->first[i] > 1) os << "^" << int(it->first[i]);
        }
    }
    return os.str();
}

Cyclo Frac::specialize(const std::vector<Scalar>& values, const Rat& t_root) const {
    Cyclo n = num.substitute(values).specialize(t_root);
    Cyclo d = den.substitute(values).specialize(t_root);
    int e = num.ring()->twist_order();
    if (d.is_zero()) throw std::domain_error("Frac::specialize: denominator vanishes");
    return cyc_mul(n, cyc_inv(d, e), e);
}

}  // namespace twaf
