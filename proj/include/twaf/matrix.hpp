#pragma once

#include "twaf/scalar.hpp"

#include <vector>

namespace twaf {

// Dense matrix over Scalar.  Inverses go through the adjugate, so they are
// exact and only exist when the determinant is a unit of the Laurent ring.
class ExactMatrix {
  public:
    ExactMatrix() : n_(0), m_(0), e_(1) {}
    ExactMatrix(int rows, int cols, int e) : n_(rows), m_(cols), e_(e), a_(size_t(rows) * cols, Scalar(e)) {}

    static ExactMatrix identity(int n, int e) {
        ExactMatrix m(n, n, e);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(e);
        return m;
    }

    int rows() const { return n_; }
    int cols() const { return m_; }
    int twist_order() const { return e_; }

    Scalar& at(int i, int j) { return a_[size_t(i) * m_ + j]; }
    const Scalar& at(int i, int j) const { return a_[size_t(i) * m_ + j]; }

    bool operator==(const ExactMatrix& o) const { return n_ == o.n_ && m_ == o.m_ && a_ == o.a_; }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
        if (x.m_ != y.n_ || x.e_ != y.e_) throw std::invalid_argument("matrix product: shape/twist mismatch");
        ExactMatrix r(x.n_, y.m_, x.e_);
        for (int i = 0; i < x.n_; ++i)
            for (int k = 0; k < x.m_; ++k) {
                const Scalar& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < y.m_; ++j) {
                    const Scalar& ykj = y.at(k, j);
                    if (!ykj.is_zero()) r.at(i, j) += xik * ykj;
                }
            }
        return r;
    }
    friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) {
        if (x.n_ != y.n_ || x.m_ != y.m_) throw std::invalid_argument("matrix sum: shape mismatch");
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) {
        if (x.n_ != y.n_ || x.m_ != y.m_) throw std::invalid_argument("matrix difference: shape mismatch");
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend ExactMatrix operator*(const Scalar& c, ExactMatrix x) {
        for (auto& v : x.a_) v = c * v;
        return x;
    }

    ExactMatrix galois(int j, bool conj = false) const {
        ExactMatrix r(n_, m_, e_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].galois(j, conj);
        return r;
    }

    Scalar det() const;
    // adjugate-based inverse; throws if det is not a unit
    ExactMatrix inverse() const;

    bool is_identity() const {
        if (n_ != m_) return false;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) {
                if (i == j && at(i, j) != Scalar::one(e_)) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

  private:
    ExactMatrix minor_matrix(int row, int col) const;

    int n_, m_, e_;
    std::vector<Scalar> a_;
};

std::ostream& operator<<(std::ostream& os, const ExactMatrix& m);

}  // namespace twaf
