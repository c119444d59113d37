#include "twaf/scalar.hpp"
#include "twaf/matrix.hpp"

#include <sstream>

namespace twaf {

std::ostream& operator<<(std::ostream& os, const Cyclo& c) {
    if (c.is_zero()) return os << "0";
    if (c.b == 0) return os << c.a;
    if (c.a != 0) os << c.a << (c.b > 0 ? "+" : "");
    if (c.b == 1)
        os << "z";
    else if (c.b == -1)
        os << "-z";
    else
        os << c.b << "z";
    return os;
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_zero()) return os << "0";
    bool first = true;
    for (auto& [k, v] : s.coefficients()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v << ")";
        if (k != 0) {
            os << "*t";
            if (k != s.twist_order()) {
                if (k % s.twist_order() == 0)
                    os << "^" << k / s.twist_order();
                else
                    os << "^(" << k << "/" << s.twist_order() << ")";
            }
        }
    }
    return os;
}

Scalar ExactMatrix::det() const {
    if (n_ != m_) throw std::invalid_argument("det: square matrices only");
    if (n_ == 0) return Scalar::one(e_);
    if (n_ == 1) return at(0, 0);
    Scalar acc(e_);
    for (int j = 0; j < n_; ++j) {
        if (at(0, j).is_zero()) continue;
        Scalar term = at(0, j) * minor_matrix(0, j).det();
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

ExactMatrix ExactMatrix::minor_matrix(int row, int col) const {
    ExactMatrix r(n_ - 1, m_ - 1, e_);
    for (int i = 0, ri = 0; i < n_; ++i) {
        if (i == row) continue;
        for (int j = 0, rj = 0; j < m_; ++j) {
            if (j == col) continue;
            r.at(ri, rj) = at(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

ExactMatrix ExactMatrix::inverse() const {
    if (n_ != m_) throw std::invalid_argument("inverse: square matrices only");
    Scalar d = det();
    if (d.is_zero()) throw std::domain_error("inverse: singular matrix");
    if (!d.is_unit()) throw std::domain_error("inverse: determinant is not a unit of the Laurent ring");
    Scalar dinv = d.inverse();
    ExactMatrix r(n_, n_, e_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Scalar c = minor_matrix(j, i).det();
            if ((i + j) % 2 == 1) c = -c;
            r.at(i, j) = dinv * c;
        }
    return r;
}

std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < m.cols(); ++j) os << "[" << m.at(i, j) << "]";
        os << (i + 1 == m.rows() ? "]" : "\n");
    }
    return os;
}

}  // namespace twaf
