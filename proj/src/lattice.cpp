#include "twaf/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace twaf {

std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(int(c));
        ++r;
    }
    return pivots;
}

int rank_of(QMat m) { return int(rref(m).size()); }

std::optional<QVec> solve_linear(QMat a, QVec b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    QVec x(cols, 0);
    for (size_t p = 0; p < pivots.size(); ++p) {
        if (pivots[p] == int(cols)) return std::nullopt;  // inconsistent
        x[pivots[p]] = a[p][cols];
    }
    return x;
}

QMat nullspace(const QMat& a) {
    if (a.empty()) return {};
    QMat m = a;
    std::vector<int> pivots = rref(m);
    size_t cols = a[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    QMat basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        QVec v(cols, 0);
        v[fc] = 1;
        for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -m[p][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// elementary Smith reduction; matrices here are tiny
void smith_reduce(ZMat& m, ZMat* rowT, ZMat* colT) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(m[i], m[j]);
        if (rowT) std::swap((*rowT)[i], (*rowT)[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (auto& row : m) std::swap(row[i], row[j]);
        if (colT)
            for (auto& row : *colT) std::swap(row[i], row[j]);
    };
    auto add_row = [&](size_t dst, size_t src, const Int& k) {
        for (size_t j = 0; j < cols; ++j) m[dst][j] += k * m[src][j];
        if (rowT)
            for (size_t j = 0; j < (*rowT)[dst].size(); ++j) (*rowT)[dst][j] += k * (*rowT)[src][j];
    };
    auto add_col = [&](size_t dst, size_t src, const Int& k) {
        for (auto& row : m) row[dst] += k * row[src];
        if (colT)
            for (auto& row : *colT) row[dst] += k * row[src];
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows && !found; ++i)
            for (size_t j = t; j < cols && !found; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    Int q = floor_div(m[i][t], m[t][t]);
                    add_row(i, t, -q);
                    if (m[i][t] != 0) {
                        swap_rows(t, i);
                        clean = false;
                    }
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    Int q = floor_div(m[t][j], m[t][t]);
                    add_col(j, t, -q);
                    if (m[t][j] != 0) {
                        swap_cols(t, j);
                        clean = false;
                    }
                }
        }
        ++t;
    }
    // fix divisibility chain
    for (size_t i = 0; i + 1 < t; ++i)
        for (size_t j = i + 1; j < t; ++j)
            if (m[j][j] % m[i][i] != 0) {
                add_col(i, j, 1);
                // re-run the cleaning on the 2x2 block the lazy way
                smith_reduce(m, rowT, colT);
                return;
            }
    for (size_t i = 0; i < t; ++i)
        if (m[i][i] < 0) {
            for (size_t j = 0; j < cols; ++j) m[i][j] = -m[i][j];
            if (rowT)
                for (auto& x : (*rowT)[i]) x = -x;
        }
}

}  // namespace

ZVec smith_normal_form(ZMat m) {
    smith_reduce(m, nullptr, nullptr);
    ZVec d;
    for (size_t i = 0; i < m.size() && i < (m.empty() ? 0 : m[0].size()); ++i)
        if (m[i][i] != 0) d.push_back(m[i][i]);
    return d;
}

ZMat row_saturation(const ZMat& m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    // column transform W with M = U S W; the first rank rows of W span the
    // saturation.  Track W by reducing and applying the same column ops to
    // the identity, then invert: easier to recompute from the rational span.
    QMat q(m.size(), QVec(cols));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < cols; ++j) q[i][j] = Rat(m[i][j]);
    std::vector<int> pivots = rref(q);
    size_t k = pivots.size();
    // x lies in the rational row span iff x_j = sum_p x_{pivot_p} q[p][j]
    // for every non-pivot column j; the integer solutions of those
    // equations form the saturation
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    // equations: for each non-pivot column j:  x_j - sum_p q[p][j] x_{pivot_p} = 0
    ZMat eqs;
    for (size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        QVec eq(cols, 0);
        eq[j] = 1;
        for (size_t p = 0; p < k; ++p) eq[pivots[p]] -= q[p][j];
        // clear denominators
        Int lcm = 1;
        for (const Rat& c : eq) lcm = lcm / boost::multiprecision::gcd(lcm, den(c)) * den(c);
        ZVec z(cols);
        for (size_t c2 = 0; c2 < cols; ++c2) z[c2] = num(eq[c2] * Rat(lcm));
        eqs.push_back(std::move(z));
    }
    if (eqs.empty()) {
        // full space
        ZMat id(cols, ZVec(cols, 0));
        for (size_t i = 0; i < cols; ++i) id[i][i] = 1;
        return id;
    }
    return integer_kernel(eqs);
}

ZMat integer_kernel(const ZMat& a) {
    if (a.empty()) return {};
    size_t rows = a.size(), cols = a[0].size();
    // column-style HNF: reduce [A; I] columns so that zero columns of the
    // reduced A part give kernel vectors in the I part
    ZMat work(rows + cols, ZVec(cols, 0));
    for (size_t i = 0; i < rows; ++i) work[i] = a[i];
    for (size_t j = 0; j < cols; ++j) work[rows + j][j] = 1;

    size_t done_cols = 0;
    for (size_t r = 0; r < rows; ++r) {
        // eliminate row r among columns done_cols..cols-1 by gcd column ops
        while (true) {
            size_t nz = cols;
            for (size_t j = done_cols; j < cols; ++j)
                if (work[r][j] != 0 && (nz == cols || boost::multiprecision::abs(work[r][j]) <
                                                          boost::multiprecision::abs(work[r][nz])))
                    nz = j;
            if (nz == cols) break;
            // swap to front and reduce others
            for (size_t i = 0; i < rows + cols; ++i) std::swap(work[i][done_cols], work[i][nz]);
            bool all_zero = true;
            for (size_t j = done_cols + 1; j < cols; ++j) {
                if (work[r][j] == 0) continue;
                Int q = work[r][j] / work[r][done_cols];
                for (size_t i = 0; i < rows + cols; ++i) work[i][j] -= q * work[i][done_cols];
                if (work[r][j] != 0) all_zero = false;
            }
            if (all_zero) {
                ++done_cols;
                break;
            }
        }
        if (done_cols >= cols) break;
    }
    ZMat kernel;
    for (size_t j = done_cols; j < cols; ++j) {
        bool zero = true;
        for (size_t r = 0; r < rows; ++r)
            if (work[r][j] != 0) zero = false;
        if (!zero) continue;
        ZVec v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = work[rows + i][j];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

Int abs_det(ZMat m) {
    size_t n = m.size();
    // fraction-free Gaussian elimination (Bareiss)
    Int denom = 1, sign = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                if (k > 0) m[i][j] /= denom;
            }
        denom = m[k][k];
    }
    Int d = m.empty() ? Int(1) : m[n - 1][n - 1];
    return d < 0 ? Int(-d) : d;
}

}  // namespace twaf
