#pragma once

#include "twaf/rational.hpp"

#include <optional>
#include <vector>

namespace twaf {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

// in-place reduced row echelon form; returns pivot columns
std::vector<int> rref(QMat& m);

int rank_of(QMat m);

// one solution of A x = b, if any
std::optional<QVec> solve_linear(QMat a, QVec b);

// basis of the rational null space of A (as rows)
QMat nullspace(const QMat& a);

// Smith normal form: returns diagonal entries d_1 | d_2 | ... (no trailing
// zeros); optionally accumulates unimodular row/column transforms
ZVec smith_normal_form(ZMat m);

// basis (rows) of the saturation of the row span of M inside Z^n:
// { x in Z^n : k x in rowspan_Z(M) for some k > 0 }
ZMat row_saturation(const ZMat& m);

// basis (rows) of { x in Z^n : A x = 0 }
ZMat integer_kernel(const ZMat& a);

// |det| of a square integer matrix (0 when singular)
Int abs_det(ZMat m);

}  // namespace twaf
