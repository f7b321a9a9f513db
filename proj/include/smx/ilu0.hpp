#pragma once

#include <vector>

#include "smx/csc.hpp"

namespace smx {

/// Zero-fill incomplete LU factors. L is unit lower triangular (unit diagonal
/// stored), U upper triangular; both live on A's pattern, so
/// pattern(L) + pattern(U) never exceeds pattern(A).
struct Ilu0Factors {
    CscMatrix l;
    CscMatrix u;
};

/// Standard ILU(0): elimination restricted to pattern(A). Requires a nonzero
/// diagonal; throws ZeroPivot with the offending column when a pivot
/// vanishes.
Ilu0Factors ilu0(const CscMatrix& a);

/// z = U^{-1} (L^{-1} r): the two triangular solves that apply the
/// preconditioner.
void ilu0_apply(const Ilu0Factors& f, const double* r, double* z);

}  // namespace smx
