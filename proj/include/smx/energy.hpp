#pragma once

#include "smx/csc.hpp"
#include "smx/scheduler.hpp"
#include "smx/submatrix.hpp"

namespace smx {

/// Band-structure energies computed with the exact density/Hamiltonian pair
/// and with the orthogonalization going through the approximate inverse.
struct EnergyReport {
    double e_bs = 0.0;
    double e_bs_sm = 0.0;
    double delta_rel = 0.0;
};

/// tr(P H) accumulated over stored entries only (sum of P[i][j] * H[j][i]).
double band_energy(const CscMatrix& p, const CscMatrix& h);

/// Orthogonalization check: X ~ S^{-1} via the submatrix method (p = 1),
/// H_ortho = H X, E^sm = tr(S P H_ortho), and the relative deviation from
/// tr(P H). Products stay sparse throughout.
EnergyReport band_energy_sm(const CscMatrix& s, const CscMatrix& p, const CscMatrix& h,
                            const SchedulerConfig& sched);

}  // namespace smx
