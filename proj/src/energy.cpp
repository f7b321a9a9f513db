#include "smx/energy.hpp"

#include <cmath>

#include "smx/errors.hpp"

namespace smx {

double band_energy(const CscMatrix& p, const CscMatrix& h) {
    if (p.n != h.n) throw Error(Errc::size_mismatch, "band_energy: size mismatch");
    // tr(PH) = sum_{i,j} P[i][j] H[j][i]; column j of H^T holds row j of H,
    // so each term is a two-pointer merge over stored entries
    const CscMatrix ht = transpose(h);
    double trace = 0.0;
    for (index_t j = 0; j < p.n; ++j) {
        index_t kp = p.col_ptr[j];
        index_t kh = ht.col_ptr[j];
        const index_t ep = p.col_ptr[j + 1];
        const index_t eh = ht.col_ptr[j + 1];
        while (kp < ep && kh < eh) {
            const index_t ip = p.row_ind[static_cast<std::size_t>(kp)];
            const index_t ih = ht.row_ind[static_cast<std::size_t>(kh)];
            if (ip < ih) {
                ++kp;
            } else if (ip > ih) {
                ++kh;
            } else {
                trace += p.val[static_cast<std::size_t>(kp)] * ht.val[static_cast<std::size_t>(kh)];
                ++kp;
                ++kh;
            }
        }
    }
    return trace;
}

EnergyReport band_energy_sm(const CscMatrix& s, const CscMatrix& p, const CscMatrix& h,
                            const SchedulerConfig& sched) {
    if (s.n != p.n || s.n != h.n) throw Error(Errc::size_mismatch, "band_energy_sm: size mismatch");

    EnergyReport report;
    report.e_bs = band_energy(p, h);

    // H_ortho = H S^{-1} with the approximate inverse, then
    // E^sm = tr(S (P H_ortho)) evaluated right to left with sparse products
    const CscMatrix x = submatrix_inverse_proot(s, MethodConfig::for_p(1), sched).first;
    const CscMatrix h_ortho = multiply(h, x);
    const CscMatrix ph = multiply(p, h_ortho);
    report.e_bs_sm = band_energy(s, ph);

    report.delta_rel =
        report.e_bs != 0.0 ? std::fabs((report.e_bs - report.e_bs_sm) / report.e_bs) : 0.0;
    return report;
}

}  // namespace smx
