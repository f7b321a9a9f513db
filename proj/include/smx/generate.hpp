#pragma once

#include <cstdint>

#include "smx/csc.hpp"

namespace smx {

enum class MatrixKind { balanced, unbalanced };

/// Parameters for random SPD generation: size, target density, target
/// condition number, fill structure, seed. Feasibility requires d*n >= 1
/// (at least the diagonal is stored).
struct GeneratorSpec {
    index_t n = 0;
    double d = 0.0;
    double kappa = 1.0;
    MatrixKind kind = MatrixKind::balanced;
    std::uint64_t seed = 0;
};

/// Random sparse symmetric positive definite matrix.
///
/// The pattern is a random symmetric graph with per-column fill quotas:
/// uniform quotas for `balanced` (per-column nnz coefficient of variation
/// stays well under 0.2), quartile fill multipliers for `unbalanced`
/// (contiguous blocks whose fill differs by >= 2x). Values are A = I + s*M
/// with M random symmetric and s chosen from estimates of M's extreme
/// eigenvalues so that kappa(A) lands near the target (within a factor of 2
/// as measured by estimate_condition). Deterministic for a fixed spec.
CscMatrix generate_sparse_spd(const GeneratorSpec& spec);

}  // namespace smx
