#include "smx/errors.hpp"

namespace smx {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::duplicate_entry: return "DuplicateEntry";
        case Errc::unsupported_format: return "UnsupportedFormat";
        case Errc::parse_error: return "ParseError";
        case Errc::infeasible_spec: return "InfeasibleSpec";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::not_symmetric: return "NotSymmetric";
        case Errc::breakdown_on_indefinite: return "BreakdownOnIndefinite";
        case Errc::singular_matrix: return "SingularMatrix";
        case Errc::not_positive_definite: return "NotPositiveDefinite";
        case Errc::diverged: return "Diverged";
        case Errc::diagonal_zero: return "DiagonalZero";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::size_mismatch: return "SizeMismatch";
        case Errc::breakdown: return "Breakdown";
        case Errc::zero_pivot: return "ZeroPivot";
        case Errc::network_error: return "NetworkError";
        case Errc::io_error: return "IoError";
    }
    return "Unknown";
}

}  // namespace smx
