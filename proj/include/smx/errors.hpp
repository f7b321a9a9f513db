#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace smx {

/// Failure categories surfaced by the library. The CLI maps these to exit codes.
enum class Errc {
    index_out_of_range,
    duplicate_entry,
    unsupported_format,
    parse_error,
    infeasible_spec,
    no_convergence,
    not_symmetric,
    breakdown_on_indefinite,
    singular_matrix,
    not_positive_definite,
    diverged,
    diagonal_zero,
    length_mismatch,
    size_mismatch,
    breakdown,
    zero_pivot,
    network_error,
    io_error,
};

const char* errc_name(Errc c);

/// Exception carrying a failure category plus optional context: the column
/// (or pivot) index a kernel failed on, or the full list of offending columns.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what, std::int64_t index = -1)
        : std::runtime_error(what), code(code), index(index) {}

    Error(Errc code, const std::string& what, std::vector<std::int64_t> columns)
        : std::runtime_error(what), code(code), columns(std::move(columns)) {}

    Errc code;
    std::int64_t index = -1;
    std::vector<std::int64_t> columns;
};

}  // namespace smx
