#pragma once

#include <iosfwd>
#include <string>

#include "smx/csc.hpp"

namespace smx {

/// Parses a Matrix Market `coordinate` stream. Accepts the `real` and
/// `integer` fields with `symmetric` or `general` qualifiers; `%` comment
/// lines are tolerated. Symmetric files store one triangle; the mirror
/// entries are filled in. Indices are converted from 1-based to 0-based.
CscMatrix read_matrix_market(std::istream& in);

/// Writes coordinate format with 17 significant digits so that
/// read(write(M)) round-trips bit-exactly. Matrices with the symmetric flag
/// are written in lower-triangle `symmetric` form, everything else `general`.
void write_matrix_market(const CscMatrix& m, std::ostream& out);

CscMatrix read_matrix_market_file(const std::string& path);
void write_matrix_market_file(const CscMatrix& m, const std::string& path);

}  // namespace smx
