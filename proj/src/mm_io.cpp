#include "smx/mm_io.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smx/errors.hpp"

namespace smx {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void parse_fail(std::int64_t line, const std::string& msg) {
    throw Error(Errc::parse_error, "matrix market, line " + std::to_string(line) + ": " + msg,
                line);
}

}  // namespace

CscMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::int64_t lineno = 0;

    if (!std::getline(in, line)) parse_fail(1, "empty stream");
    ++lineno;
    std::istringstream header(line);
    std::string banner, object, format, field, qualifier;
    header >> banner >> object >> format >> field >> qualifier;
    if (banner != "%%MatrixMarket") parse_fail(lineno, "missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    qualifier = lower(qualifier);
    if (object != "matrix" || format != "coordinate") {
        throw Error(Errc::unsupported_format, "only `matrix coordinate` streams are supported");
    }
    if (field != "real" && field != "integer") {
        throw Error(Errc::unsupported_format, "unsupported field `" + field + "`");
    }
    if (qualifier != "symmetric" && qualifier != "general") {
        throw Error(Errc::unsupported_format, "unsupported qualifier `" + qualifier + "`");
    }
    const bool mirrored = qualifier == "symmetric";

    // size line, after comments
    std::int64_t rows = -1, cols = -1, entries = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> entries)) parse_fail(lineno, "bad size line");
        break;
    }
    if (rows < 0) parse_fail(lineno, "missing size line");
    if (rows != cols) {
        throw Error(Errc::unsupported_format,
                    "matrix is not square (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
    }

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(mirrored ? 2 * entries : entries));
    std::int64_t seen = 0;
    while (seen < entries) {
        if (!std::getline(in, line)) parse_fail(lineno + 1, "unexpected end of stream");
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::int64_t i = 0, j = 0;
        double v = 0.0;
        std::istringstream entry(line);
        if (!(entry >> i >> j >> v)) parse_fail(lineno, "bad entry");
        if (i < 1 || i > rows || j < 1 || j > cols) parse_fail(lineno, "index out of range");
        triplets.push_back({i - 1, j - 1, v});
        if (mirrored && i != j) triplets.push_back({j - 1, i - 1, v});
        ++seen;
    }

    CscMatrix m = csc_from_triplets(triplets, rows);
    if (mirrored) m.symmetric = true;  // mirroring makes it symmetric by construction
    return m;
}

void write_matrix_market(const CscMatrix& m, std::ostream& out) {
    const bool lower_only = m.symmetric;
    std::int64_t entries = 0;
    if (lower_only) {
        for (index_t j = 0; j < m.n; ++j) {
            for (index_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) {
                if (m.row_ind[static_cast<std::size_t>(k)] >= j) ++entries;
            }
        }
    } else {
        entries = m.nnz();
    }

    out << "%%MatrixMarket matrix coordinate real "
        << (lower_only ? "symmetric" : "general") << '\n';
    out << m.n << ' ' << m.n << ' ' << entries << '\n';

    char buf[96];
    for (index_t j = 0; j < m.n; ++j) {
        for (index_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) {
            const index_t i = m.row_ind[static_cast<std::size_t>(k)];
            if (lower_only && i < j) continue;
            std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64 " %.17g", i + 1, j + 1,
                          m.val[static_cast<std::size_t>(k)]);
            out << buf << '\n';
        }
    }
}

CscMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    return read_matrix_market(in);
}

void write_matrix_market_file(const CscMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
    write_matrix_market(m, out);
    out.flush();
    if (!out) throw Error(Errc::io_error, "write to " + path + " failed");
}

}  // namespace smx
