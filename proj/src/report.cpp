#include "smx/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smx/errors.hpp"

namespace smx {

namespace {
constexpr const char* kSchemaLine = "# smx-report v1";
}

void ReportRecord::set(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
}

void ReportRecord::set(const std::string& key, const char* value) {
    fields.emplace_back(key, std::string(value));
}

void ReportRecord::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    fields.emplace_back(key, std::string(buf));
}

void ReportRecord::set(const std::string& key, std::int64_t value) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRId64, value);
    fields.emplace_back(key, std::string(buf));
}

std::optional<std::string> ReportRecord::get(const std::string& key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    return std::nullopt;
}

double ReportRecord::get_double(const std::string& key) const {
    const auto v = get(key);
    if (!v) throw Error(Errc::parse_error, "report: missing key " + key);
    return std::stod(*v);
}

std::int64_t ReportRecord::get_int(const std::string& key) const {
    const auto v = get(key);
    if (!v) throw Error(Errc::parse_error, "report: missing key " + key);
    return std::stoll(*v);
}

void write_reports(const std::vector<ReportRecord>& records, std::ostream& out) {
    out << kSchemaLine << '\n';
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (r > 0) out << '\n';
        for (const auto& [k, v] : records[r].fields) out << k << '=' << v << '\n';
    }
}

void write_reports_file(const std::vector<ReportRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
    write_reports(records, out);
}

std::vector<ReportRecord> parse_reports(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSchemaLine) {
        throw Error(Errc::parse_error, "report: missing schema header");
    }
    std::vector<ReportRecord> records;
    ReportRecord current;
    auto flush = [&]() {
        if (!current.fields.empty()) {
            records.push_back(std::move(current));
            current = ReportRecord{};
        }
    };
    std::int64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::parse_error, "report: line " + std::to_string(lineno) +
                                               " is not key=value");
        }
        current.fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    flush();
    return records;
}

std::vector<ReportRecord> parse_reports_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    return parse_reports(in);
}

}  // namespace smx
