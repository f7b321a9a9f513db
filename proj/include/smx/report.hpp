#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smx {

/// One record of the line-oriented report format: ordered key=value pairs.
/// Doubles are serialized with 17 significant digits so files parse back
/// losslessly.
struct ReportRecord {
    std::vector<std::pair<std::string, std::string>> fields;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }

    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
};

/// Writes `# smx-report v1` followed by records separated by blank lines.
void write_reports(const std::vector<ReportRecord>& records, std::ostream& out);
void write_reports_file(const std::vector<ReportRecord>& records, const std::string& path);

/// Inverse of write_reports; rejects streams without the schema header.
std::vector<ReportRecord> parse_reports(std::istream& in);
std::vector<ReportRecord> parse_reports_file(const std::string& path);

}  // namespace smx
