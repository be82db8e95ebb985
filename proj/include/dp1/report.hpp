// Report rows and their byte-stable serializations: JSON lines with sorted
// keys, and RFC-4180 CSV that parses back to the identical records.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dp1/arith.hpp"

namespace dp1 {

struct CountRecord {
    std::string command;
    std::map<std::string, std::string> parameters;  // resolved configuration
    i64 count = 0;
    std::map<std::string, std::string> extras;
    i64 elapsed_ms = 0;

    bool operator==(const CountRecord&) const = default;
};

enum class ReportFormat { jsonl, csv };

ReportFormat parse_format(const std::string& name);

void write_report(const std::vector<CountRecord>& records, ReportFormat format, std::ostream& out);

// Inverse of the CSV writer; used to verify the round-trip contract.
std::vector<CountRecord> parse_csv_report(std::istream& in);

// Canonical text for floating-point extras (round-trips through parsing).
std::string format_double(double v);

}  // namespace dp1
