#include "dp1/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dp1 {

namespace {

// k=v;k=v with keys already sorted by the map
std::string flatten(const std::map<std::string, std::string>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ';';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

std::map<std::string, std::string> unflatten(const std::string& s) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t semi = s.find(';', pos);
        if (semi == std::string::npos) semi = s.size();
        const std::string item = s.substr(pos, semi - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed key=value field: " + item);
        kv.emplace(item.substr(0, eq), item.substr(eq + 1));
        pos = semi + 1;
    }
    return kv;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// one CSV line -> fields, RFC-4180 quoting
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

constexpr const char* kHeader = "command,count,elapsed_ms,parameters,extras";

}  // namespace

ReportFormat parse_format(const std::string& name) {
    if (name == "jsonl") return ReportFormat::jsonl;
    if (name == "csv") return ReportFormat::csv;
    throw std::invalid_argument("unknown report format: " + name + " (expected jsonl or csv)");
}

void write_report(const std::vector<CountRecord>& records, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::jsonl) {
        for (const auto& rec : records) {
            nlohmann::json j;
            j["command"] = rec.command;
            j["count"] = rec.count;
            j["elapsed_ms"] = rec.elapsed_ms;
            j["extras"] = rec.extras;
            j["parameters"] = rec.parameters;
            out << j.dump() << '\n';
        }
        return;
    }
    out << kHeader << '\n';
    for (const auto& rec : records) {
        out << csv_quote(rec.command) << ',' << rec.count << ',' << rec.elapsed_ms << ','
            << csv_quote(flatten(rec.parameters)) << ',' << csv_quote(flatten(rec.extras)) << '\n';
    }
}

std::vector<CountRecord> parse_csv_report(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::invalid_argument("missing or unexpected CSV header");
    std::vector<CountRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) throw std::invalid_argument("CSV row must have 5 fields");
        CountRecord rec;
        rec.command = fields[0];
        rec.count = std::stoll(fields[1]);
        rec.elapsed_ms = std::stoll(fields[2]);
        rec.parameters = unflatten(fields[3]);
        rec.extras = unflatten(fields[4]);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace dp1
