#include "delpezzo/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "delpezzo/error.hpp"

namespace delpezzo::report {

namespace {

constexpr u64 kJsonExactLimit = u64{1} << 53;

std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(u64 v) const { return std::to_string(v); }
        std::string operator()(i64 v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(V{}, c);
}

std::string timestamp_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw InternalError("report: row width differs from header");
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw DomainError("unknown format: " + s);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(const Table& t, std::ostream& os, bool timestamp) {
    if (timestamp) os << "# generated " << timestamp_utc() << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& key = t.header[i];
            const Cell& c = row[i];
            if (auto u = std::get_if<u64>(&c)) {
                if (*u > kJsonExactLimit) obj[key] = std::to_string(*u);
                else obj[key] = *u;
            } else if (auto s = std::get_if<i64>(&c)) {
                u64 mag = *s < 0 ? static_cast<u64>(-(*s + 1)) + 1 : static_cast<u64>(*s);
                if (mag > kJsonExactLimit) obj[key] = std::to_string(*s);
                else obj[key] = *s;
            } else if (auto d = std::get_if<double>(&c)) {
                if (std::isfinite(*d)) obj[key] = std::strtod(format_double(*d).c_str(), nullptr);
                else obj[key] = format_double(*d);
            } else {
                obj[key] = std::get<std::string>(c);
            }
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void emit_report(const Table& t, Format f, const std::string& out, bool timestamp) {
    std::ostringstream buf;
    if (f == Format::csv) write_csv(t, buf, timestamp);
    else write_json(t, buf);
    if (out.empty() || out == "-") {
        std::cout << buf.str();
        std::cout.flush();
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open output file: " + out);
    file << buf.str();
    file.close();
    if (!file) throw Error("failed writing output file: " + out);
}

}  // namespace delpezzo::report
