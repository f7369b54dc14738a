#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "delpezzo/types.hpp"

namespace delpezzo::report {

// Counts, signed integers, reals, or text.
using Cell = std::variant<u64, i64, double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row);
};

enum class Format { csv, json };

Format parse_format(const std::string& s);

// Reals are written with 12 significant digits in both formats.
std::string format_double(double v);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

void write_csv(const Table& t, std::ostream& os, bool timestamp);
void write_json(const Table& t, std::ostream& os);

// Writes to the path, or stdout when out is empty or "-".
// Throws Error when the file cannot be written.
void emit_report(const Table& t, Format f, const std::string& out, bool timestamp);

}  // namespace delpezzo::report
