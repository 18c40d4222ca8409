#include "latsym/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace latsym {
namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_cell(const CsvCell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return quote(std::get<std::string>(cell));
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("failed to format a double");
    return std::string(buf, res.ptr);
}

std::string to_csv(std::span<const std::string> header, std::span<const CsvRow> rows,
                   std::span<const std::string> footer) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += quote(header[i]);
    }
    out += '\n';
    for (const CsvRow& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    for (const std::string& line : footer) {
        out += line;
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const CsvRow> rows, std::span<const std::string> footer) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::string text = to_csv(header, rows, footer);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace latsym
