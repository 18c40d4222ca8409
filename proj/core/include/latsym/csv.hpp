#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace latsym {

using CsvCell = std::variant<std::int64_t, double, std::string>;
using CsvRow = std::vector<CsvCell>;

/// 17 significant digits; parsing the text yields the identical double.
[[nodiscard]] std::string format_double(double value);

/// Header row, data rows, then optional footer lines written verbatim.
/// Fields containing separators, quotes or newlines are quoted.
[[nodiscard]] std::string to_csv(std::span<const std::string> header, std::span<const CsvRow> rows,
                                 std::span<const std::string> footer = {});

/// Throws std::runtime_error on I/O failure.
void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const CsvRow> rows, std::span<const std::string> footer = {});

}  // namespace latsym
