#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "abelian/estimation.hpp"

namespace abelian::io {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

enum class InputFormat { PlainSizes, SizeCountCsv };
std::string_view to_string(InputFormat format) noexcept;

struct ParsedSizes {
    SizeDataset data;
    InputFormat format;
};

/// Accepts either one decimal size per line, or a CSV whose first row is the
/// header `size,count`. Blank lines and lines starting with '#' are skipped.
/// Throws DataError naming the 1-based line number of the first bad row.
ParsedSizes parse_sizes(std::string_view content);

/// UTC timestamp, e.g. 2024-01-31T12:00:00Z.
std::string utc_timestamp();

} // namespace abelian::io
