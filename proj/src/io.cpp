#include "abelian/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian::io {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string_view to_string(InputFormat format) noexcept {
    return format == InputFormat::PlainSizes ? "sizes" : "size-count-csv";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_row(std::size_t line, std::string_view why, std::string_view text) {
    std::ostringstream os;
    os << "line " << line << ": " << why << " '" << text << "'";
    throw DataError(os.str());
}

std::int64_t parse_integer(std::string_view text, std::size_t line, std::string_view what) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) bad_row(line, "malformed " + std::string(what), text);
    return value;
}

} // namespace

ParsedSizes parse_sizes(std::string_view content) {
    std::map<std::int64_t, std::int64_t> counts;
    std::optional<InputFormat> format;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const auto next = content.find('\n', pos);
        const auto raw = content.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        pos = next == std::string_view::npos ? content.size() + 1 : next + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (!format) {
            if (line.find(',') != std::string_view::npos) {
                const auto comma = line.find(',');
                if (trim(line.substr(0, comma)) != "size" || trim(line.substr(comma + 1)) != "count") {
                    bad_row(line_no, "expected CSV header size,count, got", line);
                }
                format = InputFormat::SizeCountCsv;
                continue;
            }
            format = InputFormat::PlainSizes;
        }

        if (*format == InputFormat::PlainSizes) {
            const auto size = parse_integer(line, line_no, "size");
            if (size < 1) bad_row(line_no, "size must be >= 1, got", line);
            ++counts[size];
        } else {
            const auto comma = line.find(',');
            if (comma == std::string_view::npos) bad_row(line_no, "expected size,count row, got", line);
            const auto size = parse_integer(trim(line.substr(0, comma)), line_no, "size");
            const auto count = parse_integer(trim(line.substr(comma + 1)), line_no, "count");
            if (size < 1) bad_row(line_no, "size must be >= 1, got", line);
            if (count < 0) bad_row(line_no, "count must be >= 0, got", line);
            counts[size] += count;
        }
    }

    if (!format) throw DataError("input contains no observations");
    std::int64_t total = 0;
    for (const auto& [size, count] : counts) total += count;
    if (total == 0) throw DataError("input contains no observations");
    return {SizeDataset::from_counts(counts), *format};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace abelian::io
