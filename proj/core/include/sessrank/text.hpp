#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sessrank {

using Tokens = std::vector<std::string>;

// Splits on runs of ASCII whitespace. No case folding or segmentation: the
// corpus text arrives pre-segmented.
Tokens tokenize(std::string_view raw);

std::string join(const Tokens& tokens, std::string_view sep = " ");

std::string_view trim(std::string_view s);

// Number of Unicode code points in a UTF-8 string. Invalid lead bytes count as
// one code point each.
std::size_t utf8_length(std::string_view s);

// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Reads a whole file into memory; throws Error(unreadable_source).
std::string read_file(const std::string& path);

// Splits text into lines, accepting both "\n" and "\r\n" terminators.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace sessrank
