#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cfree {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Parses "key = value" lines. Blank lines and lines starting with '#' are
// skipped. Throws ParseError naming the offending line.
std::vector<KeyValue> parse_key_value(std::string_view text);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text, std::size_t line);
std::uint64_t parse_u64(std::string_view text, std::size_t line);
std::int64_t parse_i64(std::string_view text, std::size_t line);

}  // namespace cfree
