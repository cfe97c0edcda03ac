#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hrck::text {

inline constexpr int kFormatVersion = 1;

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<std::string> tokens;
};

// Splits text into whitespace-separated tokens per line. Blank lines and
// '#' comments are dropped. A leading `format <n>` line is checked and
// consumed; files without one are read as format 1.
std::vector<Line> tokenize(std::string_view content);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Parses a non-negative decimal integer token, raising ParseError on junk.
std::uint64_t parse_count(const std::string& token, std::size_t line);

}  // namespace hrck::text
