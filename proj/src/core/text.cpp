#include "text.hpp"

#include "error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hrck::text {

std::vector<Line> tokenize(std::string_view content) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view raw = content.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line{number, {}};
    std::istringstream in{std::string(raw)};
    for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (eol == content.size()) break;
  }

  if (!out.empty() && out.front().tokens.front() == "format") {
    const Line& head = out.front();
    if (head.tokens.size() != 2 || parse_count(head.tokens[1], head.number) != kFormatVersion)
      throw ParseError(head.number, "unsupported format header (expected `format 1`)");
    out.erase(out.begin());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

std::uint64_t parse_count(const std::string& token, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  return value;
}

}  // namespace hrck::text
