#include "system.hpp"

#include "error.hpp"
#include "text.hpp"

#include <algorithm>
#include <sstream>

namespace hrck {

bool DecorationMap::total(std::size_t alphabet_size) const {
  return delta.size() == names.size() &&
         std::all_of(delta.begin(), delta.end(), [&](Index a) { return a < alphabet_size; });
}

std::string serialize_matrix(std::string_view name, const BinaryMatrix& m) {
  std::ostringstream out;
  out << "matrix " << name << ' ' << m.size() << ' ' << m.size() << "\n";
  for (Index r = 0; r < m.size(); ++r)
    for (Index c : m.row(r)) out << r << ' ' << c << " 1\n";
  return out.str();
}

std::string serialize_matrices(const TransitionSystem& system) {
  std::string out = "format " + std::to_string(text::kFormatVersion) + "\n";
  for (std::size_t i = 0; i < system.rank(); ++i)
    out += serialize_matrix(system.rank() == 1 ? "M" : "M" + std::to_string(i + 1),
                            system.matrix(i));
  return out;
}

std::vector<NamedMatrix> parse_matrices(std::string_view content) {
  struct Block {
    std::string name;
    std::size_t n = 0;
    std::size_t line = 0;
    std::vector<std::pair<Index, Index>> entries;
  };
  std::vector<Block> blocks;
  for (const auto& line : text::tokenize(content)) {
    const auto& t = line.tokens;
    if (t[0] == "matrix") {
      if (t.size() != 4) throw ParseError(line.number, "expected `matrix <name> <n> <n>`");
      const auto rows = text::parse_count(t[2], line.number);
      const auto cols = text::parse_count(t[3], line.number);
      if (rows != cols) throw ParseError(line.number, "transition matrices must be square");
      blocks.push_back({t[1], rows, line.number, {}});
      continue;
    }
    if (blocks.empty()) throw ParseError(line.number, "entry before any `matrix` header");
    if (t.size() != 3) throw ParseError(line.number, "expected `<row> <col> 1`");
    const auto r = text::parse_count(t[0], line.number);
    const auto c = text::parse_count(t[1], line.number);
    const auto v = text::parse_count(t[2], line.number);
    Block& b = blocks.back();
    if (v != 1) throw ParseError(line.number, "only entries equal to 1 may be listed");
    if (r >= b.n || c >= b.n) throw ParseError(line.number, "entry outside the matrix");
    b.entries.emplace_back(static_cast<Index>(r), static_cast<Index>(c));
  }
  if (blocks.empty()) throw ParseError(1, "no `matrix` block found");
  std::vector<NamedMatrix> out;
  for (auto& b : blocks) out.push_back({b.name, BinaryMatrix::from_entries(b.n, std::move(b.entries))});
  return out;
}

TransitionSystem system_from_matrices(std::vector<NamedMatrix> blocks) {
  if (blocks.empty() || blocks.size() > 2)
    throw DomainError("expected one or two transition matrices, got " + std::to_string(blocks.size()));
  TransitionSystem s;
  const std::size_t n = blocks.front().matrix.size();
  for (auto& b : blocks) {
    if (b.matrix.size() != n) throw DomainError("transition matrices differ in size");
    s.matrices.push_back(std::move(b.matrix));
  }
  for (std::size_t i = 0; i < n; ++i) s.alphabet.push_back(std::to_string(i));
  return s;
}

}  // namespace hrck
