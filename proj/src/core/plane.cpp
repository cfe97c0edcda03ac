#include "plane.hpp"

#include "error.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace hrck::plane {

ProjectivePlane::ProjectivePlane(int order, std::size_t point_count,
                                 std::vector<std::vector<Index>> lines)
    : order_(order), point_count_(point_count), lines_(std::move(lines)) {
  for (auto& l : lines_) std::sort(l.begin(), l.end());
}

bool ProjectivePlane::incident(Index point, Index line) const {
  const auto& l = lines_.at(line);
  return std::binary_search(l.begin(), l.end(), point);
}

std::optional<Index> ProjectivePlane::find_line(const std::vector<Index>& points) const {
  for (Index i = 0; i < lines_.size(); ++i)
    if (lines_[i] == points) return i;
  return std::nullopt;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::array<int, 3>> normalised_coordinates(int q) {
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        std::array<int, 3> v{a, b, c};
        auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
        if (first != v.end() && *first == 1) pts.push_back(v);
      }
  return pts;  // already lexicographic
}

}  // namespace

ProjectivePlane build_pg2(int q) {
  if (q < 2) throw DomainError("projective plane order must be at least 2, got " + std::to_string(q));
  if (!is_prime(static_cast<std::uint64_t>(q)))
    throw Error(ErrorKind::Unsupported,
                "order " + std::to_string(q) +
                    " is not prime; supply prime-power planes as an incidence table");
  const auto coords = normalised_coordinates(q);
  std::vector<std::vector<Index>> lines(coords.size());
  for (Index l = 0; l < coords.size(); ++l)
    for (Index p = 0; p < coords.size(); ++p) {
      int dot = 0;
      for (int k = 0; k < 3; ++k) dot += coords[l][k] * coords[p][k];
      if (dot % q == 0) lines[l].push_back(p);
    }
  return ProjectivePlane(q, coords.size(), std::move(lines));
}

ValidationReport validate_plane(const ProjectivePlane& plane) {
  const long q = plane.order();
  if (q < 2) return ValidationReport::fail("order", "order " + std::to_string(q));
  const std::size_t n = static_cast<std::size_t>(q * q + q + 1);
  if (plane.point_count() != n)
    return ValidationReport::fail("point count",
                                  std::to_string(plane.point_count()) + " points, expected " +
                                      std::to_string(n));
  if (plane.line_count() != n)
    return ValidationReport::fail("line count",
                                  std::to_string(plane.line_count()) + " lines, expected " +
                                      std::to_string(n));

  std::vector<std::size_t> point_degree(n, 0);
  for (Index l = 0; l < n; ++l) {
    const auto& pts = plane.line(l);
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      return ValidationReport::fail("repeated point on line", "line " + std::to_string(l));
    if (!pts.empty() && pts.back() >= n)
      return ValidationReport::fail("point id out of range", "line " + std::to_string(l));
    if (pts.size() != static_cast<std::size_t>(q + 1))
      return ValidationReport::fail("line with " + std::to_string(pts.size()) + " points",
                                    "line " + std::to_string(l));
    for (Index p : pts) ++point_degree[p];
  }
  for (Index p = 0; p < n; ++p)
    if (point_degree[p] != static_cast<std::size_t>(q + 1))
      return ValidationReport::fail("point on " + std::to_string(point_degree[p]) + " lines",
                                    "point " + std::to_string(p));

  // Two distinct points share exactly one line.
  std::vector<int> pair_count(n * n, 0);
  for (Index l = 0; l < n; ++l) {
    const auto& pts = plane.line(l);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) ++pair_count[pts[i] * n + pts[j]];
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (pair_count[a * n + b] != 1)
        return ValidationReport::fail(
            "points on " + std::to_string(pair_count[a * n + b]) + " common lines",
            "points " + std::to_string(a) + "," + std::to_string(b));

  // Two distinct lines meet in exactly one point.
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      std::vector<Index> common;
      std::set_intersection(plane.line(a).begin(), plane.line(a).end(), plane.line(b).begin(),
                            plane.line(b).end(), std::back_inserter(common));
      if (common.size() != 1)
        return ValidationReport::fail(
            "lines meeting in " + std::to_string(common.size()) + " points",
            "lines " + std::to_string(a) + "," + std::to_string(b));
    }
  return ValidationReport::pass();
}

ValidationReport validate_correspondence(const PointLineCorrespondence& corr) {
  if (auto r = validate_plane(corr.plane); !r.ok) return r;
  const std::size_t n = corr.plane.point_count();
  if (corr.lambda.size() != n)
    return ValidationReport::fail("lambda not total",
                                  std::to_string(corr.lambda.size()) + " of " +
                                      std::to_string(n) + " points mapped");
  std::vector<int> hit(n, -1);
  for (Index p = 0; p < n; ++p) {
    const Index l = corr.lambda[p];
    if (l >= n) return ValidationReport::fail("lambda image out of range", "point " + std::to_string(p));
    if (hit[l] >= 0)
      return ValidationReport::fail("lambda not injective",
                                    "points " + std::to_string(hit[l]) + "," + std::to_string(p) +
                                        " -> line " + std::to_string(l));
    hit[l] = static_cast<int>(p);
  }
  return ValidationReport::pass();
}

namespace {

struct TableRows {
  int q = 0;
  std::size_t header_line = 0;
  std::map<Index, std::vector<Index>> lines;
  std::map<Index, Index> lambda;
};

TableRows read_rows(std::string_view content, bool allow_lambda) {
  TableRows rows;
  for (const auto& line : text::tokenize(content)) {
    const auto& t = line.tokens;
    if (t[0] == "plane") {
      if (rows.header_line) throw ParseError(line.number, "duplicate plane header");
      if (t.size() != 3 || t[1] != "q") throw ParseError(line.number, "expected `plane q <q>`");
      rows.q = static_cast<int>(text::parse_count(t[2], line.number));
      rows.header_line = line.number;
    } else if (t[0] == "line") {
      if (!rows.header_line) throw ParseError(line.number, "`line` before `plane q <q>` header");
      if (t.size() < 2) throw ParseError(line.number, "expected `line <id> <point> ...`");
      const auto id = static_cast<Index>(text::parse_count(t[1], line.number));
      std::vector<Index> pts;
      for (std::size_t i = 2; i < t.size(); ++i)
        pts.push_back(static_cast<Index>(text::parse_count(t[i], line.number)));
      if (!rows.lines.emplace(id, std::move(pts)).second)
        throw ParseError(line.number, "duplicate line id " + std::to_string(id));
    } else if (t[0] == "lambda" && allow_lambda) {
      if (t.size() != 3) throw ParseError(line.number, "expected `lambda <point> <line>`");
      const auto p = static_cast<Index>(text::parse_count(t[1], line.number));
      const auto l = static_cast<Index>(text::parse_count(t[2], line.number));
      if (!rows.lambda.emplace(p, l).second)
        throw ParseError(line.number, "duplicate lambda for point " + std::to_string(p));
    } else {
      throw ParseError(line.number, "unknown record '" + t[0] + "'");
    }
  }
  if (!rows.header_line) throw ParseError(1, "missing `plane q <q>` header");
  return rows;
}

ProjectivePlane plane_from_rows(const TableRows& rows) {
  const std::size_t n = static_cast<std::size_t>(rows.q) * rows.q + rows.q + 1;
  std::vector<std::vector<Index>> lines;
  Index expected = 0;
  for (const auto& [id, pts] : rows.lines) {
    if (id != expected)
      throw ParseError(rows.header_line, "line ids must be consecutive from 0; missing " +
                                             std::to_string(expected));
    lines.push_back(pts);
    ++expected;
  }
  return ProjectivePlane(rows.q, n, std::move(lines));
}

}  // namespace

ProjectivePlane parse_incidence_table(std::string_view content) {
  return plane_from_rows(read_rows(content, false));
}

std::string serialize_incidence_table(const ProjectivePlane& plane) {
  std::ostringstream out;
  out << "format " << text::kFormatVersion << "\n";
  out << "plane q " << plane.order() << "\n";
  for (Index l = 0; l < plane.line_count(); ++l) {
    out << "line " << l;
    for (Index p : plane.line(l)) out << ' ' << p;
    out << "\n";
  }
  return out.str();
}

PointLineCorrespondence parse_correspondence(std::string_view content) {
  const TableRows rows = read_rows(content, true);
  PointLineCorrespondence corr;
  corr.plane = rows.lines.empty() ? build_pg2(rows.q) : plane_from_rows(rows);
  Index expected = 0;
  for (const auto& [p, l] : rows.lambda) {
    if (p != expected)
      throw ParseError(rows.header_line, "lambda must be given for points 0.. in order; missing " +
                                             std::to_string(expected));
    corr.lambda.push_back(l);
    ++expected;
  }
  return corr;
}

std::string serialize_correspondence(const PointLineCorrespondence& corr) {
  std::string out = serialize_incidence_table(corr.plane);
  for (Index p = 0; p < corr.lambda.size(); ++p)
    out += "lambda " + std::to_string(p) + " " + std::to_string(corr.lambda[p]) + "\n";
  return out;
}

}  // namespace hrck::plane
