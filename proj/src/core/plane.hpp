#pragma once

#include "binary_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrck::plane {

// A finite projective plane given by its lines, each a sorted list of point
// ids. Points and lines are both indexed 0 .. q^2+q.
class ProjectivePlane {
public:
  ProjectivePlane() = default;
  ProjectivePlane(int order, std::size_t point_count, std::vector<std::vector<Index>> lines);

  int order() const noexcept { return order_; }
  std::size_t point_count() const noexcept { return point_count_; }
  std::size_t line_count() const noexcept { return lines_.size(); }
  const std::vector<Index>& line(Index id) const { return lines_.at(id); }
  const std::vector<std::vector<Index>>& lines() const noexcept { return lines_; }
  bool incident(Index point, Index line) const;

  // Line id whose point set equals `points` (sorted), if any.
  std::optional<Index> find_line(const std::vector<Index>& points) const;

  friend bool operator==(const ProjectivePlane&, const ProjectivePlane&) = default;

private:
  int order_ = 0;
  std::size_t point_count_ = 0;
  std::vector<std::vector<Index>> lines_;
};

struct ValidationReport {
  bool ok = true;
  std::string axiom;    // empty when ok
  std::string witness;  // e.g. "line 3"

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string axiom, std::string witness) {
    return {false, std::move(axiom), std::move(witness)};
  }
};

bool is_prime(std::uint64_t n);

// PG(2, q) over the prime field. Points are normalised homogeneous
// coordinates (first nonzero entry 1) in lexicographic order; line ids use
// the same ordering on dual coordinates.
ProjectivePlane build_pg2(int q);

ValidationReport validate_plane(const ProjectivePlane& plane);

// Bijection from points to lines standing in for x -> x^{-1}.
struct PointLineCorrespondence {
  ProjectivePlane plane;
  std::vector<Index> lambda;
};

ValidationReport validate_correspondence(const PointLineCorrespondence& corr);

// Incidence table: `plane q <q>` then `line <id> <point> ...`.
ProjectivePlane parse_incidence_table(std::string_view content);
std::string serialize_incidence_table(const ProjectivePlane& plane);

// Correspondence file: an incidence table (lines optional; PG(2,q) is used
// when absent) followed by `lambda <point> <line>` rows.
PointLineCorrespondence parse_correspondence(std::string_view content);
std::string serialize_correspondence(const PointLineCorrespondence& corr);

}  // namespace hrck::plane
