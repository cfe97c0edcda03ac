#include "presentation.hpp"

#include "error.hpp"
#include "text.hpp"

#include <algorithm>
#include <sstream>

namespace hrck::presentation {

Triple Triple::canonical() const {
  Triple best = *this;
  Triple r = rotated();
  for (int i = 0; i < 2; ++i, r = r.rotated()) best = std::min(best, r);
  return best;
}

TrianglePresentation::TrianglePresentation(int q, std::vector<std::string> generators,
                                           std::span<const Triple> relators)
    : q_(q), generators_(std::move(generators)) {
  const std::size_t n = generators_.size();
  for (const Triple& t : relators) {
    if (t.x >= n || t.y >= n || t.z >= n) throw DomainError("relator uses an undeclared generator");
    Triple r = t;
    for (int i = 0; i < 3; ++i, r = r.rotated()) triples_.push_back(r);
  }
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());

  lambda_.assign(n, {});
  completions_.assign(n * n, {});
  for (const Triple& t : triples_) {
    auto& ys = lambda_[t.x];
    if (ys.empty() || ys.back() != t.y) ys.push_back(t.y);
    completions_[t.x * n + t.y].push_back(t.z);
  }
}

std::optional<Index> TrianglePresentation::find_generator(std::string_view name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<Index>(it - generators_.begin());
}

bool TrianglePresentation::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::vector<Triple> TrianglePresentation::relators() const {
  std::vector<Triple> out;
  for (const Triple& t : triples_) out.push_back(t.canonical());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::span<const Index> TrianglePresentation::completions(Index x, Index y) const {
  return completions_.at(x * generators_.size() + y);
}

std::optional<Index> TrianglePresentation::completion(Index x, Index y) const {
  auto zs = completions(x, y);
  if (zs.size() != 1) return std::nullopt;
  return zs.front();
}

TrianglePresentation parse_presentation(std::string_view content) {
  std::optional<int> q;
  std::vector<std::string> generators;
  std::size_t generators_line = 0;
  std::vector<Triple> relators;

  for (const auto& line : text::tokenize(content)) {
    const auto& t = line.tokens;
    if (t[0] == "q") {
      if (q) throw ParseError(line.number, "duplicate `q` record");
      if (t.size() != 2) throw ParseError(line.number, "expected `q <order>`");
      q = static_cast<int>(text::parse_count(t[1], line.number));
    } else if (t[0] == "generators") {
      if (generators_line) throw ParseError(line.number, "duplicate `generators` record");
      generators.assign(t.begin() + 1, t.end());
      generators_line = line.number;
      auto sorted = generators;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError(line.number, "generator names must be distinct");
    } else if (t[0] == "relator") {
      if (!generators_line) throw ParseError(line.number, "`relator` before `generators`");
      if (t.size() != 4)
        throw ParseError(line.number,
                         "relator has length " + std::to_string(t.size() - 1) + ", expected 3");
      std::array<Index, 3> ids{};
      for (int k = 0; k < 3; ++k) {
        auto it = std::find(generators.begin(), generators.end(), t[k + 1]);
        if (it == generators.end())
          throw ParseError(line.number, "undeclared generator '" + t[k + 1] + "'");
        ids[k] = static_cast<Index>(it - generators.begin());
      }
      relators.push_back({ids[0], ids[1], ids[2]});
    } else {
      throw ParseError(line.number, "unknown record '" + t[0] + "'");
    }
  }
  if (!q) throw ParseError(1, "missing `q <order>` record");
  if (!generators_line) throw ParseError(1, "missing `generators` record");
  return TrianglePresentation(*q, std::move(generators), relators);
}

std::string serialize_presentation(const TrianglePresentation& p) {
  std::ostringstream out;
  out << "format " << text::kFormatVersion << "\n";
  out << "q " << p.q() << "\n";
  out << "generators";
  for (const auto& g : p.generators()) out << ' ' << g;
  out << "\n";
  for (const Triple& r : p.relators())
    out << "relator " << p.generator(r.x) << ' ' << p.generator(r.y) << ' ' << p.generator(r.z)
        << "\n";
  return out.str();
}

std::string format_triple(const TrianglePresentation& p, const Triple& t) {
  return "(" + p.generator(t.x) + "," + p.generator(t.y) + "," + p.generator(t.z) + ")";
}

plane::ValidationReport validate_triangle_presentation(const TrianglePresentation& p) {
  using plane::ValidationReport;
  const long q = p.q();
  const std::size_t n = p.generator_count();
  if (q < 2) return ValidationReport::fail("order", "q=" + std::to_string(q));
  if (n != static_cast<std::size_t>(q * q + q + 1))
    return ValidationReport::fail("generator count", std::to_string(n) + " generators, expected " +
                                                         std::to_string(q * q + q + 1));

  for (const Triple& t : p.triples())
    if (!p.contains(t.rotated()))
      return ValidationReport::fail("cyclic closure", format_triple(p, t));

  for (Index x = 0; x < n; ++x) {
    for (Index y : p.lambda_derived(x)) {
      auto zs = p.completions(x, y);
      if (zs.size() != 1)
        return ValidationReport::fail(
            "completion uniqueness",
            format_triple(p, {x, y, zs[0]}) + " and " + format_triple(p, {x, y, zs[1]}));
    }
    const auto partners = p.lambda_derived(x).size();
    if (partners != static_cast<std::size_t>(q + 1))
      return ValidationReport::fail("completion",
                                    p.generator(x) + " has " + std::to_string(partners) +
                                        " partners, expected " + std::to_string(q + 1));
  }

  const std::size_t expected = static_cast<std::size_t>((q + 1) * (q * q + q + 1));
  if (p.triples().size() != expected)
    return ValidationReport::fail("triple count", std::to_string(p.triples().size()) +
                                                      " triples, expected " +
                                                      std::to_string(expected));

  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (p.lambda_derived(a) == p.lambda_derived(b))
        return ValidationReport::fail("lambda not injective",
                                      p.generator(a) + "," + p.generator(b));

  auto corr = derived_correspondence(p);
  if (auto r = plane::validate_plane(corr.plane); !r.ok)
    return ValidationReport::fail("derived plane: " + r.axiom, r.witness);
  return ValidationReport::pass();
}

plane::PointLineCorrespondence derived_correspondence(const TrianglePresentation& p) {
  const std::size_t n = p.generator_count();
  std::vector<std::vector<Index>> lines(n);
  std::vector<Index> lambda(n);
  for (Index x = 0; x < n; ++x) {
    lines[x] = p.lambda_derived(x);
    lambda[x] = x;
  }
  return {plane::ProjectivePlane(p.q(), n, std::move(lines)), std::move(lambda)};
}

namespace {

class Searcher {
public:
  Searcher(const plane::PointLineCorrespondence& corr, const SearchOptions& opts)
      : corr_(corr), opts_(opts), n_(corr.plane.point_count()), assigned_(n_ * n_, kFree),
        started_(std::chrono::steady_clock::now()) {
    for (Index x = 0; x < n_; ++x)
      for (Index y : line_of(x)) pairs_.push_back({x, y});
    for (Index i = 0; i < n_; ++i) names_.push_back("x" + std::to_string(i));
  }

  SearchResult run() {
    if (opts_.limit > 0) descend(0);
    result_.nodes = nodes_;
    return std::move(result_);
  }

private:
  static constexpr long kFree = -1;

  const std::vector<Index>& line_of(Index x) const {
    return corr_.plane.line(corr_.lambda[x]);
  }
  bool on_line(Index point, Index x) const { return corr_.plane.incident(point, corr_.lambda[x]); }

  bool stop() {
    if (result_.presentations.size() >= opts_.limit) return true;
    if (result_.partial) return true;
    if (nodes_ >= opts_.max_nodes) {
      result_.partial = true;
      return true;
    }
    if (opts_.timeout.count() > 0 && (nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - started_ > opts_.timeout) {
      result_.partial = true;
      return true;
    }
    return false;
  }

  bool try_set(Index a, Index b, Index c) {
    long& slot = assigned_[a * n_ + b];
    if (slot == kFree) {
      slot = c;
      trail_.push_back(a * n_ + b);
      return true;
    }
    return slot == static_cast<long>(c);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      assigned_[trail_.back()] = kFree;
      trail_.pop_back();
    }
  }

  void descend(std::size_t k) {
    ++nodes_;
    if (stop()) return;
    while (k < pairs_.size() && assigned_[pairs_[k].first * n_ + pairs_[k].second] != kFree) ++k;
    if (k == pairs_.size()) {
      emit();
      return;
    }
    const auto [x, y] = pairs_[k];
    for (Index z : line_of(y)) {
      if (!on_line(x, z)) continue;
      const std::size_t mark = trail_.size();
      if (try_set(x, y, z) && try_set(y, z, x) && try_set(z, x, y)) descend(k + 1);
      undo(mark);
      if (stop()) return;
    }
  }

  void emit() {
    std::vector<Triple> triples;
    for (auto [x, y] : pairs_) triples.push_back({x, y, static_cast<Index>(assigned_[x * n_ + y])});
    TrianglePresentation p(corr_.plane.order(), names_, triples);
    if (!validate_triangle_presentation(p).ok)
      throw ConsistencyError("search produced a presentation that fails validation");
    result_.presentations.push_back(std::move(p));
  }

  const plane::PointLineCorrespondence& corr_;
  const SearchOptions& opts_;
  std::size_t n_;
  std::vector<long> assigned_;
  std::vector<std::size_t> trail_;
  std::vector<std::pair<Index, Index>> pairs_;
  std::vector<std::string> names_;
  std::chrono::steady_clock::time_point started_;
  std::uint64_t nodes_ = 0;
  SearchResult result_;
};

}  // namespace

SearchResult search_presentations(const plane::PointLineCorrespondence& corr,
                                  const SearchOptions& options) {
  if (auto r = plane::validate_correspondence(corr); !r.ok)
    throw DomainError("correspondence is invalid: " + r.axiom + " (" + r.witness + ")");
  return Searcher(corr, options).run();
}

}  // namespace hrck::presentation
