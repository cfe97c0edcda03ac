#include "tiles.hpp"

#include "error.hpp"
#include "text.hpp"

#include <algorithm>
#include <sstream>

namespace hrck::tiles {

using presentation::TrianglePresentation;

TileAlphabet::TileAlphabet(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {}

std::optional<Index> TileAlphabet::find(Index ll, Index lr, Index ur) const {
  auto key = [](const Tile& t) { return std::tuple(t.ll, t.lr, t.ur); };
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), std::tuple(ll, lr, ur),
                             [&](const Tile& t, const auto& k) { return key(t) < k; });
  if (it == tiles_.end() || key(*it) != std::tuple(ll, lr, ur)) return std::nullopt;
  return static_cast<Index>(it - tiles_.begin());
}

TileAlphabet build_alphabet(const TrianglePresentation& p) {
  if (auto r = presentation::validate_triangle_presentation(p); !r.ok)
    throw Error(ErrorKind::ValidationRequired,
                "presentation must validate before building tiles: " + r.axiom + " (" + r.witness +
                    ")");
  const std::size_t n = p.generator_count();
  // Generators x admitting a triple (x, mid, *): the q+1 candidates for ur.
  std::vector<std::vector<Index>> upper_partners(n);
  for (Index x = 0; x < n; ++x)
    for (Index y : p.lambda_derived(x)) upper_partners[y].push_back(x);

  std::vector<Tile> tiles;
  for (Index ll = 0; ll < n; ++ll)
    for (Index lr : p.lambda_derived(ll)) {
      const Index mid = *p.completion(ll, lr);
      for (Index ur : upper_partners[mid]) {
        if (ur == lr) continue;  // folds the upper chamber onto the lower one
        tiles.push_back({ll, lr, mid, ur, *p.completion(ur, mid)});
      }
    }
  return TileAlphabet(std::move(tiles));
}

std::pair<BinaryMatrix, BinaryMatrix> build_transition_matrices(const TileAlphabet& alphabet) {
  Index gens = 0;
  for (const Tile& t : alphabet) gens = std::max({gens, t.ll + 1, t.lr + 1, t.ur + 1});
  std::vector<std::vector<Index>> by_ll(gens), by_lr(gens);
  for (Index i = 0; i < alphabet.size(); ++i) {
    by_ll[alphabet[i].ll].push_back(i);
    by_lr[alphabet[i].lr].push_back(i);
  }

  std::vector<std::pair<Index, Index>> e1, e2;
  for (Index a = 0; a < alphabet.size(); ++a) {
    const Tile& ta = alphabet[a];
    for (Index b : by_ll[ta.ur])
      if (alphabet[b].lr != ta.mid) e1.emplace_back(b, a);
    for (Index c : by_lr[ta.ul])
      if (alphabet[c].ll != ta.mid) e2.emplace_back(c, a);
  }
  return {BinaryMatrix::from_entries(alphabet.size(), std::move(e1)),
          BinaryMatrix::from_entries(alphabet.size(), std::move(e2))};
}

std::string tile_name(const TrianglePresentation& p, const Tile& t) {
  return "(" + p.generator(t.ll) + "," + p.generator(t.lr) + "," + p.generator(t.mid) + "," +
         p.generator(t.ur) + "," + p.generator(t.ul) + ")";
}

BuildingSystem build_building_system(const TrianglePresentation& p) {
  BuildingSystem b{p, build_alphabet(p), {}};
  auto [m1, m2] = build_transition_matrices(b.tiles);
  const std::size_t q = static_cast<std::size_t>(p.q());
  const std::size_t expected = q * (q + 1) * (q * q + q + 1);
  if (b.tiles.size() != expected)
    throw ConsistencyError("alphabet has " + std::to_string(b.tiles.size()) + " tiles, expected " +
                           std::to_string(expected));
  for (const BinaryMatrix* m : {&m1, &m2})
    for (Index i = 0; i < m->size(); ++i)
      if (m->row_sum(i) != q * q || m->column_sum(i) != q * q)
        throw ConsistencyError("transition matrix line sum differs from q^2 at index " +
                               std::to_string(i));
  const auto left = multiply(m1, m2);
  if (left != multiply(m2, m1)) throw ConsistencyError("M1 and M2 do not commute");
  if (std::any_of(left.begin(), left.end(), [](const CountEntry& e) { return e.count > 1; }))
    throw ConsistencyError("M1*M2 has an entry above 1");

  for (const Tile& t : b.tiles) b.system.alphabet.push_back(tile_name(p, t));
  b.system.matrices = {std::move(m1), std::move(m2)};
  return b;
}

namespace {

Index unique_candidate(std::vector<Index> candidates, const char* what) {
  if (candidates.size() != 1)
    throw ConsistencyError(std::string(what) + ": " + std::to_string(candidates.size()) +
                           " candidate tiles, expected exactly 1");
  return candidates.front();
}

void require_rank2(const TransitionSystem& s) {
  if (s.rank() != 2) throw DomainError("corner completion needs a rank-2 system");
}

}  // namespace

Index corner_complete(Index a, Index b, Index c, const TransitionSystem& system) {
  require_rank2(system);
  const auto& m1 = system.matrix(0);
  const auto& m2 = system.matrix(1);
  if (!m1.at(b, a)) throw DomainError("corner completion needs M1(b,a) = 1");
  if (!m2.at(c, b)) throw DomainError("corner completion needs M2(c,b) = 1");
  // d ranges over successors of a in direction 2 that precede c in direction 1.
  std::vector<Index> out;
  std::set_intersection(m2.column(a).begin(), m2.column(a).end(), m1.row(c).begin(),
                        m1.row(c).end(), std::back_inserter(out));
  return unique_candidate(std::move(out), "corner completion");
}

Index corner_complete_lower(Index a, Index d, Index c, const TransitionSystem& system) {
  require_rank2(system);
  const auto& m1 = system.matrix(0);
  const auto& m2 = system.matrix(1);
  if (!m2.at(d, a)) throw DomainError("corner completion needs M2(d,a) = 1");
  if (!m1.at(c, d)) throw DomainError("corner completion needs M1(c,d) = 1");
  std::vector<Index> out;
  std::set_intersection(m1.column(a).begin(), m1.column(a).end(), m2.row(c).begin(),
                        m2.row(c).end(), std::back_inserter(out));
  return unique_candidate(std::move(out), "corner completion");
}

std::string serialize_tile_table(const BuildingSystem& b) {
  const auto& p = b.presentation;
  std::ostringstream out;
  out << "format " << text::kFormatVersion << "\n";
  for (Index i = 0; i < b.tiles.size(); ++i) {
    const Tile& t = b.tiles[i];
    out << "tile " << i << ' ' << p.generator(t.ll) << ' ' << p.generator(t.lr) << ' '
        << p.generator(t.mid) << ' ' << p.generator(t.ur) << ' ' << p.generator(t.ul) << "\n";
  }
  return out.str();
}

}  // namespace hrck::tiles
