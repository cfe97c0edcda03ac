#include "words.hpp"

#include "error.hpp"
#include "tiles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace hrck::words {

Shape::Shape(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_)
    if (d < 0) throw DomainError("shape components must be non-negative");
}

std::size_t Shape::cell_count() const {
  std::size_t n = 1;
  for (auto d : dims_) n *= static_cast<std::size_t>(d + 1);
  return n;
}

Shape operator+(const Shape& a, const Shape& b) {
  if (a.rank() != b.rank()) throw DomainError("shape rank mismatch");
  std::vector<std::int64_t> d(a.rank());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] + b[i];
  return Shape(std::move(d));
}

std::string to_string(const Cell& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

std::string to_string(const Shape& s) { return to_string(s.dims()); }

Word::Word(Shape shape, std::vector<Index> letters)
    : shape_(std::move(shape)), letters_(std::move(letters)) {
  if (letters_.size() != shape_.cell_count())
    throw DomainError("word has " + std::to_string(letters_.size()) + " letters for shape " +
                      to_string(shape_));
}

Word Word::letter(Index a, std::size_t rank) {
  return Word(Shape(std::vector<std::int64_t>(rank, 0)), {a});
}

std::size_t Word::offset(const Cell& l) const {
  if (l.size() != shape_.rank()) throw DomainError("cell rank mismatch");
  std::size_t off = 0;
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k] < 0 || l[k] > shape_[k])
      throw DomainError("cell " + to_string(l) + " outside shape " + to_string(shape_));
    off = off * static_cast<std::size_t>(shape_[k] + 1) + static_cast<std::size_t>(l[k]);
  }
  return off;
}

Cell Word::cell(std::size_t offset) const {
  Cell l(shape_.rank());
  for (std::size_t k = shape_.rank(); k-- > 0;) {
    const auto extent = static_cast<std::size_t>(shape_[k] + 1);
    l[k] = static_cast<std::int64_t>(offset % extent);
    offset /= extent;
  }
  return l;
}

namespace {

void require_rank(const Shape& s, const TransitionSystem& system) {
  if (s.rank() != system.rank())
    throw DomainError("word rank " + std::to_string(s.rank()) + " does not match system rank " +
                      std::to_string(system.rank()));
}

}  // namespace

WordCheck validate_word(const Word& w, const TransitionSystem& system) {
  require_rank(w.shape(), system);
  for (Index a : w.letters())
    if (a >= system.size()) throw DomainError("letter index " + std::to_string(a) + " out of range");
  for (std::size_t off = 0; off < w.letters().size(); ++off) {
    Cell l = w.cell(off);
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (l[j] == w.shape()[j]) continue;
      Cell next = l;
      ++next[j];
      if (!system.matrix(j).at(w.at(next), w.at(l))) return {false, l, j};
    }
  }
  return {true, {}, 0};
}

Word product(const Word& u, const Word& v, const TransitionSystem& system) {
  require_rank(u.shape(), system);
  require_rank(v.shape(), system);
  if (u.terminal() != v.origin()) throw DomainError("product needs t(u) = o(v)");
  for (const Word* x : {&u, &v})
    if (auto check = validate_word(*x, system); !check.ok)
      throw DomainError("factor is not a valid word at " + to_string(check.cell));
  const Shape m = u.shape();
  const Shape total = m + v.shape();
  Word w(total, std::vector<Index>(total.cell_count(), 0));

  if (system.rank() == 1) {
    for (std::int64_t i = 0; i <= m[0]; ++i) w.at({i}) = u.at({i});
    for (std::int64_t i = 0; i <= v.shape()[0]; ++i) w.at({m[0] + i}) = v.at({i});
  } else if (system.rank() == 2) {
    const std::int64_t m1 = m[0], m2 = m[1], t1 = total[0], t2 = total[1];
    for (std::int64_t i = 0; i <= m1; ++i)
      for (std::int64_t j = 0; j <= m2; ++j) w.at({i, j}) = u.at({i, j});
    for (std::int64_t i = m1; i <= t1; ++i)
      for (std::int64_t j = m2; j <= t2; ++j) w.at({i, j}) = v.at({i - m1, j - m2});
    // Upper-left block: fill from the known cells below and to the right.
    for (std::int64_t j = m2 + 1; j <= t2; ++j)
      for (std::int64_t i = m1 - 1; i >= 0; --i)
        w.at({i, j}) = tiles::corner_complete(w.at({i, j - 1}), w.at({i + 1, j - 1}),
                                              w.at({i + 1, j}), system);
    // Lower-right block: fill from the known cells to the left and above.
    for (std::int64_t j = m2 - 1; j >= 0; --j)
      for (std::int64_t i = m1 + 1; i <= t1; ++i)
        w.at({i, j}) = tiles::corner_complete_lower(w.at({i - 1, j}), w.at({i - 1, j + 1}),
                                                    w.at({i, j + 1}), system);
  } else {
    throw DomainError("products are implemented for rank 1 and 2 only");
  }

  if (auto check = validate_word(w, system); !check.ok)
    throw ConsistencyError("product violates the transition rule at " + to_string(check.cell));
  return w;
}

Word restrict(const Word& w, const Cell& from, const Cell& to) {
  const Shape& s = w.shape();
  if (from.size() != s.rank() || to.size() != s.rank())
    throw DomainError("restriction window rank mismatch");
  std::vector<std::int64_t> dims(s.rank());
  for (std::size_t k = 0; k < s.rank(); ++k) {
    if (from[k] < 0 || from[k] > to[k] || to[k] > s[k])
      throw DomainError("restriction window " + to_string(from) + ".." + to_string(to) +
                        " outside shape " + to_string(s));
    dims[k] = to[k] - from[k];
  }
  Shape out_shape(std::move(dims));
  std::vector<Index> letters(out_shape.cell_count());
  Word out(out_shape, std::move(letters));
  for (std::size_t off = 0; off < out.letters().size(); ++off) {
    Cell l = out.cell(off);
    Cell src = l;
    for (std::size_t k = 0; k < l.size(); ++k) src[k] += from[k];
    out.at(l) = w.at(src);
  }
  return out;
}

TranslatedWord translate(const Word& w, const Cell& by) {
  if (by.size() != w.shape().rank()) throw DomainError("translation rank mismatch");
  return {by, w};
}

bool is_p_periodic(const Word& w, const Cell& p) {
  const Shape& s = w.shape();
  if (p.size() != s.rank()) throw DomainError("period rank mismatch");
  if (std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; }))
    throw DomainError("period must be nonzero");
  for (std::size_t off = 0; off < w.letters().size(); ++off) {
    Cell x = w.cell(off);
    Cell back = x;
    bool inside = true;
    for (std::size_t k = 0; k < x.size(); ++k) {
      back[k] -= p[k];
      inside = inside && back[k] >= 0 && back[k] <= s[k];
    }
    if (inside && w.at(x) != w.at(back)) return false;
  }
  return true;
}

bool matrices_commute(const TransitionSystem& system) {
  if (system.rank() < 2) return true;
  return multiply(system.matrix(0), system.matrix(1)) ==
         multiply(system.matrix(1), system.matrix(0));
}

mpz_class count_words(const TransitionSystem& system, const Shape& shape) {
  require_rank(shape, system);
  if (system.rank() > 2) throw DomainError("counting is implemented for rank 1 and 2 only");
  if (!matrices_commute(system))
    throw Error(ErrorKind::Refused, "word counts are order-dependent: H1a does not hold");
  const std::size_t n = system.size();
  std::vector<mpz_class> x(n, 1), y(n);
  auto apply = [&](const BinaryMatrix& m) {
    for (Index b = 0; b < n; ++b) {
      y[b] = 0;
      for (Index a : m.row(b)) y[b] += x[a];
    }
    std::swap(x, y);
  };
  // Sum of entries of M1^{m1} M2^{m2}: 1^t M1^{m1} M2^{m2} 1.
  for (std::size_t d = system.rank(); d-- > 0;)
    for (std::int64_t s = 0; s < shape[d]; ++s) apply(system.matrix(d));
  return std::accumulate(x.begin(), x.end(), mpz_class(0));
}

namespace {

// Depth-first visit of all words of a shape in lexicographic order. The
// visitor returns false to stop; the return value reports whether the walk
// finished.
class WordWalker {
public:
  WordWalker(const TransitionSystem& system, const Shape& shape)
      : system_(system), word_(shape, std::vector<Index>(shape.cell_count(), 0)) {
    const std::size_t cells = shape.cell_count();
    preds_.resize(cells);
    for (std::size_t off = 0; off < cells; ++off) {
      Cell l = word_.cell(off);
      for (std::size_t j = 0; j < l.size(); ++j)
        if (l[j] > 0) {
          Cell prev = l;
          --prev[j];
          preds_[off].push_back({j, word_.offset(prev)});
        }
    }
  }

  bool walk(const std::function<bool(const Word&)>& visit) { return step(0, visit); }

private:
  struct Pred {
    std::size_t direction;
    std::size_t offset;
  };

  bool step(std::size_t off, const std::function<bool(const Word&)>& visit) {
    auto& letters = word_.mutable_letters();
    if (off == letters.size()) return visit(word_);
    const auto& preds = preds_[off];
    auto admissible = [&](Index b) {
      for (std::size_t k = 1; k < preds.size(); ++k)
        if (!system_.matrix(preds[k].direction).at(b, letters[preds[k].offset])) return false;
      return true;
    };
    if (preds.empty()) {
      for (Index b = 0; b < system_.size(); ++b) {
        letters[off] = b;
        if (!step(off + 1, visit)) return false;
      }
    } else {
      const auto& first = preds.front();
      for (Index b : system_.matrix(first.direction).column(letters[first.offset])) {
        if (!admissible(b)) continue;
        letters[off] = b;
        if (!step(off + 1, visit)) return false;
      }
    }
    return true;
  }

  const TransitionSystem& system_;
  Word word_;
  std::vector<std::vector<Pred>> preds_;
};

}  // namespace

Enumeration enumerate_words(const TransitionSystem& system, const Shape& shape, std::size_t bound) {
  require_rank(shape, system);
  Enumeration out;
  WordWalker(system, shape).walk([&](const Word& w) {
    if (out.words.size() == bound) {
      out.truncated = true;
      return false;
    }
    out.words.push_back(w);
    return true;
  });
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const ConditionResult& ConditionReport::get(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r;
  throw DomainError("no condition named " + name);
}

bool ConditionReport::all_pass() const {
  for (const char* name : {"H0", "H2", "H3"})
    if (!passes(name)) return false;
  for (const char* name : {"H1a", "H1b", "H1c"})
    if (get(name).verdict != Verdict::Pass && get(name).verdict != Verdict::Vacuous) return false;
  return true;
}

std::string ConditionReport::render() const {
  std::ostringstream out;
  for (const auto& r : results) {
    std::string witness = r.witness.empty() ? "-" : r.witness;
    std::replace(witness.begin(), witness.end(), ' ', '_');
    out << "condition=" << r.name << " verdict=" << to_string(r.verdict) << " witness=" << witness
        << "\n";
  }
  return out.str();
}

std::size_t strong_component_count(const TransitionSystem& system) {
  // Iterative Tarjan over the union of all direction graphs.
  const std::size_t n = system.size();
  std::vector<std::vector<Index>> succ(n);
  for (const auto& m : system.matrices)
    for (Index a = 0; a < n; ++a)
      for (Index b : m.column(a)) succ[a].push_back(b);

  constexpr long kUnseen = -1;
  std::vector<long> index(n, kUnseen), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, std::size_t>> frames;
  long counter = 0;
  std::size_t components = 0;

  for (Index root = 0; root < n; ++root) {
    if (index[root] != kUnseen) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < succ[v].size()) {
        const Index w = succ[v][next++];
        if (index[w] == kUnseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        ++components;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
        } while (w != v);
      }
      const Index done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return components;
}

bool reachable_both_ways_from_zero(const TransitionSystem& system) {
  const std::size_t n = system.size();
  if (n == 0) return false;
  auto bfs = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<Index> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index a = queue[head];
      for (const auto& m : system.matrices) {
        auto next = forward ? m.column(a) : m.row(a);
        for (Index b : next)
          if (!seen[b]) {
            seen[b] = true;
            queue.push_back(b);
          }
      }
    }
    return queue.size() == n;
  };
  return bfs(true) && bfs(false);
}

namespace {

ConditionResult check_h0(const TransitionSystem& system) {
  for (std::size_t i = 0; i < system.rank(); ++i)
    if (system.matrix(i).nonzeros() == 0)
      return {"H0", Verdict::Fail, "M" + std::to_string(i + 1) + "=0"};
  if (system.rank() == 0) return {"H0", Verdict::Fail, "no matrices"};
  return {"H0", Verdict::Pass, "-"};
}

std::string entry(const char* name, const CountEntry& e) {
  return std::string(name) + "(" + std::to_string(e.row) + "," + std::to_string(e.col) +
         ")=" + std::to_string(e.count);
}

ConditionResult check_h1a(const TransitionSystem& system) {
  if (system.rank() < 2) return {"H1a", Verdict::Vacuous, "rank_1"};
  const auto ab = multiply(system.matrix(0), system.matrix(1));
  const auto ba = multiply(system.matrix(1), system.matrix(0));
  if (ab == ba) return {"H1a", Verdict::Pass, "-"};
  // First (row, col) where the two products disagree.
  auto key = [](const CountEntry& e) { return std::pair(e.row, e.col); };
  CountEntry left{}, right{};
  for (std::size_t i = 0, k = 0;; ++i, ++k) {
    if (k == ba.size() || (i < ab.size() && key(ab[i]) < key(ba[k]))) {
      left = ab[i];
      right = {left.row, left.col, 0};
      break;
    }
    if (i == ab.size() || key(ba[k]) < key(ab[i])) {
      right = ba[k];
      left = {right.row, right.col, 0};
      break;
    }
    if (ab[i].count != ba[k].count) {
      left = ab[i];
      right = ba[k];
      break;
    }
  }
  return {"H1a", Verdict::Fail, entry("M1M2", left) + ";" + entry("M2M1", right)};
}

ConditionResult check_h1b(const TransitionSystem& system) {
  if (system.rank() < 2) return {"H1b", Verdict::Vacuous, "rank_1"};
  for (const auto& e : multiply(system.matrix(0), system.matrix(1)))
    if (e.count > 1) return {"H1b", Verdict::Fail, entry("M1M2", e)};
  return {"H1b", Verdict::Pass, "-"};
}

ConditionResult check_h2(const TransitionSystem& system) {
  if (system.size() == 0) return {"H2", Verdict::Fail, "empty_alphabet"};
  const std::size_t k = strong_component_count(system);
  if (k == 1) return {"H2", Verdict::Pass, "-"};
  return {"H2", Verdict::Fail, std::to_string(k) + "_strong_components"};
}

// Every nonzero p up to sign with max |p_i| <= bound.
std::vector<Cell> periods(std::size_t rank, int bound) {
  std::vector<Cell> out;
  Cell p(rank, -bound);
  for (;;) {
    const bool zero = std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; });
    auto first = std::find_if(p.begin(), p.end(), [](auto x) { return x != 0; });
    if (!zero && *first > 0) out.push_back(p);
    std::size_t k = rank;
    while (k-- > 0) {
      if (p[k] < bound) {
        ++p[k];
        break;
      }
      p[k] = -bound;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

enum class PeriodSearch { Witness, AllPeriodic, Exhausted };

// A word of shape |p| is non-p-periodic iff its two corners joined by p
// differ; every violating pair of a larger word sits in such a box.
PeriodSearch search_non_periodic(const TransitionSystem& system, const Cell& p) {
  std::vector<std::int64_t> dims(p.size());
  Cell hi(p.size()), lo(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    dims[k] = p[k] < 0 ? -p[k] : p[k];
    hi[k] = p[k] >= 0 ? dims[k] : 0;
    lo[k] = p[k] >= 0 ? 0 : dims[k];
  }
  constexpr std::size_t kBudget = 5'000'000;
  std::size_t visited = 0;
  bool found = false;
  const bool finished = WordWalker(system, Shape(dims)).walk([&](const Word& w) {
    if (w.at(hi) != w.at(lo)) {
      found = true;
      return false;
    }
    return ++visited < kBudget;
  });
  if (found) return PeriodSearch::Witness;
  return finished ? PeriodSearch::AllPeriodic : PeriodSearch::Exhausted;
}

ConditionResult check_h3(const TransitionSystem& system, const ConditionOptions& opts) {
  bool all_found = true;
  for (const Cell& p : periods(system.rank(), opts.periodicity_bound)) {
    switch (search_non_periodic(system, p)) {
      case PeriodSearch::Witness: break;
      case PeriodSearch::AllPeriodic:
        return {"H3", Verdict::Fail, "every_word_is_p-periodic_for_p=" + to_string(p)};
      case PeriodSearch::Exhausted: all_found = false; break;
    }
  }

  bool branching = system.size() > 0;
  for (const auto& m : system.matrices)
    for (Index a = 0; a < m.size(); ++a)
      branching = branching && m.row_sum(a) >= 2 && m.column_sum(a) >= 2;

  const std::string bound = std::to_string(opts.periodicity_bound);
  if (branching)
    return {"H3", Verdict::Pass,
            "row_and_column_sums>=2(final-step_branching_breaks_any_overlap);exact_witnesses_for_"
            "|p|<=" + bound + (all_found ? "" : "_partially_searched")};
  return {"H3", Verdict::Inconclusive,
          (all_found ? "witnesses_for_|p|<=" : "search_budget_hit_for_|p|<=") + bound +
              ";no_branching_certificate_beyond"};
}

}  // namespace

ConditionReport check_conditions(const TransitionSystem& system, const ConditionOptions& opts) {
  ConditionReport r;
  r.results.push_back(check_h0(system));
  r.results.push_back(check_h1a(system));
  r.results.push_back(check_h1b(system));
  r.results.push_back({"H1c", Verdict::Vacuous, system.rank() < 2 ? "rank_1" : "rank_2"});
  r.results.push_back(check_h2(system));
  r.results.push_back(check_h3(system, opts));
  return r;
}

}  // namespace hrck::words
