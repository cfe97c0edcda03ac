#pragma once

#include "system.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hrck::words {

// Shape m of a word with domain [0, m]; one component per direction.
class Shape {
public:
  Shape() = default;
  explicit Shape(std::vector<std::int64_t> dims);
  Shape(std::initializer_list<std::int64_t> dims) : Shape(std::vector<std::int64_t>(dims)) {}

  std::size_t rank() const noexcept { return dims_.size(); }
  std::int64_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::int64_t>& dims() const noexcept { return dims_; }
  std::size_t cell_count() const;

  friend Shape operator+(const Shape& a, const Shape& b);
  friend bool operator==(const Shape&, const Shape&) = default;

private:
  std::vector<std::int64_t> dims_;
};

using Cell = std::vector<std::int64_t>;

std::string to_string(const Shape& s);
std::string to_string(const Cell& c);

// Letters over the grid [0, shape], cells in lexicographic order with the
// first coordinate most significant.
class Word {
public:
  Word() = default;
  Word(Shape shape, std::vector<Index> letters);
  static Word letter(Index a, std::size_t rank);

  const Shape& shape() const noexcept { return shape_; }
  const std::vector<Index>& letters() const noexcept { return letters_; }
  // Shape is fixed; only letter values may change.
  std::vector<Index>& mutable_letters() noexcept { return letters_; }
  Index at(const Cell& l) const { return letters_.at(offset(l)); }
  Index& at(const Cell& l) { return letters_.at(offset(l)); }
  Index origin() const { return letters_.front(); }
  Index terminal() const { return letters_.back(); }

  std::size_t offset(const Cell& l) const;
  Cell cell(std::size_t offset) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
  Shape shape_;
  std::vector<Index> letters_;
};

// A word moved to the domain [offset, offset + shape].
struct TranslatedWord {
  Cell offset;
  Word word;
};

struct WordCheck {
  bool ok = true;
  Cell cell;              // l with M_j(w(l + e_j), w(l)) = 0
  std::size_t direction;  // j, 0-based
};

WordCheck validate_word(const Word& w, const TransitionSystem& system);

// The unique w with w|[0,m] = u and w|[m,m+n] = v; rank 1 and 2.
Word product(const Word& u, const Word& v, const TransitionSystem& system);

Word restrict(const Word& w, const Cell& from, const Cell& to);
TranslatedWord translate(const Word& w, const Cell& by);
bool is_p_periodic(const Word& w, const Cell& p);

// Sum of entries of M1^{m1} M2^{m2}. Refused unless the matrices commute.
mpz_class count_words(const TransitionSystem& system, const Shape& shape);

struct Enumeration {
  std::vector<Word> words;
  bool truncated = false;
};

// Exhaustive backtracking in lexicographic letter order (cell order as in
// Word), independent of any product structure.
Enumeration enumerate_words(const TransitionSystem& system, const Shape& shape,
                            std::size_t bound = 1'000'000);

enum class Verdict { Pass, Fail, Vacuous, Inconclusive };

const char* to_string(Verdict v);

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string witness;  // "-" when there is nothing to report
};

struct ConditionOptions {
  // Exact search for non-periodic words covers every nonzero p (up to
  // sign) with max |p_i| <= periodicity_bound.
  int periodicity_bound = 2;
};

struct ConditionReport {
  std::vector<ConditionResult> results;

  const ConditionResult& get(const std::string& name) const;
  bool passes(const std::string& name) const { return get(name).verdict == Verdict::Pass; }
  // H0, H1a, H1b, H2 and H3 pass (vacuous H1 parts count as passing).
  bool all_pass() const;
  std::string render() const;
};

ConditionReport check_conditions(const TransitionSystem& system, const ConditionOptions& = {});

// Letter graph with an edge a -> b whenever some M_i(b, a) = 1.
std::size_t strong_component_count(const TransitionSystem& system);
// Independent check: every letter reachable from letter 0 forwards and backwards.
bool reachable_both_ways_from_zero(const TransitionSystem& system);

// Direct H1a test: M1 M2 == M2 M1 (trivially true in rank 1).
bool matrices_commute(const TransitionSystem& system);

}  // namespace hrck::words
