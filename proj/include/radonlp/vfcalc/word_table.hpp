#pragma once

#include "radonlp/vfcalc/vector_field.hpp"

#include <map>
#include <optional>
#include <vector>

namespace radonlp {

struct WordEntry {
  Word word;
  Degree degree;
  VectorField field;
  std::size_t parent = 0;  // index of the word with the last letter removed (self for length 1)
};

/// All left-normed words of total degree <= cap with their fields.
///
/// Words that extend a vanishing field vanish as well and are not stored;
/// field() still answers for them, so the table behaves as if complete.
class WordTable {
 public:
  WordTable(VectorField x1, VectorField x2, unsigned cap);

  unsigned cap() const { return cap_; }
  std::size_t dim() const { return x1_.dim(); }
  std::size_t nvars() const { return x1_.nvars(); }
  const VectorField& x1() const { return x1_; }
  const VectorField& x2() const { return x2_; }

  /// Stored entries in enumeration order (length, then lexicographic).
  const std::vector<WordEntry>& entries() const { return entries_; }
  /// Number of words of total degree <= cap (stored or implied zero).
  std::size_t word_count() const;
  std::size_t zero_count() const;

  bool contains(const Word& w) const { return w.length() >= 1 && w.length() <= cap_; }
  /// Field of any word within the cap; throws std::out_of_range otherwise.
  VectorField field(const Word& w) const;
  const WordEntry* find(const Word& w) const;

 private:
  VectorField x1_, x2_;
  unsigned cap_;
  std::vector<WordEntry> entries_;
  std::map<Word, std::size_t> index_;
};

/// Throws std::invalid_argument when cap == 0.
WordTable build_words(const VectorField& x1, const VectorField& x2, unsigned cap);

/// A stored, nonvanishing word field evaluated at a point. Values are
/// constants unless symbolic parameters survive.
struct EvaluatedWord {
  std::size_t entry;
  Word word;
  Degree degree;
  std::vector<RationalFn> value;
};

/// Evaluates every stored entry at `point` and keeps the nonzero ones.
std::vector<EvaluatedWord> evaluate_words(const WordTable& table, std::span<const Rational> point);

/// det(X_{w_1}(p), ..., X_{w_n}(p)). The result is constant unless
/// parameters remain symbolic. Throws std::out_of_range for words beyond
/// the cap and std::domain_error when a denominator vanishes at p.
RationalFn lambda_I(const WordTable& table, const std::vector<Word>& tuple, std::span<const Rational> point);

/// "nonzero" for nonzero constants, "zero", or "nonzero unless <poly> = 0"
/// when parameters survive.
std::string describe_value(const RationalFn& v, const std::vector<std::string>& names);

struct HormanderVerdict {
  bool spans = false;
  std::vector<Word> witness;  // minimal total degree spanning tuple
  Degree witness_degree;
  std::size_t rank = 0;
  std::string message;
};

/// Greedy minimum-weight basis over words sorted by total degree, which is a
/// spanning n-tuple of least total degree whenever one exists below the cap.
HormanderVerdict hormander_check(const WordTable& table, std::span<const Rational> point);

}  // namespace radonlp
