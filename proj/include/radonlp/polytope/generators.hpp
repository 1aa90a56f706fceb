#pragma once

#include "radonlp/vfcalc/word_table.hpp"

#include <optional>
#include <vector>

namespace radonlp {

struct Generator {
  Degree degree;
  std::vector<Word> witness;  // sorted in enumeration order
  RationalFn lambda;          // lambda_I at the search point
};

struct GeneratorSearch {
  std::vector<Generator> generators;  // Pareto-minimal, sorted by d1 ascending
  Degree cap;                         // componentwise tuple-degree cap used
  Degree first_witness;               // least total degree spanning tuple
  std::size_t nonzero_words = 0;
  std::size_t classes = 0;            // projective classes of evaluated fields
  std::size_t nodes = 0;              // search nodes visited
};

/// Thrown when no spanning tuple exists below the word cap.
class HormanderFailure : public std::runtime_error {
 public:
  HormanderFailure(const std::string& msg, HormanderVerdict v) : std::runtime_error(msg), verdict(std::move(v)) {}
  HormanderVerdict verdict;
};

/// Pareto-minimal degrees deg(I) over n-tuples with lambda_I(point) != 0.
///
/// Word fields are evaluated at the point and grouped into classes of
/// parallel vectors; a tuple's determinant is nonzero iff it picks n
/// independent classes, so the search runs over class combinations and only
/// then over each class's Pareto-minimal degrees. Partial tuples whose degree
/// lower bound already dominates a found generator, or leaves the cap, are cut.
/// Default cap: twice the least-total-degree witness, componentwise.
GeneratorSearch find_generators(const WordTable& table, std::span<const Rational> point,
                                std::optional<Degree> tuple_cap = std::nullopt);

/// Keeps the componentwise-minimal degrees (duplicates collapsed), sorted by d1.
std::vector<Degree> pareto_minimal(std::vector<Degree> degrees);

}  // namespace radonlp
