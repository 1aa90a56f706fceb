#include "radonlp/vfcalc/word_table.hpp"

#include "radonlp/polyalg/echelon.hpp"

#include <algorithm>
#include <stdexcept>

namespace radonlp {

WordTable::WordTable(VectorField x1, VectorField x2, unsigned cap) : x1_(std::move(x1)), x2_(std::move(x2)), cap_(cap) {
  if (cap == 0) throw std::invalid_argument("word cap must be at least 1");
  if (x1_.dim() != x2_.dim() || x1_.nvars() != x2_.nvars())
    throw std::invalid_argument("X1 and X2 live in different contexts");
  entries_.push_back({Word{{1}}, Degree{1, 0}, x1_, 0});
  entries_.push_back({Word{{2}}, Degree{0, 1}, x2_, 1});
  std::size_t level_begin = 0, level_end = entries_.size();
  for (unsigned len = 2; len <= cap_; ++len) {
    for (std::size_t p = level_begin; p < level_end; ++p) {
      if (entries_[p].field.is_zero()) continue;
      for (std::uint8_t j : {std::uint8_t{1}, std::uint8_t{2}}) {
        WordEntry e;
        e.word = entries_[p].word;
        e.word.letters.push_back(j);
        e.degree = e.word.degree();
        e.field = lie_bracket(entries_[p].field, j == 1 ? x1_ : x2_);
        e.parent = p;
        entries_.push_back(std::move(e));
      }
    }
    level_begin = level_end;
    level_end = entries_.size();
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) index_[entries_[i].word] = i;
}

std::size_t WordTable::word_count() const { return (std::size_t{1} << (cap_ + 1)) - 2; }

std::size_t WordTable::zero_count() const {
  std::size_t stored_nonzero = 0;
  for (const auto& e : entries_)
    if (!e.field.is_zero()) ++stored_nonzero;
  return word_count() - stored_nonzero;
}

const WordEntry* WordTable::find(const Word& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

VectorField WordTable::field(const Word& w) const {
  if (!contains(w)) throw std::out_of_range("word " + w.to_string() + " exceeds the table cap");
  if (const auto* e = find(w)) return e->field;
  return VectorField::zero(dim(), nvars());
}

WordTable build_words(const VectorField& x1, const VectorField& x2, unsigned cap) { return WordTable(x1, x2, cap); }

std::vector<EvaluatedWord> evaluate_words(const WordTable& table, std::span<const Rational> point) {
  std::vector<EvaluatedWord> out;
  const auto& entries = table.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].field.is_zero()) continue;
    auto v = entries[i].field.at(point);
    bool nonzero = std::any_of(v.begin(), v.end(), [](const RationalFn& f) { return !f.is_zero(); });
    if (nonzero) out.push_back({i, entries[i].word, entries[i].degree, std::move(v)});
  }
  return out;
}

RationalFn lambda_I(const WordTable& table, const std::vector<Word>& tuple, std::span<const Rational> point) {
  const std::size_t n = table.dim();
  if (tuple.size() != n) throw std::invalid_argument("tuple length must equal the dimension");
  Matrix<RationalFn> m;
  for (const auto& w : tuple) m.push_back(table.field(w).at(point));
  return det(m);
}

std::string describe_value(const RationalFn& v, const std::vector<std::string>& names) {
  if (v.is_zero()) return "zero";
  if (v.is_constant()) return "nonzero";
  return "nonzero unless " + integer_primitive(v.num()).to_string(names) + " = 0";
}

HormanderVerdict hormander_check(const WordTable& table, std::span<const Rational> point) {
  auto evaluated = evaluate_words(table, point);
  std::stable_sort(evaluated.begin(), evaluated.end(),
                   [](const EvaluatedWord& a, const EvaluatedWord& b) { return a.degree.total() < b.degree.total(); });
  HormanderVerdict verdict;
  Echelon<RationalFn> basis(table.dim());
  for (const auto& ew : evaluated) {
    if (basis.try_add(ew.value)) {
      verdict.witness.push_back(ew.word);
      verdict.witness_degree = verdict.witness_degree + ew.degree;
      if (basis.full()) break;
    }
  }
  verdict.rank = basis.rank();
  verdict.spans = basis.full();
  if (verdict.spans) {
    std::sort(verdict.witness.begin(), verdict.witness.end());
    verdict.message = "spans at the base point; witness of degree " + verdict.witness_degree.to_string();
  } else {
    verdict.witness.clear();
    verdict.witness_degree = {};
    verdict.message = "no spanning tuple among words of total degree <= " + std::to_string(table.cap()) +
                      " (rank " + std::to_string(verdict.rank) + " of " + std::to_string(table.dim()) +
                      "). Without the bracket-spanning condition the operator is not of restricted weak type "
                      "(p1, p2') for any nontrivial pair; this is a verdict up to the cap, not a proof of failure.";
  }
  return verdict;
}

}  // namespace radonlp
