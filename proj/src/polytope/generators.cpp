#include "radonlp/polytope/generators.hpp"

#include "radonlp/polyalg/echelon.hpp"

#include <algorithm>
#include <map>

namespace radonlp {

std::vector<Degree> pareto_minimal(std::vector<Degree> degrees) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  std::vector<Degree> out;
  // Sorted by d1 then d2: a point survives iff its d2 beats every earlier d2.
  for (const auto& d : degrees)
    if (out.empty() || d.d2 < out.back().d2) out.push_back(d);
  return out;
}

namespace {

struct Option {
  Degree degree;
  std::size_t entry;  // word table index of the representative
  Word word;
};

struct WordClass {
  std::vector<RationalFn> direction;  // the evaluated vector of the first member
  std::vector<Option> options;        // Pareto-minimal degrees, first word for each
  Degree low;                         // componentwise minimum over options
};

std::string direction_key(const std::vector<RationalFn>& v, const std::vector<std::string>& names) {
  std::size_t first = 0;
  while (v[first].is_zero()) ++first;
  std::string key;
  for (const auto& x : v) {
    key += (x / v[first]).to_string(names);
    key += ';';
  }
  return key;
}

std::vector<std::string> placeholder_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

// Strict domination only: an equal degree may still improve the witness.
bool strictly_dominated(Degree d, const std::vector<Degree>& found) {
  return std::any_of(found.begin(), found.end(), [&](Degree g) { return g.leq(d) && !(g == d); });
}

struct Search {
  const std::vector<WordClass>& classes;
  std::size_t n;
  Degree cap;
  std::map<Degree, std::vector<Option>> best;  // degree -> witness options
  std::vector<Degree> frontier;
  std::size_t nodes = 0;

  static bool witness_less(const std::vector<Option>& a, const std::vector<Option>& b) {
    std::vector<std::size_t> ea, eb;
    for (const auto& o : a) ea.push_back(o.entry);
    for (const auto& o : b) eb.push_back(o.entry);
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea < eb;
  }

  void record(Degree d, const std::vector<Option>& choice) {
    if (!d.leq(cap)) return;
    if (strictly_dominated(d, frontier)) return;
    auto it = best.find(d);
    if (it == best.end()) {
      best.emplace(d, choice);
      std::erase_if(frontier, [&](Degree g) { return d.leq(g); });
      frontier.push_back(d);
    } else if (witness_less(choice, it->second)) {
      it->second = choice;
    }
  }

  // Every way of picking one Pareto option per chosen class.
  void expand(const std::vector<std::size_t>& chosen, std::size_t k, Degree sum, std::vector<Option>& pick) {
    if (k == chosen.size()) {
      record(sum, pick);
      return;
    }
    for (const auto& o : classes[chosen[k]].options) {
      pick.push_back(o);
      expand(chosen, k + 1, sum + o.degree, pick);
      pick.pop_back();
    }
  }

  void dfs(std::size_t start, std::vector<std::size_t>& chosen, const Echelon<RationalFn>& basis, Degree low) {
    ++nodes;
    if (chosen.size() == n) {
      std::vector<Option> pick;
      expand(chosen, 0, Degree{}, pick);
      return;
    }
    for (std::size_t c = start; c < classes.size(); ++c) {
      if (classes.size() - c < n - chosen.size()) break;
      Degree next_low = low + classes[c].low;
      if (!next_low.leq(cap)) continue;
      if (strictly_dominated(next_low, frontier)) continue;
      if (!basis.independent(classes[c].direction)) continue;
      Echelon<RationalFn> grown = basis;
      grown.try_add(classes[c].direction);
      chosen.push_back(c);
      dfs(c + 1, chosen, grown, next_low);
      chosen.pop_back();
    }
  }
};

}  // namespace

GeneratorSearch find_generators(const WordTable& table, std::span<const Rational> point,
                                std::optional<Degree> tuple_cap) {
  HormanderVerdict verdict = hormander_check(table, point);
  if (!verdict.spans) throw HormanderFailure(verdict.message, verdict);

  GeneratorSearch out;
  out.first_witness = verdict.witness_degree;
  out.cap = tuple_cap.value_or(Degree{2 * verdict.witness_degree.d1, 2 * verdict.witness_degree.d2});

  auto evaluated = evaluate_words(table, point);
  out.nonzero_words = evaluated.size();
  auto names = placeholder_names(table.nvars());
  std::map<std::string, std::size_t> class_of;
  std::vector<WordClass> classes;
  std::vector<std::vector<Option>> members;
  for (const auto& ew : evaluated) {
    auto key = direction_key(ew.value, names);
    auto [it, inserted] = class_of.try_emplace(key, classes.size());
    if (inserted) {
      classes.push_back({ew.value, {}, {}});
      members.emplace_back();
    }
    members[it->second].push_back({ew.degree, ew.entry, ew.word});
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<Degree> degs;
    for (const auto& m : members[c]) degs.push_back(m.degree);
    auto pareto = pareto_minimal(degs);
    for (const auto& d : pareto) {
      // Members are in enumeration order, so the first hit is the smallest word.
      for (const auto& m : members[c]) {
        if (m.degree == d) {
          classes[c].options.push_back(m);
          break;
        }
      }
    }
    classes[c].low = {pareto.front().d1, pareto.back().d2};
  }
  std::stable_sort(classes.begin(), classes.end(), [](const WordClass& a, const WordClass& b) {
    return a.low.total() < b.low.total();
  });
  out.classes = classes.size();

  Search search{classes, table.dim(), out.cap, {}, {}, 0};
  std::vector<std::size_t> chosen;
  search.dfs(0, chosen, Echelon<RationalFn>(table.dim()), Degree{});
  out.nodes = search.nodes;

  for (const auto& d : pareto_minimal(search.frontier)) {
    Generator g;
    g.degree = d;
    std::vector<Option> opts = search.best.at(d);
    std::sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) { return a.entry < b.entry; });
    for (const auto& o : opts) g.witness.push_back(o.word);
    g.lambda = lambda_I(table, g.witness, point);
    out.generators.push_back(std::move(g));
  }
  return out;
}

}  // namespace radonlp
