#pragma once

#include "radonlp/polytope/lebesgue.hpp"
#include "radonlp/vfcalc/operator_spec.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace radonlp::cli {

struct ExponentQuery {
  std::string p1, q;  // q = p2'
  friend bool operator==(const ExponentQuery&, const ExponentQuery&) = default;
};

struct AnalyzeParams {
  unsigned cap = 8;
  std::optional<Degree> tuple_cap;
  std::vector<ExponentQuery> queries;
};

struct GeneratorRow {
  Degree degree;
  std::vector<std::string> witness;
  std::string lambda;  // "num/den", or an expression when parameters survive
  friend bool operator==(const GeneratorRow&, const GeneratorRow&) = default;
};

struct QueryRow {
  ExponentQuery query;
  std::string p2;
  std::string verdict;
  std::optional<QPoint> c;
  QPoint region_point;
  std::optional<std::string> membership;
  friend bool operator==(const QueryRow&, const QueryRow&) = default;
};

struct AnalysisReport {
  OperatorSpec spec;
  std::vector<std::string> coords;
  std::vector<std::string> x1, x2;  // components in the expression grammar
  unsigned word_cap = 0;
  std::size_t words = 0, stored = 0, zero = 0;
  std::vector<std::string> hormander_witness;
  Degree hormander_degree;
  Degree tuple_cap;
  std::vector<GeneratorRow> generators;
  std::vector<Degree> polytope_vertices;
  std::vector<QPoint> region_vertices;
  std::vector<QueryRow> queries;
  std::vector<std::string> warnings;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// spec_to_fields, build_words, find_generators, the polytope and region,
/// then classify_pair for each query. Throws HormanderFailure, SpecError,
/// ParseError and std::invalid_argument on bad queries.
AnalysisReport build_analysis(const OperatorSpec& spec, const AnalyzeParams& params);

nlohmann::json spec_to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const nlohmann::json& j);

/// Rationals as "num/den" strings, vertices in canonical order.
nlohmann::json to_json(const AnalysisReport& r);
/// Throws std::invalid_argument on a schema mismatch.
AnalysisReport analysis_from_json(const nlohmann::json& j);

/// Human-readable form, including the region as an SVG-ready point list.
std::string render_text(const AnalysisReport& r);

struct BracketsParams {
  unsigned cap = 4;
  std::vector<std::string> tuples;  // comma-separated words, e.g. "1,2,12"
};

/// Word table dump: every stored word with degree and components, plus
/// lambda_I at the base point for each requested tuple.
nlohmann::json brackets_json(const OperatorSpec& spec, const BracketsParams& params);
std::string brackets_csv(const nlohmann::json& dump);

}  // namespace radonlp::cli
