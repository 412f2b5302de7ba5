#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specalt/unknotting.hpp"

namespace specalt {

/// Integer or closed integer range; `hi` absent means unbounded above.
struct Range {
  int lo = 0;
  std::optional<int> hi;

  static Range exact(int v) { return {v, v}; }
  bool determined() const { return hi && *hi == lo; }
  bool within(const Range& outer) const;
  /// "3", "3;4", or "3;" for an open upper end.
  std::string to_csv() const;
  /// "3", "{3,4}", or "≥3".
  std::string to_markdown() const;
  bool operator==(const Range&) const = default;
};

/// Accepts "", "3", "3;4", "{3,4}". Empty input gives nullopt.
std::optional<Range> parse_range(const std::string& text);

struct KnotRecord {
  std::string name;
  std::string pd;
  std::optional<int> known_signature;
  std::optional<Range> known_u;
  std::optional<int> known_genus;
  int line = 0;
};

struct RowError {
  int line = 0;
  std::string name;
  std::string message;
};

struct LoadedTable {
  std::vector<KnotRecord> records;
  std::vector<RowError> errors;
};

/// CSV with header name,pd,signature,u,genus. Throws Io for a missing file
/// and Parse for a bad header; bad rows are collected in `errors`.
LoadedTable load_table(const std::string& path);
LoadedTable parse_table(const std::string& text);

std::vector<ReferenceKnot> load_references(const std::string& path);

struct AnalyzeConfig {
  int jobs = 1;  // inside one knot
  CertifyBudget budget{};
  std::vector<ReferenceKnot> references;
  SimplifyBudget relation_budget{2, 200'000};
  bool timings = false;
};

struct ReportRow {
  std::string name;
  std::optional<Range> u, c4;
  int sigma = 0;
  int nullity = 0;
  int genus = 0;
  int p = 0;
  int crossings = 0;
  int components = 1;
  std::string obstruction;
  std::string verdict;
  Subset witness;
  std::vector<Subset> unknown;
  std::optional<Relation> relation;
  std::vector<std::string> provenance;
  std::string error;  // nonempty for a failed row
  double seconds = 0;
};

ReportRow analyze(const KnotRecord& record, const AnalyzeConfig& config = {});
/// Parallel over knots; output order follows `records`.
std::vector<ReportRow> analyze_all(const std::vector<KnotRecord>& records, const AnalyzeConfig& config, int jobs);

/// Throws Internal unless p <= c4 <= u holds for every successful row.
void check_bounds(const std::vector<ReportRow>& rows);

/// "11a291" < "11a298" < "12a94" < "12a1004".
bool natural_less(const std::string& a, const std::string& b);

enum class TableFormat { Markdown, Csv };

std::string emit_tables(std::vector<ReportRow> rows, TableFormat format);

struct TableRow {
  std::string name;
  Range u, c4;
  int sigma = 0;
  int genus = 0;
};

/// Reads the K,u,c4,sigma,g layout written by emit_tables(Csv).
std::vector<TableRow> parse_table_rows(const std::string& text);
std::vector<TableRow> load_table_rows(const std::string& path);

/// Mismatches against an expected table: determined entries must agree
/// exactly, set-valued ones must contain the computed range.
std::vector<std::string> diff_tables(const std::vector<ReportRow>& rows, const std::vector<TableRow>& expected);

}  // namespace specalt
