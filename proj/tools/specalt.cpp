// specalt: command-line front end for the special alternating pipeline.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "specalt/error.hpp"
#include "specalt/serialize.hpp"
#include "specalt/tables.hpp"

using namespace specalt;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kInconclusive = 3 };

struct Options {
  std::string data_dir;
  int jobs = 1;
  int budget_extra = 2;
  std::uint64_t budget_nodes = 1'000'000;
  bool json = false;
  bool timings = false;
};

CertifyBudget budget_of(const Options& o) {
  CertifyBudget b;
  b.first = {o.budget_extra, o.budget_nodes};
  b.escalated = {o.budget_extra + 2, o.budget_nodes * 10};
  return b;
}

// Looks a knot name up in the bundled tables; otherwise treats the argument
// as a PD or DT code.
KnotRecord resolve(const std::string& arg, const Options& o) {
  if (arg.find('[') != std::string::npos) return KnotRecord{"input", arg};
  if (arg.find_first_not_of("0123456789 -,") == std::string::npos) {
    LinkDiagram d = parse_dt(arg);
    return KnotRecord{"input", to_pd_string(d.code())};
  }
  for (const char* file : {"knots.csv", "knots_upto10.csv"}) {
    const fs::path p = fs::path(o.data_dir) / file;
    if (!fs::exists(p)) continue;
    for (auto& r : load_table(p.string()).records)
      if (r.name == arg) return r;
  }
  const fs::path refs = fs::path(o.data_dir) / "reference.csv";
  if (fs::exists(refs))
    for (auto& r : load_references(refs.string()))
      if (r.name == arg) return KnotRecord{r.name, to_pd_string(r.diagram.code())};
  throw Error(ErrorKind::Parse, "unknown knot \"" + arg + "\" (not in " + o.data_dir + ")");
}

AnalyzeConfig config_of(const Options& o) {
  AnalyzeConfig c;
  c.jobs = o.jobs;
  c.budget = budget_of(o);
  c.timings = o.timings;
  const fs::path refs = fs::path(o.data_dir) / "reference.csv";
  if (fs::exists(refs)) c.references = load_references(refs.string());
  return c;
}

std::string join(const Subset& s) {
  std::string out;
  for (int c : s) out += (out.empty() ? "" : " ") + std::to_string(c);
  return out.empty() ? "(none)" : out;
}

int cmd_analyze(const std::string& arg, const Options& o) {
  ReportRow r = analyze(resolve(arg, o), config_of(o));
  if (o.json) {
    std::cout << json(r).dump(2) << "\n";
  } else if (!r.error.empty()) {
    std::cout << r.name << ": error: " << r.error << "\n";
  } else {
    std::cout << r.name << ": " << r.crossings << " crossings, sigma " << r.sigma << ", nullity " << r.nullity
              << ", genus " << r.genus << ", p " << r.p << "\n"
              << "obstruction: " << r.obstruction << "\n"
              << "verdict: " << r.verdict << ", u = " << r.u->to_markdown() << ", c4 = " << r.c4->to_markdown()
              << "\n"
              << "witness: " << join(r.witness) << "\n";
    for (const auto& p : r.provenance) std::cout << "  " << p << "\n";
  }
  if (!r.error.empty()) return kInput;
  return r.verdict == to_string(VerdictKind::Inconclusive) || !r.unknown.empty() ? kInconclusive : kOk;
}

int cmd_embed(const std::string& arg, bool all, const Options& o) {
  LinkDiagram d = parse_pd(resolve(arg, o).pd);
  ObstructionOptions oo;
  oo.jobs = o.jobs;
  oo.enumerate_all = all;
  ObstructionVerdict v = obstruction(d, oo);
  if (o.json) {
    std::cout << json(v).dump(2) << "\n";
    return kOk;
  }
  std::cout << to_string(v.kind) << ": rank " << v.lattice.rank << " into Z^" << v.target_dim << ", sigma "
            << v.sigma << ", p " << v.p << (v.mirrored ? " (mirrored)" : "") << "\n"
            << "search nodes " << v.stats.nodes << ", representatives " << v.stats.emitted << "\n";
  if (v.embedding) {
    for (const auto& row : v.embedding->full_matrix()) {
      for (auto x : row) std::cout << (x >= 0 ? "  " : " ") << x;
      std::cout << "\n";
    }
    std::cout << "pairs:";
    for (const auto& p : v.pairing->pairs) std::cout << " (" << p.a << "," << p.b << "," << p.eps << ")";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_search(const std::string& arg, int m, const Options& o) {
  LinkDiagram d = parse_pd(resolve(arg, o).pd);
  SearchOptions so;
  so.jobs = o.jobs;
  so.budget = budget_of(o);
  SearchResult r = exhaustive_search(d, m, so);
  if (o.json) {
    std::cout << json(r).dump(2) << "\n";
  } else {
    std::cout << to_string(r.kind) << " with " << m << " changes (" << r.subsets_checked << " subsets)\n";
    if (!r.witnesses.empty()) std::cout << "witness: " << join(r.witnesses.front()) << "\n";
    for (const auto& [inv, n] : r.refuted_by) std::cout << "  refuted by " << inv << ": " << n << "\n";
    for (const auto& s : r.unknown) std::cout << "  unknown: " << join(s) << "\n";
  }
  return r.kind == SearchResult::Kind::Inconclusive ? kInconclusive : kOk;
}

int cmd_tables(const std::string& csv, const std::string& diff, const std::string& format, const Options& o) {
  LoadedTable t = load_table(csv);
  std::vector<TableRow> expected;
  if (!diff.empty()) {
    // Only the knots the expected table mentions.
    expected = load_table_rows(diff);
    std::set<std::string> wanted;
    for (const auto& e : expected) wanted.insert(e.name);
    std::erase_if(t.records, [&](const KnotRecord& r) { return !wanted.count(r.name); });
    std::erase_if(t.errors, [&](const RowError& e) { return !wanted.count(e.name); });
  }
  for (const auto& e : t.errors) std::cerr << csv << ":" << e.line << ": " << e.name << ": " << e.message << "\n";
  std::vector<ReportRow> rows = analyze_all(t.records, config_of(o), o.jobs);
  if (o.json) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(r);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << emit_tables(rows, format == "csv" ? TableFormat::Csv : TableFormat::Markdown);
  }
  int code = t.errors.empty() ? kOk : kInput;
  for (const auto& r : rows)
    if (!r.error.empty()) {
      std::cerr << r.name << ": " << r.error << "\n";
      code = kInput;
    }
  try {
    check_bounds(rows);
  } catch (const Error& e) {
    std::cerr << "bound check failed: " << e.what() << "\n";
    return kMismatch;
  }
  if (!diff.empty()) {
    auto mismatches = diff_tables(rows, expected);
    for (const auto& m : mismatches) std::cerr << "mismatch: " << m << "\n";
    if (!mismatches.empty()) return kMismatch;
  }
  if (code != kOk) return code;
  for (const auto& r : rows)
    if (r.verdict == to_string(VerdictKind::Inconclusive) || !r.unknown.empty()) return kInconclusive;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unlinking numbers of special alternating links"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* env = std::getenv("SPECALT_JOBS")) o.jobs = std::max(1, std::atoi(env));
  o.data_dir = std::getenv("SPECALT_DATA_DIR") ? std::getenv("SPECALT_DATA_DIR") : SPECALT_DEFAULT_DATA_DIR;
  app.add_option("--data", o.data_dir, "Directory with knots.csv and reference.csv");
  app.add_option("--jobs", o.jobs, "Worker threads (default $SPECALT_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--budget-extra", o.budget_extra, "Crossings a simplification may add")->check(CLI::NonNegativeNumber);
  app.add_option("--budget-nodes", o.budget_nodes, "Diagram states per simplification")->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--timings", o.timings, "Include wall-clock timings in JSON reports");

  std::string knot, csv, diff, format = "md";
  int changes = 1;
  bool all = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Signature, obstruction and unlinking verdict for one knot");
  analyze_cmd->add_option("knot", knot, "Knot name, PD code or DT code")->required();
  auto* embed_cmd = app.add_subcommand("embed", "Lattice embedding search");
  embed_cmd->add_option("knot", knot, "Knot name, PD code or DT code")->required();
  embed_cmd->add_flag("--all", all, "Enumerate every admissible embedding");
  auto* search_cmd = app.add_subcommand("search", "Try every subset of crossing changes of one size");
  search_cmd->add_option("knot", knot, "Knot name, PD code or DT code")->required();
  search_cmd->add_option("--changes", changes, "Number of crossings to change")->check(CLI::NonNegativeNumber);
  auto* tables_cmd = app.add_subcommand("tables", "Analyse every knot of a CSV table");
  tables_cmd->add_option("csv", csv, "Table with header name,pd,signature,u,genus")->required();
  tables_cmd->add_option("--diff", diff, "Expected K,u,c4,sigma,g table; restricts the run to its knots");
  tables_cmd->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }
  try {
    if (*analyze_cmd) return cmd_analyze(knot, o);
    if (*embed_cmd) return cmd_embed(knot, all, o);
    if (*search_cmd) return cmd_search(knot, changes, o);
    if (*tables_cmd) return cmd_tables(csv, diff, format, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
