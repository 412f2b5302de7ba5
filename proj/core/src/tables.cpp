#include "specalt/tables.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "specalt/error.hpp"
#include "specalt/invariants.hpp"

namespace specalt {

bool Range::within(const Range& outer) const {
  if (lo < outer.lo) return false;
  if (!outer.hi) return true;
  return hi && *hi <= *outer.hi;
}

std::string Range::to_csv() const {
  if (determined()) return std::to_string(lo);
  return std::to_string(lo) + ";" + (hi ? std::to_string(*hi) : "");
}

std::string Range::to_markdown() const {
  if (determined()) return std::to_string(lo);
  if (!hi) return ">=" + std::to_string(lo);
  std::string s = "{";
  for (int v = lo; v <= *hi; ++v) s += (v > lo ? "," : "") + std::to_string(v);
  return s + "}";
}

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("trailing characters in \"" + s + "\"");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"')
      quoted = !quoted;
    else if (ch == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else
      cur += ch;
  }
  out.push_back(trim(cur));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<Range> parse_range(const std::string& raw) {
  std::string t = trim(raw);
  if (t.empty()) return std::nullopt;
  if (t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  std::replace(t.begin(), t.end(), ',', ';');
  std::vector<int> vals;
  std::stringstream ss(t);
  std::string part;
  bool open_end = false;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) {
      open_end = true;
      continue;
    }
    vals.push_back(to_int(part));
  }
  if (t.back() == ';') open_end = true;
  if (vals.empty()) throw std::invalid_argument("empty range \"" + raw + "\"");
  Range r{*std::min_element(vals.begin(), vals.end()), *std::max_element(vals.begin(), vals.end())};
  if (open_end && vals.size() == 1) r.hi.reset();
  return r;
}

LoadedTable parse_table(const std::string& text) {
  LoadedTable out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty table");
  auto header = split_csv_line(line);
  if (header != std::vector<std::string>{"name", "pd", "signature", "u", "genus"})
    throw Error(ErrorKind::Parse, "expected header name,pd,signature,u,genus, got \"" + trim(line) + "\"");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    KnotRecord r;
    r.line = lineno;
    try {
      if (f.size() != 5) throw std::invalid_argument("expected 5 fields, got " + std::to_string(f.size()));
      r.name = f[0];
      r.pd = f[1];
      if (!f[2].empty()) r.known_signature = to_int(f[2]);
      r.known_u = parse_range(f[3]);
      if (!f[4].empty()) r.known_genus = to_int(f[4]);
      parse_pd(r.pd);
    } catch (const std::exception& e) {
      out.errors.push_back({lineno, f.empty() ? "" : f[0], e.what()});
      continue;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

LoadedTable load_table(const std::string& path) { return parse_table(read_file(path)); }

std::vector<ReferenceKnot> load_references(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  if (split_csv_line(line) != std::vector<std::string>{"name", "pd", "u", "c4"})
    throw Error(ErrorKind::Parse, "expected header name,pd,u,c4 in " + path);
  std::vector<ReferenceKnot> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 4) throw Error(ErrorKind::Parse, "bad reference row \"" + line + "\"");
    out.push_back({f[0], parse_pd(f[1]), to_int(f[3])});
  }
  return out;
}

ReportRow analyze(const KnotRecord& rec, const AnalyzeConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportRow row;
  row.name = rec.name;
  try {
    LinkDiagram d = parse_pd(rec.pd);
    if (has_nugatory(d)) {
      d = reduce_nugatory(d);
      row.provenance.push_back("nugatory crossings removed");
    }
    row.crossings = d.crossing_count();
    row.components = d.component_count();
    auto sn = signature_nullity(d);
    row.sigma = sn.sigma;
    row.nullity = sn.eta;
    if (rec.known_signature && *rec.known_signature != row.sigma)
      throw Error(ErrorKind::Internal, "signature " + std::to_string(row.sigma) + " disagrees with recorded " +
                                           std::to_string(*rec.known_signature));
    row.genus = seifert_genus(d);
    DecideOptions opts;
    opts.jobs = cfg.jobs;
    opts.budget = cfg.budget;
    UnlinkingVerdict v = decide_minimal_unlinking(d, opts);
    row.p = v.p;
    row.obstruction = to_string(v.obstruction);
    row.verdict = to_string(v.result);
    row.witness = v.witness;
    row.unknown = v.unknown;
    row.provenance.insert(row.provenance.end(), v.provenance.begin(), v.provenance.end());
    row.u = Range{*v.u_lower, v.u_upper};
    Range c4{*v.c4_lower, v.c4_upper};
    if (!c4.determined() && !cfg.references.empty()) {
      if (auto rel = reference_relation(d, cfg.references, cfg.relation_budget)) {
        if (rel->c4_upper < c4.lo)
          throw Error(ErrorKind::Internal, "reference bound " + std::to_string(rel->c4_upper) +
                                               " is below the certified lower bound");
        if (!c4.hi || rel->c4_upper < *c4.hi) {
          c4.hi = rel->c4_upper;
          row.provenance.push_back("c4 <= " + std::to_string(rel->c4_upper) + ": one crossing change gives " +
                                   rel->reference);
        }
        row.relation = std::move(rel);
      }
    }
    row.c4 = c4;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (cfg.timings) row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<ReportRow> analyze_all(const std::vector<KnotRecord>& records, const AnalyzeConfig& config, int jobs) {
  const int n = static_cast<int>(records.size());
  std::vector<ReportRow> rows(n);
  jobs = std::max(1, std::min(jobs, n));
  AnalyzeConfig inner = config;
  if (jobs > 1) inner.jobs = 1;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) rows[i] = analyze(records[i], inner);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void check_bounds(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::Internal, r.name + ": " + why); };
    if (!r.u || !r.c4) fail("missing bounds");
    const int p = (std::abs(r.sigma) + r.components - 1) / 2;
    if (r.c4->lo < p) fail("c4 below (|sigma|+k-1)/2");
    if (r.u->lo < r.c4->lo) fail("u lower bound below c4 lower bound");
    if (r.u->hi && r.c4->hi && *r.c4->hi > *r.u->hi) fail("c4 upper bound above u upper bound");
    if (r.u->hi && r.c4->lo > *r.u->hi) fail("c4 exceeds u");
  }
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      long long x = std::stoll(a.substr(i, i2 - i)), y = std::stoll(b.substr(j, j2 - j));
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::string emit_tables(std::vector<ReportRow> rows, TableFormat format) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return natural_less(a.name, b.name); });
  std::ostringstream os;
  if (format == TableFormat::Csv) {
    os << "K,u,c4,sigma,g\n";
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        os << r.name << ",,,,\n";
        continue;
      }
      os << r.name << "," << r.u->to_csv() << "," << r.c4->to_csv() << "," << r.sigma << "," << r.genus << "\n";
    }
  } else {
    os << "| K | u | c4 | σ | g |\n|---|---|---|---|---|\n";
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        os << "| " << r.name << " | error | | | |\n";
        continue;
      }
      os << "| " << r.name << " | " << r.u->to_markdown() << " | " << r.c4->to_markdown() << " | " << r.sigma
         << " | " << r.genus << " |\n";
    }
  }
  return os.str();
}

std::vector<TableRow> parse_table_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (split_csv_line(line) != std::vector<std::string>{"K", "u", "c4", "sigma", "g"})
    throw Error(ErrorKind::Parse, "expected header K,u,c4,sigma,g");
  std::vector<TableRow> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    try {
      if (f.size() != 5) throw std::invalid_argument("expected 5 fields");
      auto u = parse_range(f[1]), c4 = parse_range(f[2]);
      if (!u || !c4) throw std::invalid_argument("missing u or c4");
      out.push_back({f[0], *u, *c4, to_int(f[3]), to_int(f[4])});
    } catch (const std::exception& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TableRow> load_table_rows(const std::string& path) { return parse_table_rows(read_file(path)); }

std::vector<std::string> diff_tables(const std::vector<ReportRow>& rows, const std::vector<TableRow>& expected) {
  std::map<std::string, const ReportRow*> by_name;
  for (const auto& r : rows) by_name[r.name] = &r;
  std::vector<std::string> out;
  for (const auto& e : expected) {
    auto it = by_name.find(e.name);
    if (it == by_name.end()) {
      out.push_back(e.name + ": not computed");
      continue;
    }
    const ReportRow& r = *it->second;
    if (!r.error.empty()) {
      out.push_back(e.name + ": failed (" + r.error + ")");
      continue;
    }
    auto cmp = [&](const char* col, const Range& got, const Range& want) {
      bool ok = want.determined() ? got == want : got.within(want);
      if (!ok) out.push_back(e.name + ": " + col + " " + got.to_csv() + " expected " + want.to_csv());
    };
    cmp("u", *r.u, e.u);
    cmp("c4", *r.c4, e.c4);
    if (r.sigma != e.sigma)
      out.push_back(e.name + ": sigma " + std::to_string(r.sigma) + " expected " + std::to_string(e.sigma));
    if (r.genus != e.genus)
      out.push_back(e.name + ": g " + std::to_string(r.genus) + " expected " + std::to_string(e.genus));
  }
  return out;
}

}  // namespace specalt
