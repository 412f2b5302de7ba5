#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal reader for data/*.csv used by the unit tests, kept separate from
// the library loader so the loader itself can be tested against it.
namespace fixtures {

struct Row {
  std::string name, pd;
  int signature = 0;
  std::string u;
  int genus = 0;
};

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<Row> read(const std::string& file) {
  std::ifstream in(std::string(SPECALT_DATA_DIR) + "/" + file);
  if (!in) throw std::runtime_error("missing fixture " + file);
  std::string line;
  std::getline(in, line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    rows.push_back({f[0], f[1], std::stoi(f[2]), f[3], std::stoi(f[4])});
  }
  return rows;
}

inline std::map<std::string, Row> by_name(const std::string& file) {
  std::map<std::string, Row> m;
  for (auto& r : read(file)) m[r.name] = r;
  return m;
}

inline const Row& knot(const std::string& name) {
  static const auto all = by_name("knots.csv");
  return all.at(name);
}

}  // namespace fixtures
