#include <numeric>
#include <sstream>

#include "specalt/error.hpp"
#include "specalt/unknotting.hpp"

namespace specalt {

Laurent Laurent::monomial(long long c, int e) {
  Laurent l;
  if (c) l.coeff[e] = c;
  return l;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (auto [e, c] : o.coeff)
    if ((r.coeff[e] += c) == 0) r.coeff.erase(e);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (auto [e1, c1] : coeff)
    for (auto [e2, c2] : o.coeff) r.coeff[e1 + e2] += c1 * c2;
  std::erase_if(r.coeff, [](const auto& kv) { return kv.second == 0; });
  return r;
}

std::string Laurent::to_string() const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    long long a = c < 0 ? -c : c;
    if (a != 1 || e == 0) os << a;
    if (e != 0) os << "A" << (e == 1 ? "" : "^" + std::to_string(e));
  }
  return os.str();
}

namespace {

Laurent delta_power(int k) {
  static const Laurent delta = Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2);
  Laurent r = Laurent::monomial(1, 0);
  for (int i = 0; i < k; ++i) r = r * delta;
  return r;
}

}  // namespace

Laurent kauffman_bracket(const PlanarCode& input) {
  const PlanarCode code = compact_labels(input);
  const int n = code.size();
  if (n > 24) throw Error(ErrorKind::PreconditionViolated, "state sum limited to 24 crossings");
  int top = 0;
  for (const auto& q : code.crossings)
    for (int x : q) top = std::max(top, x);
  // (a - b, loop count) -> number of states
  std::map<std::pair<int, int>, long long> tally;
  std::vector<int> parent(top + 1);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t state = 0; state < (1u << n); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    int loops = top;
    auto join = [&](int a, int b) {
      a = find(a), b = find(b);
      if (a != b) {
        parent[a] = b;
        --loops;
      }
    };
    int a_count = 0;
    for (int c = 0; c < n; ++c) {
      const auto& q = code.crossings[c];
      if (state >> c & 1) {  // B smoothing
        join(q[0], q[3]);
        join(q[1], q[2]);
      } else {
        ++a_count;
        join(q[0], q[1]);
        join(q[2], q[3]);
      }
    }
    ++tally[{a_count - (n - a_count), loops + code.free_loops}];
  }
  Laurent out;
  for (const auto& [key, count] : tally) {
    auto [exp, loops] = key;
    out = out + Laurent::monomial(count, exp) * delta_power(loops - 1);
  }
  return out;
}

Laurent unlink_bracket(int k) { return delta_power(std::max(k, 1) - 1); }

Laurent normalized_bracket(const LinkDiagram& d) {
  const int w = writhe(d);
  // (-A^3)^(-w)
  Laurent f = Laurent::monomial((w % 2 == 0) ? 1 : -1, -3 * w);
  return f * kauffman_bracket(d.code());
}

std::map<int, long long> jones_quarter(const LinkDiagram& d) {
  // A = t^(-1/4)
  std::map<int, long long> out;
  for (auto [e, c] : normalized_bracket(d).coeff) out[-e] = c;
  return out;
}

}  // namespace specalt
