#include "specalt/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "specalt/error.hpp"

namespace specalt {

IntMatrix LatticeEmbedding::full_matrix() const {
  IntMatrix full;
  full.emplace_back(target_dim, 0);
  for (const auto& row : images) {
    for (int j = 0; j < target_dim; ++j) full[0][j] -= row[j];
    full.push_back(row);
  }
  return full;
}

namespace {

int isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return static_cast<int>(r);
}

struct Search {
  IntMatrix g;  // permuted gram
  int r = 0, n = 0;
  std::vector<int> perm;  // search row t is generator perm[t]

  // State of one DFS (one per worker).
  struct State {
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<char>> same_prev;  // per level: column equals previous on prefix
    std::vector<std::vector<char>> zero;       // per level: prefix all zero
    std::uint64_t nodes = 0, emitted = 0;
  };

  void init_state(State& s) const {
    s.rows.assign(r, std::vector<int>(n, 0));
    s.same_prev.assign(r + 1, std::vector<char>(n, 0));
    s.zero.assign(r + 1, std::vector<char>(n, 1));
    for (int j = 1; j < n; ++j) s.same_prev[0][j] = 1;
  }

  void advance_blocks(State& s, int t) const {
    for (int j = 0; j < n; ++j) {
      s.zero[t + 1][j] = s.zero[t][j] && s.rows[t][j] == 0;
      s.same_prev[t + 1][j] = j > 0 && s.same_prev[t][j] && s.rows[t][j] == s.rows[t][j - 1];
    }
  }

  // Enumerates row t; `emit(state)` is called for each completed matrix of
  // depth `stop` and returns false to abort.
  template <typename Emit>
  bool place(State& s, int t, int stop, Emit& emit) const {
    if (t == stop) {
      ++s.emitted;
      return emit(s);
    }
    ++s.nodes;
    const std::int64_t norm = g[t][t];
    std::vector<std::vector<std::int64_t>> tail(t, std::vector<std::int64_t>(n + 1, 0));
    for (int q = 0; q < t; ++q)
      for (int j = n - 1; j >= 0; --j) tail[q][j] = tail[q][j + 1] + std::int64_t(s.rows[q][j]) * s.rows[q][j];
    std::vector<std::int64_t> partial(t, 0);
    auto& x = s.rows[t];
    const auto& same = s.same_prev[t];
    const auto& zero = s.zero[t];
    bool keep_going = true;
    auto dfs = [&](auto&& self, int j, std::int64_t rem) -> void {
      if (!keep_going) return;
      if (j == n) {
        if (rem != 0) return;
        for (int q = 0; q < t; ++q)
          if (partial[q] != g[t][q]) return;
        advance_blocks(s, t);
        if (!place(s, t + 1, stop, emit)) keep_going = false;
        return;
      }
      int hi = isqrt(rem);
      int lo = zero[j] ? 0 : -hi;
      if (same[j]) hi = std::min(hi, x[j - 1]);
      for (int v = hi; v >= lo && keep_going; --v) {
        const std::int64_t rem2 = rem - std::int64_t(v) * v;
        bool ok = true;
        for (int q = 0; q < t && ok; ++q) {
          const std::int64_t p2 = partial[q] + std::int64_t(v) * s.rows[q][j];
          const std::int64_t diff = g[t][q] - p2;
          ok = diff * diff <= rem2 * tail[q][j + 1];
        }
        if (!ok) continue;
        x[j] = v;
        for (int q = 0; q < t; ++q) partial[q] += std::int64_t(v) * s.rows[q][j];
        self(self, j + 1, rem2);
        for (int q = 0; q < t; ++q) partial[q] -= std::int64_t(v) * s.rows[q][j];
      }
      x[j] = 0;
    };
    dfs(dfs, 0, norm);
    return keep_going;
  }

  LatticeEmbedding to_embedding(const State& s) const {
    LatticeEmbedding e;
    e.target_dim = n;
    e.images.assign(r, std::vector<std::int64_t>(n, 0));
    for (int t = 0; t < r; ++t)
      for (int j = 0; j < n; ++j) e.images[perm[t]][j] = s.rows[t][j];
    return e;
  }
};

}  // namespace

std::vector<LatticeEmbedding> enumerate_embeddings(const IntMatrix& gram, int n, const EnumerateOptions& opts,
                                                   SearchStats* stats) {
  if (!is_symmetric(gram)) throw Error(ErrorKind::PreconditionViolated, "gram matrix is not symmetric");
  const int r = static_cast<int>(gram.size());
  if (n < r) throw Error(ErrorKind::TargetTooSmall, "rank " + std::to_string(r) + " lattice cannot embed in Z^" +
                                                        std::to_string(n));
  for (int i = 0; i < r; ++i)
    if (gram[i][i] <= 0) throw Error(ErrorKind::PreconditionViolated, "gram matrix is not positive definite");
  Search sr;
  sr.r = r;
  sr.n = n;
  sr.perm.resize(r);
  std::iota(sr.perm.begin(), sr.perm.end(), 0);
  std::stable_sort(sr.perm.begin(), sr.perm.end(), [&](int a, int b) { return gram[a][a] > gram[b][b]; });
  sr.g = zeros(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) sr.g[a][b] = gram[sr.perm[a]][sr.perm[b]];

  SearchStats local;
  std::vector<LatticeEmbedding> out;
  if (r == 0) {
    LatticeEmbedding e;
    e.target_dim = n;
    if (!opts.accept || opts.accept(e)) out.push_back(e);
    if (stats) *stats = local;
    return out;
  }

  // Split the tree at a shallow depth; subtrees are merged in prefix order.
  const int depth = std::min(r, 2);
  std::vector<std::vector<std::vector<int>>> prefixes;
  {
    Search::State s;
    sr.init_state(s);
    auto collect = [&](Search::State& st) {
      prefixes.emplace_back(st.rows.begin(), st.rows.begin() + depth);
      return true;
    };
    sr.place(s, 0, depth, collect);
    local.nodes += s.nodes;
  }

  const int P = static_cast<int>(prefixes.size());
  std::vector<std::vector<LatticeEmbedding>> found(P);
  std::vector<SearchStats> per(P);
  std::atomic<int> next{0};
  std::atomic<int> first_hit{P};
  auto worker = [&] {
    Search::State s;
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= P) return;
      if (opts.stop_at_first && i > first_hit.load()) continue;
      sr.init_state(s);
      for (int t = 0; t < depth; ++t) {
        s.rows[t] = prefixes[i][t];
        sr.advance_blocks(s, t);
      }
      s.nodes = s.emitted = 0;
      auto emit = [&](Search::State& st) {
        LatticeEmbedding e = sr.to_embedding(st);
        ++per[i].candidates;
        if (opts.accept && !opts.accept(e)) return true;
        found[i].push_back(std::move(e));
        if (opts.stop_at_first) {
          int cur = first_hit.load();
          while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
          }
          return false;
        }
        return true;
      };
      sr.place(s, depth, r, emit);
      per[i].nodes += s.nodes;
      per[i].emitted += s.emitted;
    }
  };
  const int jobs = std::max(1, std::min(opts.jobs, P));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < P; ++i) {
    if (opts.stop_at_first && i > first_hit.load()) break;
    local.nodes += per[i].nodes;
    local.emitted += per[i].emitted;
    local.candidates += per[i].candidates;
    for (auto& e : found[i]) {
      out.push_back(std::move(e));
      if (opts.stop_at_first) break;
    }
    if (opts.stop_at_first && !out.empty()) break;
  }
  if (stats) *stats = local;
  return out;
}

IntMatrix column_canonical(const IntMatrix& m) {
  if (m.empty()) return m;
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  std::vector<std::vector<std::int64_t>> c(cols, std::vector<std::int64_t>(rows));
  for (int j = 0; j < cols; ++j) {
    int sgn = 0;
    for (int i = 0; i < rows && !sgn; ++i)
      if (m[i][j]) sgn = m[i][j] > 0 ? 1 : -1;
    for (int i = 0; i < rows; ++i) c[j][i] = sgn < 0 ? -m[i][j] : m[i][j];
  }
  std::sort(c.begin(), c.end(), std::greater<>());
  IntMatrix out = zeros(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) out[i][j] = c[j][i];
  return out;
}

BigInt orbit_size(const LatticeEmbedding& e) {
  const int n = e.target_dim;
  IntMatrix canon = column_canonical(e.images);
  BigInt group = 1;
  for (int i = 1; i <= n; ++i) group *= 2 * i;
  std::map<std::vector<std::int64_t>, int> classes;
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> col;
    for (const auto& row : canon) col.push_back(row[j]);
    ++classes[col];
  }
  BigInt stab = 1;
  for (const auto& [col, m] : classes) {
    bool is_zero = std::all_of(col.begin(), col.end(), [](std::int64_t v) { return v == 0; });
    for (int i = 1; i <= m; ++i) stab *= is_zero ? 2 * i : i;
  }
  return group / stab;
}

bool condition_all_coords(const LatticeEmbedding& e) {
  for (int j = 0; j < e.target_dim; ++j) {
    bool used = false;
    for (const auto& row : e.images) used |= row[j] != 0;
    if (!used) return false;
  }
  return true;
}

std::optional<CoordinatePairing> find_pairing(const LatticeEmbedding& e, int p) {
  const int n = e.target_dim;
  std::map<std::vector<std::int64_t>, std::vector<std::pair<int, int>>> classes;  // normalised column -> (col, sign)
  std::vector<std::vector<std::int64_t>> order;
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> col;
    int sgn = 0;
    for (const auto& row : e.images) {
      if (!sgn && row[j]) sgn = row[j] > 0 ? 1 : -1;
      col.push_back(row[j]);
    }
    if (sgn < 0)
      for (auto& v : col) v = -v;
    auto [it, ins] = classes.try_emplace(col);
    if (ins) order.push_back(col);
    it->second.emplace_back(j, sgn < 0 ? -1 : 1);
  }
  CoordinatePairing out;
  for (const auto& key : order) {
    const auto& members = classes[key];
    for (std::size_t k = 0; k + 1 < members.size() && static_cast<int>(out.pairs.size()) < p; k += 2)
      out.pairs.push_back({members[k].first, members[k + 1].first, members[k].second * members[k + 1].second});
  }
  if (static_cast<int>(out.pairs.size()) < p) return std::nullopt;
  return out;
}

bool claim1_structure(const LatticeEmbedding& e) {
  IntMatrix full = e.full_matrix();
  for (int j = 0; j < e.target_dim; ++j) {
    int plus = 0, minus = 0;
    for (const auto& row : full) {
      if (row[j] == 1)
        ++plus;
      else if (row[j] == -1)
        ++minus;
      else if (row[j] != 0)
        return false;
    }
    if (plus != 1 || minus != 1) return false;
  }
  return true;
}

bool verify_embedding(const LatticeEmbedding& e, const IntMatrix& gram) {
  for (const auto& row : e.images)
    if (static_cast<int>(row.size()) != e.target_dim) return false;
  return multiply(e.images, transpose(e.images)) == gram;
}

std::string to_string(Obstruction o) {
  switch (o) {
    case Obstruction::Admissible: return "admissible";
    case Obstruction::Obstructed: return "obstructed";
    case Obstruction::ObstructedByParity: return "obstructed-by-parity";
  }
  return "?";
}

ObstructionVerdict obstruction(const LinkDiagram& input, const ObstructionOptions& opts) {
  if (!is_connected(input)) throw Error(ErrorKind::SplitDiagram, "obstruction needs a non-split diagram");
  if (input.crossing_count() == 0) throw Error(ErrorKind::PreconditionViolated, "diagram has no crossings");
  if (has_nugatory(input)) throw Error(ErrorKind::PreconditionViolated, "diagram is not reduced");
  if (!is_alternating(input)) throw Error(ErrorKind::NotAlternating, "obstruction needs an alternating diagram");
  ObstructionVerdict v;
  LinkDiagram d = input;
  int sigma = gl_signature(d, checkerboard_negative(d));
  if (sigma > 0) {
    d = mirror(d);
    sigma = -sigma;
    v.mirrored = true;
  }
  v.sigma = sigma;
  v.lattice = goeritz(d, checkerboard_negative(d));
  v.target_dim = v.lattice.rank - sigma;
  const int k = d.component_count();
  if ((-sigma + k - 1) % 2 != 0) {
    v.kind = Obstruction::ObstructedByParity;
    return v;
  }
  v.p = (-sigma + k - 1) / 2;
  EnumerateOptions eo;
  eo.jobs = opts.jobs;
  eo.stop_at_first = !opts.enumerate_all;
  const int p = v.p;
  eo.accept = [p](const LatticeEmbedding& e) { return condition_all_coords(e) && find_pairing(e, p).has_value(); };
  auto found = enumerate_embeddings(v.lattice.gram, v.target_dim, eo, &v.stats);
  if (found.empty()) {
    v.kind = Obstruction::Obstructed;
    return v;
  }
  v.kind = Obstruction::Admissible;
  v.embedding = found.front();
  v.pairing = find_pairing(*v.embedding, p);
  return v;
}

}  // namespace specalt
