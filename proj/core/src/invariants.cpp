#include "specalt/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>

#include "specalt/error.hpp"

namespace specalt {

GoeritzLattice goeritz_form(const LinkDiagram& d, const Checkerboard& c) {
  GoeritzLattice g;
  g.crossing_count = d.crossing_count();
  g.region_face = c.white_faces;
  const int m = static_cast<int>(c.white_faces.size());
  if (m == 0) throw Error(ErrorKind::PreconditionViolated, "coloring has no white faces");
  std::map<int, int> idx;
  for (int i = 0; i < m; ++i) idx[c.white_faces[i]] = i;
  g.full = zeros(m, m);
  for (int x = 0; x < d.crossing_count(); ++x) {
    auto [f, h] = c.white_pair[x];
    if (f == h) continue;
    int i = idx.at(f), j = idx.at(h);
    g.full[i][j] += c.incidence[x];
    g.full[j][i] += c.incidence[x];
  }
  for (int i = 0; i < m; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < m; ++j)
      if (j != i) s += g.full[i][j];
    g.full[i][i] = -s;
  }
  g.rank = m - 1;
  g.gram = zeros(g.rank, g.rank);
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < m; ++j) g.gram[i - 1][j - 1] = g.full[i][j];
  return g;
}

GoeritzLattice goeritz(const LinkDiagram& d, const Checkerboard& c) {
  for (int mu : c.incidence)
    if (mu != -1) throw Error(ErrorKind::DegenerateColoring, "coloring has a crossing with incidence +1");
  return goeritz_form(d, c);
}

int gl_correction(const LinkDiagram& d, const Checkerboard& c) {
  int corr = 0;
  for (int x = 0; x < d.crossing_count(); ++x) {
    const int w0 = c.incidence[x] == -1 ? 0 : 1;
    if (d.outgoing(x, w0) != d.outgoing(x, w0 + 1)) corr += c.incidence[x];
  }
  return corr;
}

int gl_signature(const LinkDiagram& d, const Checkerboard& c) {
  return inertia(goeritz_form(d, c).gram).signature() + gl_correction(d, c);
}

namespace {

// Seifert circle id of every edge label.
std::vector<int> seifert_circle_of(const LinkDiagram& d, int& count) {
  const auto& code = d.code();
  int top = 0;
  for (const auto& q : code.crossings)
    for (int x : q) top = std::max(top, x);
  std::vector<int> parent(top + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c = 0; c < code.size(); ++c) {
    const auto& q = code.crossings[c];
    const int o = d.over_in()[c];
    parent[find(q[0])] = find(q[o ^ 2]);
    parent[find(q[o])] = find(q[2]);
  }
  std::vector<int> id(top + 1, -1), out(top + 1, -1);
  count = 0;
  for (const auto& q : code.crossings)
    for (int x : q) {
      int r = find(x);
      if (id[r] < 0) id[r] = count++;
      out[x] = id[r];
    }
  return out;
}

std::array<int, 4> with_incoming_first(std::array<int, 4> q, int under_in, int over_in_label, int& over_slot) {
  if (q[0] != under_in) std::rotate(q.begin(), q.begin() + 2, q.end());
  over_slot = q[1] == over_in_label ? 1 : 3;
  return q;
}

// One Vogel move, if some face still sees two Seifert circles with the
// same orientation relative to its boundary.
bool vogel_move(LinkDiagram& d) {
  int ncirc = 0;
  auto circ = seifert_circle_of(d, ncirc);
  const auto& code = d.code();
  FaceData fd = trace_faces(code);
  for (const auto& face : fd.faces)
    for (std::size_t i = 0; i < face.size(); ++i)
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        Dart a = face[i], b = face[j];
        int ea = code.crossings[a.crossing][a.slot], eb = code.crossings[b.crossing][b.slot];
        if (ea == eb || circ[ea] == circ[eb]) continue;
        bool da = d.outgoing(a.crossing, a.slot), db = d.outgoing(b.crossing, b.slot);
        if (da != db) continue;
        EdgeTable et(code);
        Dart a_end = et.across(a), b_end = et.across(b);
        int top = 0;
        for (const auto& q : code.crossings)
          for (int x : q) top = std::max(top, x);
        const int e1a = ea, e1b = top + 1, e1c = top + 2;
        const int e2a = eb, e2b = top + 3, e2c = top + 4;
        PlanarCode pc = code;
        pc.crossings[a_end.crossing][a_end.slot] = e1c;
        pc.crossings[b_end.crossing][b_end.slot] = e2c;
        std::vector<int> oi = d.over_in();
        int slot = 0;
        Quad P = with_incoming_first({e2b, e1b, e2c, e1a}, db ? e2b : e2c, da ? e1a : e1b, slot);
        pc.crossings.push_back(P);
        oi.push_back(slot);
        Quad Q = with_incoming_first({e2a, e1b, e2b, e1c}, db ? e2a : e2b, da ? e1b : e1c, slot);
        pc.crossings.push_back(Q);
        oi.push_back(slot);
        d = LinkDiagram(compact_labels(pc), std::move(oi));
        return true;
      }
  return false;
}

// Seifert circles of a braided diagram as cyclic crossing sequences.
std::vector<std::vector<int>> circle_sequences(const LinkDiagram& d, std::vector<int>& circ_of_edge) {
  int ncirc = 0;
  circ_of_edge = seifert_circle_of(d, ncirc);
  const auto& code = d.code();
  EdgeTable et(code);
  std::vector<std::vector<int>> seq(ncirc);
  std::vector<char> done(et.max_label() + 1, 0);
  for (int e = 1; e <= et.max_label(); ++e) {
    if (done[e]) continue;
    int cur = e;
    const int cid = circ_of_edge[e];
    while (!done[cur]) {
      done[cur] = 1;
      auto ends = et.ends(cur);
      Dart head = d.outgoing(ends[0].crossing, ends[0].slot) ? ends[1] : ends[0];
      const int c = head.crossing, o = d.over_in()[c];
      int out_slot = head.slot == 0 ? (o ^ 2) : 2;
      seq[cid].push_back(c);
      cur = code.crossings[c][out_slot];
    }
  }
  return seq;
}

}  // namespace

Braid braid_from_diagram(const LinkDiagram& input) {
  if (!is_connected(input)) throw Error(ErrorKind::PreconditionViolated, "braiding needs a connected diagram");
  if (input.crossing_count() == 0) return Braid{1, {}};
  LinkDiagram d = input;
  int moves = 0;
  while (vogel_move(d))
    if (++moves > 10000) throw Error(ErrorKind::Internal, "Vogel moves did not terminate");
  std::vector<int> circ;
  auto seq = circle_sequences(d, circ);
  const int m = static_cast<int>(seq.size());
  // crossing -> its two circles
  std::vector<std::array<int, 2>> ends(d.crossing_count(), {-1, -1});
  for (int i = 0; i < m; ++i)
    for (int c : seq[i]) (ends[c][0] < 0 ? ends[c][0] : ends[c][1]) = i;
  std::vector<std::vector<int>> nbr(m);
  for (const auto& e : ends) {
    if (e[0] == e[1] || e[1] < 0) throw Error(ErrorKind::Internal, "crossing on a single Seifert circle");
    nbr[e[0]].push_back(e[1]);
    nbr[e[1]].push_back(e[0]);
  }
  for (auto& v : nbr) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() > 2) throw Error(ErrorKind::Internal, "Seifert graph is not a path after Vogel moves");
  }
  int start = -1;
  for (int i = 0; i < m; ++i)
    if (nbr[i].size() <= 1) {
      start = i;
      break;
    }
  if (start < 0) throw Error(ErrorKind::Internal, "Seifert graph is a cycle");
  std::vector<int> level(m, -1), path{start};
  level[start] = 0;
  while (static_cast<int>(path.size()) < m) {
    int nxt = -1;
    for (int v : nbr[path.back()])
      if (level[v] < 0) nxt = v;
    if (nxt < 0) throw Error(ErrorKind::Internal, "Seifert graph is disconnected");
    level[nxt] = static_cast<int>(path.size());
    path.push_back(nxt);
  }
  // Linear orders along each circle, cut coherently from the first circle.
  std::vector<std::vector<int>> lists;
  for (int i = 0; i < m; ++i) {
    std::vector<int> s = seq[path[i]];
    if (i > 0) {
      const auto& prev = lists.back();
      int first = -1;
      for (int c : prev)
        if (std::find(s.begin(), s.end(), c) != s.end()) {
          first = c;
          break;
        }
      std::rotate(s.begin(), std::find(s.begin(), s.end(), first), s.end());
    }
    lists.push_back(std::move(s));
  }
  const int n = d.crossing_count();
  std::vector<std::vector<int>> after(n);
  std::vector<int> indeg(n, 0);
  for (const auto& l : lists)
    for (std::size_t k = 0; k + 1 < l.size(); ++k) {
      after[l[k]].push_back(l[k + 1]);
      ++indeg[l[k + 1]];
    }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int c = 0; c < n; ++c)
    if (!indeg[c]) ready.push(c);
  auto signs = crossing_signs(d);
  Braid b;
  b.strands = m;
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    int gen = std::min(level[ends[c][0]], level[ends[c][1]]) + 1;
    b.word.push_back(signs[c] * gen);
    for (int x : after[c])
      if (--indeg[x] == 0) ready.push(x);
  }
  if (static_cast<int>(b.word.size()) != n) throw Error(ErrorKind::Internal, "crossing order has a cycle");
  return b;
}

IntMatrix braid_seifert_matrix(const Braid& b) {
  struct Gen {
    int from, to, sign_from, sign_to, strand;
  };
  std::vector<std::vector<int>> pos(b.strands + 1);
  for (int p = 0; p < static_cast<int>(b.word.size()); ++p) pos[std::abs(b.word[p])].push_back(p);
  std::vector<Gen> gens;
  std::vector<std::vector<int>> by_strand(b.strands + 1);
  auto sgn = [&](int p) { return b.word[p] > 0 ? 1 : -1; };
  for (int s = 1; s < b.strands; ++s)
    for (std::size_t k = 0; k + 1 < pos[s].size(); ++k) {
      by_strand[s].push_back(static_cast<int>(gens.size()));
      gens.push_back({pos[s][k], pos[s][k + 1], sgn(pos[s][k]), sgn(pos[s][k + 1]), s});
    }
  const int g = static_cast<int>(gens.size());
  IntMatrix v = zeros(g, g);
  for (int s = 1; s < b.strands; ++s) {
    const auto& ids = by_strand[s];
    for (int i : ids)
      if (gens[i].sign_from == gens[i].sign_to) v[i][i] = -gens[i].sign_from;
    for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
      int i = ids[k], j = ids[k + 1];
      if (gens[i].sign_to > 0)
        v[j][i] = 1;
      else
        v[i][j] = -1;
    }
    if (s + 1 < b.strands)
      for (int i : ids)
        for (int j : by_strand[s + 1]) {
          const auto &x = gens[i], &y = gens[j];
          if (y.from < x.from && x.from < y.to && y.to < x.to)
            v[j][i] = 1;
          else if (x.from < y.from && y.from < x.to && x.to < y.to)
            v[j][i] = -1;
        }
  }
  return v;
}

IntMatrix seifert_matrix(const LinkDiagram& d) {
  auto parts = split_components(d);
  std::vector<IntMatrix> blocks;
  int size = 0;
  for (const auto& p : parts) {
    if (p.crossing_count() == 0) continue;
    blocks.push_back(braid_seifert_matrix(braid_from_diagram(p)));
    size += static_cast<int>(blocks.back().size());
  }
  const int tubes = parts.empty() ? 0 : static_cast<int>(parts.size()) - 1;
  IntMatrix v = zeros(size + tubes, size + tubes);
  int off = 0;
  for (const auto& bl : blocks) {
    for (std::size_t i = 0; i < bl.size(); ++i)
      for (std::size_t j = 0; j < bl.size(); ++j) v[off + i][off + j] = bl[i][j];
    off += static_cast<int>(bl.size());
  }
  return v;
}

SignatureNullity signature_nullity(const LinkDiagram& d) {
  IntMatrix v = seifert_matrix(d);
  IntMatrix s = v;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s[i][j] = v[i][j] + v[j][i];
  Inertia in = inertia(s);
  return {in.signature(), in.zero};
}

long long determinant(const LinkDiagram& d) {
  if (d.crossing_count() == 0) return d.component_count() == 1 ? 1 : 0;
  if (!is_connected(d)) return 0;
  BigInt det = specalt::determinant(goeritz_form(d, checkerboard_any(d)).gram);
  if (det < 0) det = -det;
  return det.convert_to<long long>();
}

LowerBound unlinking_lower_bound(int sigma, int eta, int k) {
  return {std::abs(sigma) + k - 1, std::abs(sigma) - eta + k - 1};
}

bool euler_check(const LinkDiagram& d, const Checkerboard& c) {
  auto signs = crossing_signs(d);
  if (!is_special_alternating(d) || d.crossing_count() == 0 ||
      std::any_of(signs.begin(), signs.end(), [](int s) { return s != 1; }) || has_nugatory(d))
    throw Error(ErrorKind::PreconditionViolated, "euler_check needs a reduced positive special alternating diagram");
  const int n = d.crossing_count();
  const int r = static_cast<int>(c.white_faces.size()) - 1;
  const int chi = 1 - (n - r);
  const auto sn = signature_nullity(d);
  const int k = d.component_count();
  const LowerBound p = unlinking_lower_bound(sn.sigma, sn.eta, k);
  return chi == 1 + sn.sigma && p.u_integral() && chi == k - 2 * p.u();
}

int seifert_genus(const LinkDiagram& d) {
  const int twice = d.crossing_count() - seifert_circle_count(d) + 2 - d.component_count();
  return twice / 2;
}

}  // namespace specalt
