#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_set>

#include "specalt/error.hpp"
#include "specalt/unknotting.hpp"

namespace specalt {

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1: return "R1";
    case MoveKind::R2: return "R2";
    case MoveKind::R3: return "R3";
    case MoveKind::R2Up: return "R2+";
  }
  return "?";
}

std::string to_string(const Move& m) {
  const int arity[] = {1, 2, 2, 5};
  std::string s = to_string(m.kind) + "(";
  for (int i = 0; i < arity[static_cast<int>(m.kind)]; ++i) s += (i ? "," : "") + std::to_string(m.site[i]);
  return s + ")";
}

namespace {

int top_label(const PlanarCode& code) {
  int top = 0;
  for (const auto& q : code.crossings)
    for (int x : q) top = std::max(top, x);
  return top;
}

bool has_kink(const PlanarCode& code, int c) {
  const auto& q = code.crossings[c];
  for (int i = 0; i < 4; ++i)
    if (q[i] == q[(i + 1) % 4]) return true;
  return false;
}

// Bigon whose first edge is over (or under) at both ends.
bool is_r2_bigon(const EdgeTable& et, const std::vector<Dart>& f) {
  if (f.size() != 2 || f[0].crossing == f[1].crossing) return false;
  Dart end = et.across(f[0]);
  return (f[0].slot & 1) == (end.slot & 1);
}

// Triangle with one strand over (equivalently one under) at both its crossings.
bool is_r3_triangle(const EdgeTable& et, const std::vector<Dart>& f) {
  if (f.size() != 3) return false;
  if (f[0].crossing == f[1].crossing || f[1].crossing == f[2].crossing || f[0].crossing == f[2].crossing)
    return false;
  for (const auto& d : f)
    if ((d.slot & 1) == (et.across(d).slot & 1)) return true;
  return false;
}

void check(bool ok, const Move& m) {
  if (!ok) throw Error(ErrorKind::InvalidDiagram, "move " + to_string(m) + " does not apply");
}

std::optional<Move> first_reduction(const PlanarCode& code) {
  for (int c = 0; c < code.size(); ++c)
    if (has_kink(code, c)) return Move{MoveKind::R1, {c}};
  if (code.size() < 2) return std::nullopt;
  FaceData fd = trace_faces(code);
  EdgeTable et(code);
  for (const auto& f : fd.faces)
    if (is_r2_bigon(et, f))
      return Move{MoveKind::R2, {std::min(f[0].crossing, f[1].crossing), std::max(f[0].crossing, f[1].crossing)}};
  return std::nullopt;
}

void list_moves(const PlanarCode& code, bool creations, std::vector<Move>& out) {
  out.clear();
  for (int c = 0; c < code.size(); ++c)
    if (has_kink(code, c)) out.push_back({MoveKind::R1, {c}});
  if (code.size() == 0) return;
  FaceData fd = trace_faces(code);
  EdgeTable et(code);
  for (const auto& f : fd.faces) {
    if (is_r2_bigon(et, f)) {
      Move m{MoveKind::R2, {std::min(f[0].crossing, f[1].crossing), std::max(f[0].crossing, f[1].crossing)}};
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  for (const auto& f : fd.faces)
    if (is_r3_triangle(et, f)) out.push_back({MoveKind::R3, {f[0].crossing, f[0].slot}});
  if (!creations) return;
  for (const auto& f : fd.faces)
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        if (code.crossings[f[i].crossing][f[i].slot] == code.crossings[f[j].crossing][f[j].slot]) continue;
        for (int top = 0; top < 2; ++top)
          out.push_back({MoveKind::R2Up, {f[i].crossing, f[i].slot, f[j].crossing, f[j].slot, top}});
      }
}

}  // namespace

PlanarCode apply_move(const PlanarCode& code, const Move& m) {
  const int n = code.size();
  auto in_range = [&](int c) { return c >= 0 && c < n; };
  PlanarCode out;
  switch (m.kind) {
    case MoveKind::R1: {
      const int c = m.site[0];
      check(in_range(c) && has_kink(code, c), m);
      out = remove_crossings(code, std::array{c});
      break;
    }
    case MoveKind::R2: {
      const int a = m.site[0], b = m.site[1];
      check(in_range(a) && in_range(b) && a != b, m);
      FaceData fd = trace_faces(code);
      EdgeTable et(code);
      bool found = false;
      for (const auto& f : fd.faces)
        if (is_r2_bigon(et, f) && std::minmax(f[0].crossing, f[1].crossing) == std::minmax(a, b)) found = true;
      check(found, m);
      out = remove_crossings(code, std::array{a, b});
      break;
    }
    case MoveKind::R3: {
      const int c = m.site[0], s = m.site[1];
      check(in_range(c) && s >= 0 && s < 4, m);
      FaceData fd = trace_faces(code);
      EdgeTable et(code);
      const auto& f = fd.faces[fd.corner_face[c][s]];
      check(is_r3_triangle(et, f), m);
      out = code;
      for (const auto& d : f) {
        Dart e = et.across(d);
        const int x = code.crossings[d.crossing][d.slot];
        const int oi = code.crossings[d.crossing][(d.slot + 2) % 4];
        const int oj = code.crossings[e.crossing][(e.slot + 2) % 4];
        out.crossings[d.crossing][d.slot] = oj;
        out.crossings[e.crossing][e.slot] = oi;
        out.crossings[d.crossing][(d.slot + 2) % 4] = x;
        out.crossings[e.crossing][(e.slot + 2) % 4] = x;
      }
      out = compact_labels(out);
      break;
    }
    case MoveKind::R2Up: {
      const Dart a{m.site[0], m.site[1]}, b{m.site[2], m.site[3]};
      check(in_range(a.crossing) && in_range(b.crossing) && a.slot >= 0 && a.slot < 4 && b.slot >= 0 &&
                b.slot < 4 && (m.site[4] == 0 || m.site[4] == 1),
            m);
      FaceData fd = trace_faces(code);
      check(fd.corner_face[a.crossing][a.slot] == fd.corner_face[b.crossing][b.slot], m);
      const int ea = code.crossings[a.crossing][a.slot], eb = code.crossings[b.crossing][b.slot];
      check(ea != eb, m);
      EdgeTable et(code);
      Dart a_end = et.across(a), b_end = et.across(b);
      const int top = top_label(code);
      const int e1a = ea, e1b = top + 1, e1c = top + 2;
      const int e2a = eb, e2b = top + 3, e2c = top + 4;
      out = code;
      out.crossings[a_end.crossing][a_end.slot] = e1c;
      out.crossings[b_end.crossing][b_end.slot] = e2c;
      // second strand under at both new crossings
      Quad P{e2b, e1b, e2c, e1a}, Q{e2a, e1b, e2b, e1c};
      if (m.site[4] == 1) {
        std::rotate(P.begin(), P.begin() + 1, P.end());
        std::rotate(Q.begin(), Q.begin() + 1, Q.end());
      }
      out.crossings.push_back(P);
      out.crossings.push_back(Q);
      out = compact_labels(out);
      break;
    }
  }
  validate(out);
  return out;
}

std::vector<PlanarCode> replay(const PlanarCode& code, const std::vector<Move>& log) {
  std::vector<PlanarCode> out{compact_labels(code)};
  for (const auto& m : log) out.push_back(apply_move(out.back(), m));
  return out;
}

namespace {

constexpr IsoOptions kLoose{true, true};

using Goal = std::function<bool(const PlanarCode&)>;

// Best-first search by crossing count over diagrams with at most `limit`
// crossings. Returns the move path to the first state satisfying `goal`.
std::optional<std::vector<Move>> best_first(const PlanarCode& start, int limit, const Goal& goal,
                                            std::uint64_t& budget, SimplifyStats& st) {
  if (goal(start)) return std::vector<Move>{};
  std::vector<int> parent{-1};
  std::vector<Move> via{Move{}};
  std::vector<PlanarCode> codes{start};
  std::unordered_set<std::uint64_t> seen{canonical_hash(start, kLoose)};
  using Key = std::pair<int, std::uint64_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;
  open.push({start.size(), 0});
  std::vector<Move> moves;
  auto path_to = [&](int id) {
    std::vector<Move> path;
    for (; id > 0; id = parent[id]) path.push_back(via[id]);
    std::reverse(path.begin(), path.end());
    return path;
  };
  while (!open.empty()) {
    const int id = static_cast<int>(open.top().second);
    open.pop();
    PlanarCode cur = std::move(codes[id]);
    codes[id] = PlanarCode{};
    ++st.expanded;
    list_moves(cur, cur.size() + 2 <= limit, moves);
    for (const auto& m : moves) {
      PlanarCode next;
      try {
        next = apply_move(cur, m);
      } catch (const Error&) {
        continue;
      }
      if (!seen.insert(canonical_hash(next, kLoose)).second) {
        ++st.dedup;
        continue;
      }
      ++st.states;
      const int nid = static_cast<int>(parent.size());
      parent.push_back(id);
      via.push_back(m);
      if (goal(next)) return path_to(nid);
      codes.push_back(std::move(next));
      open.push({codes.back().size(), static_cast<std::uint64_t>(nid)});
      if (budget == 0 || --budget == 0) {
        st.exhausted = true;
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

void greedy(SimplifyResult& res) {
  while (auto m = first_reduction(res.code)) {
    res.code = apply_move(res.code, *m);
    res.log.push_back(*m);
  }
}

}  // namespace

SimplifyResult reidemeister_simplify(const PlanarCode& code, const SimplifyBudget& budget) {
  SimplifyResult res;
  res.code = compact_labels(code);
  greedy(res);
  std::uint64_t left = budget.nodes;
  while (res.code.size() > 0 && left > 0) {
    const int n0 = res.code.size();
    auto path = best_first(res.code, n0 + budget.extra, [n0](const PlanarCode& c) { return c.size() < n0; }, left,
                           res.stats);
    if (!path) break;
    for (const auto& m : *path) {
      res.code = apply_move(res.code, m);
      res.log.push_back(m);
    }
    greedy(res);
  }
  return res;
}

std::optional<std::vector<Move>> find_isotopy(const PlanarCode& from, const PlanarCode& target,
                                              const SimplifyBudget& budget) {
  const auto want = canonical_code(target, kLoose);
  const int tn = target.size();
  auto hit = [&](const PlanarCode& c) { return c.size() == tn && canonical_code(c, kLoose) == want; };
  SimplifyResult res;
  res.code = compact_labels(from);
  if (hit(res.code)) return std::vector<Move>{};
  greedy(res);
  std::uint64_t left = budget.nodes;
  // Descend to the target crossing number first.
  while (res.code.size() > tn && left > 0) {
    const int n0 = res.code.size();
    auto path = best_first(res.code, n0 + budget.extra,
                           [&](const PlanarCode& c) { return c.size() < n0 || hit(c); }, left, res.stats);
    if (!path) return std::nullopt;
    for (const auto& m : *path) {
      res.code = apply_move(res.code, m);
      res.log.push_back(m);
    }
    if (hit(res.code)) return res.log;
    greedy(res);
  }
  if (res.code.size() < tn) return std::nullopt;
  if (hit(res.code)) return res.log;
  auto path = best_first(res.code, tn + budget.extra, hit, left, res.stats);
  if (!path) return std::nullopt;
  res.log.insert(res.log.end(), path->begin(), path->end());
  return res.log;
}

}  // namespace specalt
