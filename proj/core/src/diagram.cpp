#include "specalt/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "specalt/error.hpp"

namespace specalt {

namespace {

struct Pass {
  int crossing;
  int in_slot;
};

// Strands of an unoriented code, each as its cyclic list of passes read in
// the direction that enters the first pass through its lower slot.
std::vector<std::vector<Pass>> trace_strands(const PlanarCode& code) {
  EdgeTable et(code);
  std::vector<std::array<char, 2>> seen(code.size(), {0, 0});
  std::vector<std::vector<Pass>> out;
  for (int c = 0; c < code.size(); ++c)
    for (int par = 0; par < 2; ++par) {
      if (seen[c][par]) continue;
      std::vector<Pass> strand;
      Pass p{c, par};
      while (!seen[p.crossing][p.in_slot & 1]) {
        seen[p.crossing][p.in_slot & 1] = 1;
        strand.push_back(p);
        Dart a = et.across({p.crossing, (p.in_slot + 2) % 4});
        p = Pass{a.crossing, a.slot};
      }
      out.push_back(std::move(strand));
    }
  return out;
}

}  // namespace

LinkDiagram::LinkDiagram(PlanarCode code, std::vector<int> over_in)
    : code_(std::move(code)), over_in_(std::move(over_in)) {
  if (static_cast<int>(over_in_.size()) != code_.size())
    throw Error(ErrorKind::InvalidDiagram, "orientation size mismatch");
  for (int o : over_in_)
    if (o != 1 && o != 3) throw Error(ErrorKind::InvalidDiagram, "over-strand must enter at slot 1 or 3");
  EdgeTable et(code_);
  strand_comp_.assign(code_.size(), {-1, -1});
  int comp = 0;
  for (int c = 0; c < code_.size(); ++c)
    for (int par = 0; par < 2; ++par) {
      if (strand_comp_[c][par] >= 0) continue;
      int cc = c, in = par == 0 ? 0 : over_in_[c];
      while (strand_comp_[cc][in == 0 || in == 2 ? 0 : 1] < 0) {
        strand_comp_[cc][in == 0 || in == 2 ? 0 : 1] = comp;
        Dart a = et.across({cc, (in + 2) % 4});
        if (a.slot != 0 && a.slot != over_in_[a.crossing])
          throw Error(ErrorKind::InvalidDiagram, "edge " + std::to_string(code_.crossings[cc][(in + 2) % 4]) +
                                                     " is outgoing at both ends");
        cc = a.crossing;
        in = a.slot;
      }
      ++comp;
    }
  components_ = comp + code_.free_loops;
}

LinkDiagram LinkDiagram::unlink(int k) {
  PlanarCode pc;
  pc.free_loops = k;
  return LinkDiagram(pc, {});
}

namespace {

LinkDiagram orient_impl(const PlanarCode& code, const OrientationOverride& flips, bool strict) {
  validate(code);
  auto strands = trace_strands(code);
  std::vector<int> rotate(code.size(), 0);  // quads needing a half turn
  std::vector<int> over_in(code.size(), 0);
  for (std::size_t k = 0; k < strands.size(); ++k) {
    const auto& s = strands[k];
    int forward = strict ? -1 : 1;
    for (const auto& p : s)
      if (strict && (p.in_slot & 1) == 0) {
        int f = p.in_slot == 0 ? 1 : 0;
        if (forward >= 0 && forward != f)
          throw Error(ErrorKind::InvalidDiagram, "under-strand directions along a component disagree");
        forward = f;
      }
    if (forward < 0) {
      // Component never passes under: follow increasing labels.
      const auto& q = code.crossings[s.front().crossing];
      int in = q[s.front().in_slot], out = q[(s.front().in_slot + 2) % 4];
      forward = (out == in + 1 || (in > out + 1)) ? 1 : 0;
    }
    if (k < flips.size() && flips[k]) forward ^= 1;
    for (const auto& p : s) {
      int in = forward ? p.in_slot : (p.in_slot + 2) % 4;
      if ((in & 1) == 0)
        rotate[p.crossing] = in == 2;
      else
        over_in[p.crossing] = in;
    }
  }
  PlanarCode pc = code;
  for (int c = 0; c < pc.size(); ++c)
    if (rotate[c]) {
      auto& q = pc.crossings[c];
      std::rotate(q.begin(), q.begin() + 2, q.end());
      over_in[c] = (over_in[c] + 2) % 4;
    }
  return LinkDiagram(std::move(pc), std::move(over_in));
}

}  // namespace

LinkDiagram orient(const PlanarCode& code, const OrientationOverride& flips) { return orient_impl(code, flips, true); }

LinkDiagram orient_any(const PlanarCode& code) { return orient_impl(code, {}, false); }

namespace {

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos, const std::string& why) {
  throw Error(ErrorKind::Parse, why + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
}

}  // namespace

LinkDiagram parse_pd(std::string_view text, const OrientationOverride& flips) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip();
  bool wrapped = false;
  if (text.substr(i, 3) == "PD[") {
    wrapped = true;
    i += 3;
  }
  PlanarCode pc;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    if (text[i] == ']' && wrapped) {
      ++i;
      wrapped = false;
      skip();
      if (i != text.size()) parse_fail(text, i, "trailing input");
      break;
    }
    if (text[i] != 'X' || i + 1 >= text.size() || text[i + 1] != '[') parse_fail(text, i, "expected X[");
    i += 2;
    std::vector<int> vals;
    for (;;) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) parse_fail(text, i, "expected edge label");
      vals.push_back(std::stoi(std::string(text.substr(start, i - start))));
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        ++i;
        break;
      }
      parse_fail(text, i, "expected , or ]");
    }
    if (vals.size() != 4) parse_fail(text, i, "crossing with " + std::to_string(vals.size()) + " labels");
    pc.crossings.push_back({vals[0], vals[1], vals[2], vals[3]});
  }
  if (wrapped) parse_fail(text, i, "unterminated PD[");
  if (pc.crossings.empty()) parse_fail(text, 0, "no crossings");
  return orient(pc, flips);
}

LinkDiagram parse_dt(std::string_view text) {
  std::vector<int> dt;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (text[i] == '-' || text[i] == '+') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      parse_fail(text, start, "expected integer");
    dt.push_back(std::stoi(std::string(text.substr(start, i - start))));
  }
  const int n = static_cast<int>(dt.size());
  if (n == 0) parse_fail(text, 0, "empty code");
  std::vector<char> used(2 * n + 1, 0);
  for (int x : dt) {
    int a = std::abs(x);
    if (a % 2) throw Error(ErrorKind::Parse, "odd entry " + std::to_string(x));
    if (a < 2 || a > 2 * n || used[a]) throw Error(ErrorKind::Parse, "entries are not a permutation of 2..2n");
    used[a] = 1;
  }
  auto edge_in = [&](int pos) { return pos == 1 ? 2 * n : pos - 1; };
  std::vector<int> under(n), over(n);
  for (int k = 0; k < n; ++k) {
    int odd = 2 * k + 1, even = std::abs(dt[k]);
    if (dt[k] > 0) {
      under[k] = even;
      over[k] = odd;
    } else {
      under[k] = odd;
      over[k] = even;
    }
  }
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    PlanarCode pc;
    std::vector<int> oi(n);
    for (int k = 0; k < n; ++k) {
      int u = under[k], o = over[k];
      bool left = k > 0 && ((mask >> (k - 1)) & 1);
      if (left) {
        pc.crossings.push_back({edge_in(u), edge_in(o), u, o});
        oi[k] = 1;
      } else {
        pc.crossings.push_back({edge_in(u), o, u, edge_in(o)});
        oi[k] = 3;
      }
    }
    try {
      validate(pc);
    } catch (const Error&) {
      continue;
    }
    return LinkDiagram(std::move(pc), std::move(oi));
  }
  throw Error(ErrorKind::Parse, "DT code has no planar realization");
}

FaceData faces(const LinkDiagram& d) { return trace_faces(d.code()); }

bool is_connected(const LinkDiagram& d) {
  if (d.crossing_count() == 0) return d.component_count() == 1;
  return d.code().free_loops == 0 && pieces(d.code()).size() == 1;
}

bool is_alternating(const LinkDiagram& d) {
  for (const auto& s : trace_strands(d.code()))
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& a = s[i];
      const auto& b = s[(i + 1) % s.size()];
      if (s.size() > 1 && (a.in_slot & 1) == (b.in_slot & 1)) return false;
      if (s.size() == 1) return false;  // a strand meeting only one crossing once
    }
  return true;
}

Checkerboard coloring_with_incidence(const LinkDiagram& d, int target) {
  if (!is_connected(d) || d.crossing_count() == 0)
    throw Error(ErrorKind::PreconditionViolated, "checkerboard needs a connected diagram with crossings");
  FaceData fd = faces(d);
  const int F = static_cast<int>(fd.faces.size());
  std::vector<int> color(F, -1);  // 1 white, 0 black
  const int w0 = target < 0 ? 0 : 1;
  Checkerboard cb;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int q = 0; q < 4; ++q) {
      int want = (q % 2 == w0 % 2) ? 1 : 0;
      int f = fd.corner_face[c][q];
      if (color[f] >= 0 && color[f] != want)
        throw Error(ErrorKind::NotAlternating, "no coloring with incidence " + std::to_string(target) +
                                                   " at every crossing");
      color[f] = want;
    }
  cb.white.resize(F);
  for (int f = 0; f < F; ++f) {
    cb.white[f] = color[f] == 1;
    if (cb.white[f]) cb.white_faces.push_back(f);
  }
  cb.incidence.assign(d.crossing_count(), target);
  for (int c = 0; c < d.crossing_count(); ++c)
    cb.white_pair.push_back({fd.corner_face[c][w0], fd.corner_face[c][w0 + 2]});
  return cb;
}

Checkerboard checkerboard_negative(const LinkDiagram& d) { return coloring_with_incidence(d, -1); }

Checkerboard checkerboard_any(const LinkDiagram& d) {
  if (!is_connected(d) || d.crossing_count() == 0)
    throw Error(ErrorKind::PreconditionViolated, "checkerboard needs a connected diagram with crossings");
  FaceData fd = faces(d);
  const int F = static_cast<int>(fd.faces.size());
  std::vector<std::vector<int>> adj(F);
  for (const auto& cf : fd.corner_face)
    for (int q = 0; q < 4; ++q) {
      adj[cf[q]].push_back(cf[(q + 1) % 4]);
      adj[cf[(q + 1) % 4]].push_back(cf[q]);
    }
  std::vector<int> color(F, -1);
  const int root = fd.corner_face[0][0];
  color[root] = 1;
  std::vector<int> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int g : adj[queue[i]]) {
      if (color[g] < 0) {
        color[g] = 1 - color[queue[i]];
        queue.push_back(g);
      } else if (color[g] == color[queue[i]]) {
        throw Error(ErrorKind::InvalidDiagram, "faces are not two-colourable");
      }
    }
  Checkerboard cb;
  cb.white.resize(F);
  for (int f = 0; f < F; ++f) {
    cb.white[f] = color[f] == 1;
    if (cb.white[f]) cb.white_faces.push_back(f);
  }
  for (int c = 0; c < d.crossing_count(); ++c) {
    const int w0 = cb.white[fd.corner_face[c][0]] ? 0 : 1;
    cb.incidence.push_back(w0 == 0 ? -1 : 1);
    cb.white_pair.push_back({fd.corner_face[c][w0], fd.corner_face[c][w0 + 2]});
  }
  return cb;
}

std::vector<int> crossing_signs(const LinkDiagram& d) {
  std::vector<int> s(d.crossing_count());
  for (int c = 0; c < d.crossing_count(); ++c) s[c] = d.over_in()[c] == 3 ? 1 : -1;
  return s;
}

int writhe(const LinkDiagram& d) {
  auto s = crossing_signs(d);
  return std::accumulate(s.begin(), s.end(), 0);
}

bool is_special_alternating(const LinkDiagram& d) {
  if (!is_connected(d)) return false;
  if (d.crossing_count() == 0) return true;
  if (!is_alternating(d)) return false;
  auto s = crossing_signs(d);
  return std::all_of(s.begin(), s.end(), [&](int x) { return x == s[0]; });
}

int seifert_circle_count(const LinkDiagram& d) {
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
    int o = d.over_in()[c];
    parent[find(q[0])] = find(q[o ^ 2]);
    parent[find(q[o])] = find(q[2]);
  }
  std::set<int> roots;
  for (const auto& q : code.crossings)
    for (int x : q) roots.insert(find(x));
  return static_cast<int>(roots.size()) + code.free_loops;
}

namespace {

// Crossings reachable from c through slots `a` and `b` without passing c.
std::vector<int> side_of(const PlanarCode& code, const EdgeTable& et, int c, int a, int b) {
  std::vector<char> seen(code.size(), 0);
  seen[c] = 1;
  std::vector<int> out;
  for (int s : {a, b}) {
    int nb = et.across({c, s}).crossing;
    if (!seen[nb]) {
      seen[nb] = 1;
      out.push_back(nb);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s = 0; s < 4; ++s) {
      int nb = et.across({out[i], s}).crossing;
      if (!seen[nb]) {
        seen[nb] = 1;
        out.push_back(nb);
      }
    }
  return out;
}

// One nugatory crossing and the slot q with corners q, q+2 in one face.
std::optional<std::pair<int, int>> find_nugatory(const LinkDiagram& d) {
  if (d.crossing_count() == 0) return std::nullopt;
  FaceData fd = faces(d);
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int q = 0; q < 2; ++q)
      if (fd.corner_face[c][q] == fd.corner_face[c][q + 2]) return std::make_pair(c, q);
  return std::nullopt;
}

}  // namespace

bool has_nugatory(const LinkDiagram& d) { return find_nugatory(d).has_value(); }

LinkDiagram reduce_nugatory(const LinkDiagram& d) {
  LinkDiagram cur = d;
  while (auto hit = find_nugatory(cur)) {
    auto [c, q] = *hit;
    const auto& code = cur.code();
    EdgeTable et(code);
    auto a = side_of(code, et, c, (q + 1) % 4, (q + 2) % 4);
    auto b = side_of(code, et, c, (q + 3) % 4, q);
    const auto& flip = a.size() < b.size() ? a : b;
    PlanarCode pc = code;
    std::vector<int> oi = cur.over_in();
    for (int x : flip) {
      // Half turn of the tangle about an axis in the plane.
      const Quad o = pc.crossings[x];
      if (oi[x] == 3) {
        pc.crossings[x] = {o[3], o[2], o[1], o[0]};
        oi[x] = 3;
      } else {
        pc.crossings[x] = {o[1], o[0], o[3], o[2]};
        oi[x] = 1;
      }
    }
    int removed[] = {c};
    PlanarCode next = remove_crossings(pc, removed);
    oi.erase(oi.begin() + c);
    cur = LinkDiagram(std::move(next), std::move(oi));
  }
  return cur;
}

TwistDecomposition twist_regions(const LinkDiagram& d) {
  const int n = d.crossing_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (n > 0)
    for (const auto& f : faces(d).faces)
      if (f.size() == 2 && f[0].crossing != f[1].crossing) parent[find(f[0].crossing)] = find(f[1].crossing);
  TwistDecomposition td;
  td.region_of.assign(n, -1);
  std::map<int, int> id;
  for (int c = 0; c < n; ++c) {
    auto [it, ins] = id.try_emplace(find(c), static_cast<int>(td.regions.size()));
    if (ins) td.regions.emplace_back();
    td.regions[it->second].push_back(c);
    td.region_of[c] = it->second;
  }
  return td;
}

bool is_twist_reduced(const LinkDiagram& d) {
  if (d.crossing_count() == 0) return true;
  auto td = twist_regions(d);
  FaceData fd = faces(d);
  std::map<std::pair<int, int>, int> region_for_pair;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int q = 0; q < 2; ++q) {
      int f = fd.corner_face[c][q], g = fd.corner_face[c][q + 2];
      if (f == g) continue;
      auto key = std::minmax(f, g);
      auto [it, ins] = region_for_pair.try_emplace({key.first, key.second}, td.region_of[c]);
      if (!ins && it->second != td.region_of[c]) return false;
    }
  return true;
}

LinkDiagram change_crossings(const LinkDiagram& d, std::span<const int> subset) {
  std::vector<char> flip(d.crossing_count(), 0);
  for (int c : subset) {
    if (c < 0 || c >= d.crossing_count())
      throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c) + " of " +
                                                  std::to_string(d.crossing_count()));
    flip[c] = 1;
  }
  PlanarCode pc = d.code();
  std::vector<int> oi = d.over_in();
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (!flip[c]) continue;
    const Quad o = pc.crossings[c];
    if (oi[c] == 1) {
      pc.crossings[c] = {o[1], o[2], o[3], o[0]};
      oi[c] = 3;
    } else {
      pc.crossings[c] = {o[3], o[0], o[1], o[2]};
      oi[c] = 1;
    }
  }
  return LinkDiagram(std::move(pc), std::move(oi));
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<int> all(d.crossing_count());
  std::iota(all.begin(), all.end(), 0);
  return change_crossings(d, all);
}

std::vector<LinkDiagram> split_components(const LinkDiagram& d) {
  std::vector<LinkDiagram> out;
  if (d.crossing_count() > 0)
    for (const auto& piece : pieces(d.code())) {
      PlanarCode pc = compact_labels(sub_code(d.code(), piece));
      std::vector<int> oi;
      for (int c : piece) oi.push_back(d.over_in()[c]);
      out.emplace_back(std::move(pc), std::move(oi));
    }
  for (int i = 0; i < d.code().free_loops; ++i) out.push_back(LinkDiagram::unlink(1));
  return out;
}

LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b) {
  int shift = 0;
  for (const auto& q : a.code().crossings)
    for (int x : q) shift = std::max(shift, x);
  PlanarCode pc = a.code();
  for (Quad q : b.code().crossings) {
    for (int& x : q) x += shift;
    pc.crossings.push_back(q);
  }
  pc.free_loops += b.code().free_loops;
  std::vector<int> oi = a.over_in();
  oi.insert(oi.end(), b.over_in().begin(), b.over_in().end());
  return LinkDiagram(std::move(pc), std::move(oi));
}

int linking_number(const LinkDiagram& d, int i, int j) {
  auto s = crossing_signs(d);
  int total = 0;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto [u, o] = d.strand_components()[c];
    if ((u == i && o == j) || (u == j && o == i)) total += s[c];
  }
  return total / 2;
}

}  // namespace specalt
