#include "specalt/planar_code.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "specalt/error.hpp"

namespace specalt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::InvalidDiagram: return "invalid diagram";
    case ErrorKind::NotAlternating: return "not alternating";
    case ErrorKind::NotSpecialAlternating: return "not special alternating";
    case ErrorKind::SplitDiagram: return "split diagram";
    case ErrorKind::DegenerateColoring: return "degenerate coloring";
    case ErrorKind::PreconditionViolated: return "precondition violated";
    case ErrorKind::TargetTooSmall: return "target too small";
    case ErrorKind::MarkedRegionsNotAdjacent: return "marked regions not adjacent";
    case ErrorKind::IndexOutOfRange: return "index out of range";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

EdgeTable::EdgeTable(const PlanarCode& code) : code_(&code) {
  int top = 0;
  for (const auto& q : code.crossings)
    for (int x : q) {
      if (x <= 0) throw Error(ErrorKind::InvalidDiagram, "edge labels must be positive");
      top = std::max(top, x);
    }
  ends_.assign(top + 1, {Dart{-1, -1}, Dart{-1, -1}});
  std::vector<int> seen(top + 1, 0);
  for (int c = 0; c < code.size(); ++c)
    for (int s = 0; s < 4; ++s) {
      int x = code.crossings[c][s];
      if (seen[x] >= 2)
        throw Error(ErrorKind::InvalidDiagram, "edge " + std::to_string(x) + " occurs more than twice");
      ends_[x][seen[x]++] = Dart{c, s};
    }
  for (int x = 1; x <= top; ++x)
    if (seen[x] == 1)
      throw Error(ErrorKind::InvalidDiagram, "edge " + std::to_string(x) + " occurs once");
}

Dart EdgeTable::across(Dart d) const {
  const auto& e = ends_[code_->crossings[d.crossing][d.slot]];
  return e[0] == d ? e[1] : e[0];
}

std::array<Dart, 2> EdgeTable::ends(int label) const { return ends_.at(label); }

FaceData trace_faces(const PlanarCode& code) {
  EdgeTable et(code);
  FaceData out;
  out.corner_face.assign(code.size(), {-1, -1, -1, -1});
  for (int c = 0; c < code.size(); ++c)
    for (int q = 0; q < 4; ++q) {
      if (out.corner_face[c][q] >= 0) continue;
      int id = static_cast<int>(out.faces.size());
      std::vector<Dart> cyc;
      Dart d{c, q};
      while (out.corner_face[d.crossing][d.slot] < 0) {
        out.corner_face[d.crossing][d.slot] = id;
        cyc.push_back(d);
        Dart a = et.across(d);
        d = Dart{a.crossing, (a.slot + 3) % 4};
      }
      if (!(d == Dart{c, q})) throw Error(ErrorKind::InvalidDiagram, "face tracing did not close");
      out.faces.push_back(std::move(cyc));
    }
  return out;
}

std::vector<std::vector<int>> pieces(const PlanarCode& code) {
  EdgeTable et(code);
  std::vector<int> comp(code.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < code.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int q = 0; q < 4; ++q) {
        int nb = et.across({members[i], q}).crossing;
        if (comp[nb] < 0) {
          comp[nb] = comp[s];
          members.push_back(nb);
        }
      }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

void validate(const PlanarCode& code) {
  if (code.free_loops < 0) throw Error(ErrorKind::InvalidDiagram, "negative loop count");
  FaceData fd = trace_faces(code);
  auto ps = pieces(code);
  std::vector<int> piece_of(code.size());
  for (std::size_t p = 0; p < ps.size(); ++p)
    for (int c : ps[p]) piece_of[c] = static_cast<int>(p);
  std::vector<int> faces_per(ps.size(), 0);
  for (const auto& f : fd.faces) ++faces_per[piece_of[f.front().crossing]];
  for (std::size_t p = 0; p < ps.size(); ++p)
    if (faces_per[p] != static_cast<int>(ps[p].size()) + 2)
      throw Error(ErrorKind::InvalidDiagram, "not planar: piece with " + std::to_string(ps[p].size()) +
                                                 " crossings has " + std::to_string(faces_per[p]) + " faces");
}

PlanarCode compact_labels(const PlanarCode& code) {
  std::map<int, int> fresh;
  PlanarCode out;
  out.free_loops = code.free_loops;
  out.crossings.reserve(code.crossings.size());
  for (const auto& q : code.crossings) {
    Quad nq;
    for (int s = 0; s < 4; ++s) {
      auto [it, ins] = fresh.try_emplace(q[s], static_cast<int>(fresh.size()) + 1);
      nq[s] = it->second;
    }
    out.crossings.push_back(nq);
  }
  return out;
}

PlanarCode remove_crossings(const PlanarCode& code, std::span<const int> removed) {
  int top = 0;
  for (const auto& q : code.crossings)
    for (int x : q) top = std::max(top, x);
  std::vector<int> parent(top + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> gone(code.size(), 0);
  for (int c : removed) {
    if (c < 0 || c >= code.size()) throw Error(ErrorKind::IndexOutOfRange, "crossing " + std::to_string(c));
    gone[c] = 1;
    const auto& q = code.crossings[c];
    parent[find(q[0])] = find(q[2]);
    parent[find(q[1])] = find(q[3]);
  }
  PlanarCode out;
  out.free_loops = code.free_loops;
  std::vector<char> alive(top + 1, 0);
  for (int c = 0; c < code.size(); ++c) {
    if (gone[c]) continue;
    Quad q = code.crossings[c];
    for (int& x : q) {
      x = find(x);
      alive[x] = 1;
    }
    out.crossings.push_back(q);
  }
  std::vector<char> counted(top + 1, 0);
  for (int c : removed)
    for (int x : code.crossings[c]) {
      int r = find(x);
      if (!alive[r] && !counted[r]) {
        counted[r] = 1;
        ++out.free_loops;
      }
    }
  return compact_labels(out);
}

PlanarCode reflect(const PlanarCode& code) {
  PlanarCode out = code;
  for (auto& q : out.crossings) std::swap(q[1], q[3]);
  return out;
}

PlanarCode swap_over_under(const PlanarCode& code) {
  PlanarCode out = code;
  for (auto& q : out.crossings) std::rotate(q.begin(), q.begin() + 1, q.end());
  return out;
}

PlanarCode sub_code(const PlanarCode& code, std::span<const int> crossing_ids) {
  PlanarCode out;
  for (int c : crossing_ids) out.crossings.push_back(code.crossings.at(c));
  return out;
}

namespace {

// Code of one connected piece read from a start dart: crossings numbered
// in BFS order, each contributing its base parity and, for the four slots
// counterclockwise from its base, the neighbour's number and relative slot.
void piece_code_from(const PlanarCode& code, const EdgeTable& et, std::span<const int> piece, Dart start,
                     std::vector<std::uint8_t>& out, std::vector<int>& order, std::vector<int>& base) {
  out.clear();
  for (int c : piece) order[c] = -1;
  std::vector<int> seq{start.crossing};
  order[start.crossing] = 0;
  base[start.crossing] = start.slot;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int c = seq[i];
    out.push_back(static_cast<std::uint8_t>(base[c] & 1));
    for (int k = 0; k < 4; ++k) {
      Dart a = et.across({c, (base[c] + k) % 4});
      if (order[a.crossing] < 0) {
        order[a.crossing] = static_cast<int>(seq.size());
        base[a.crossing] = a.slot;
        seq.push_back(a.crossing);
      }
      out.push_back(static_cast<std::uint8_t>(order[a.crossing]));
      out.push_back(static_cast<std::uint8_t>((a.slot - base[a.crossing] + 4) % 4));
    }
  }
  (void)code;
}

std::vector<std::uint8_t> canonical_single(const PlanarCode& code) {
  EdgeTable et(code);
  auto ps = pieces(code);
  std::vector<std::vector<std::uint8_t>> codes;
  std::vector<int> order(code.size()), base(code.size());
  std::vector<std::uint8_t> cur;
  for (const auto& piece : ps) {
    std::vector<std::uint8_t> best;
    for (int c : piece)
      for (int s = 0; s < 4; ++s) {
        piece_code_from(code, et, piece, {c, s}, cur, order, base);
        if (best.empty() || cur < best) best = cur;
      }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(code.free_loops));
  for (const auto& c : codes) {
    out.push_back(static_cast<std::uint8_t>(c.size() / 9));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> canonical_code(const PlanarCode& code, IsoOptions opts) {
  if (code.size() > 255) throw Error(ErrorKind::PreconditionViolated, "too many crossings for canonical code");
  auto best = canonical_single(code);
  auto consider = [&](const PlanarCode& v) {
    auto c = canonical_single(v);
    if (c < best) best = std::move(c);
  };
  if (opts.allow_reflection) consider(reflect(code));
  if (opts.allow_mirror) consider(swap_over_under(code));
  if (opts.allow_reflection && opts.allow_mirror) consider(swap_over_under(reflect(code)));
  return best;
}

std::uint64_t canonical_hash(const PlanarCode& code, IsoOptions opts) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : canonical_code(code, opts)) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

bool isomorphic(const PlanarCode& a, const PlanarCode& b, IsoOptions opts) {
  if (a.size() != b.size() || a.free_loops != b.free_loops) return false;
  return canonical_code(a, opts) == canonical_code(b, opts);
}

std::string to_pd_string(const PlanarCode& code) {
  std::ostringstream os;
  for (std::size_t i = 0; i < code.crossings.size(); ++i) {
    const auto& q = code.crossings[i];
    if (i) os << ' ';
    os << "X[" << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ']';
  }
  return os.str();
}

}  // namespace specalt
