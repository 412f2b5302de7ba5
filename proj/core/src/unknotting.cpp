#include "specalt/unknotting.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "specalt/error.hpp"
#include "specalt/invariants.hpp"

namespace specalt {

std::string to_string(UnlinkCertificate::Status s) {
  switch (s) {
    case UnlinkCertificate::Status::Certified: return "certified";
    case UnlinkCertificate::Status::Refuted: return "refuted";
    case UnlinkCertificate::Status::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(SearchResult::Kind k) {
  switch (k) {
    case SearchResult::Kind::Some: return "some";
    case SearchResult::Kind::AllRefuted: return "all-refuted";
    case SearchResult::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equal: return "equal";
    case VerdictKind::StrictlyGreater: return "strictly-greater";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

UnlinkCertificate certify_unlink(const LinkDiagram& d, const CertifyBudget& budget) {
  UnlinkCertificate cert;
  const int k = d.component_count();
  auto refute = [&](std::string inv, std::string value) {
    cert.status = UnlinkCertificate::Status::Refuted;
    cert.invariant = std::move(inv);
    cert.value = std::move(value);
    return cert;
  };
  if (d.crossing_count() == 0) {
    cert.status = UnlinkCertificate::Status::Certified;
    return cert;
  }
  // Cheap invariants first: a failing one rules out every simplification.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (int lk = linking_number(d, i, j); lk != 0) return refute("linking number", std::to_string(lk));
  if (long long det = determinant(d); det != (k == 1 ? 1 : 0)) return refute("determinant", std::to_string(det));
  if (Laurent f = normalized_bracket(d); !(f == unlink_bracket(k))) return refute("bracket", f.to_string());

  auto attempt = [&](const SimplifyBudget& b) {
    SimplifyResult r = reidemeister_simplify(d.code(), b);
    cert.stats.states += r.stats.states;
    cert.stats.expanded += r.stats.expanded;
    cert.stats.dedup += r.stats.dedup;
    cert.stats.exhausted = r.stats.exhausted;
    if (r.code.size() == 0) {
      cert.status = UnlinkCertificate::Status::Certified;
      cert.moves = std::move(r.log);
      return true;
    }
    return false;
  };
  if (attempt(budget.first)) return cert;
  if (budget.escalate && attempt(budget.escalated)) return cert;
  cert.status = UnlinkCertificate::Status::Unknown;
  return cert;
}

std::vector<Subset> subsets_of(int n, int m) {
  std::vector<Subset> out;
  if (m < 0 || m > n) return out;
  Subset s(m);
  for (int i = 0; i < m; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    int i = m - 1;
    while (i >= 0 && s[i] == n - m + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < m; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

SearchResult exhaustive_search(const LinkDiagram& d, int m, const SearchOptions& opts) {
  SearchResult res;
  res.m = m;
  std::vector<Subset> work;
  std::set<Subset> queued;
  for (Subset s : opts.priority) {
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) == m && queued.insert(s).second) work.push_back(s);
  }
  for (auto& s : subsets_of(d.crossing_count(), m))
    if (!queued.count(s)) work.push_back(std::move(s));

  const int W = static_cast<int>(work.size());
  std::vector<UnlinkCertificate> certs(W);
  std::vector<char> done(W, 0);
  std::atomic<int> next{0};
  std::atomic<int> first_hit{W};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= W) return;
      if (!opts.all_witnesses && i > first_hit.load()) continue;
      certs[i] = certify_unlink(change_crossings(d, work[i]), opts.budget);
      done[i] = 1;
      if (certs[i].status == UnlinkCertificate::Status::Certified) {
        int cur = first_hit.load();
        while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const int jobs = std::max(1, std::min(opts.jobs, W));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Deterministic aggregation: only subsets up to the first witness count
  // unless every subset was requested.
  const int last = opts.all_witnesses ? W : std::min(W, first_hit.load() + 1);
  for (int i = 0; i < last; ++i) {
    if (!done[i]) continue;
    ++res.subsets_checked;
    switch (certs[i].status) {
      case UnlinkCertificate::Status::Certified:
        res.witnesses.push_back(work[i]);
        if (res.witnesses.size() == 1) res.certificate = certs[i];
        break;
      case UnlinkCertificate::Status::Refuted: ++res.refuted_by[certs[i].invariant]; break;
      case UnlinkCertificate::Status::Unknown: res.unknown.push_back(work[i]); break;
    }
  }
  if (!res.witnesses.empty())
    res.kind = SearchResult::Kind::Some;
  else if (!res.unknown.empty())
    res.kind = SearchResult::Kind::Inconclusive;
  else
    res.kind = SearchResult::Kind::AllRefuted;
  return res;
}

Subset ClaspSet::crossings() const {
  Subset s;
  for (const auto& c : clasps) s.push_back(c.changed);
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

// Crossings between two white faces in chain order (consecutive ones share a bigon).
std::vector<int> chain_between(const LinkDiagram& d, const Checkerboard& cb, int fa, int fb) {
  std::vector<int> members;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto w = cb.white_pair[c];
    if ((w[0] == fa && w[1] == fb) || (w[0] == fb && w[1] == fa)) members.push_back(c);
  }
  if (members.size() < 2) return members;
  FaceData fd = faces(d);
  std::map<int, std::vector<int>> adj;
  for (const auto& f : fd.faces) {
    if (f.size() != 2) continue;
    int a = f[0].crossing, b = f[1].crossing;
    if (a == b) continue;
    bool ia = std::binary_search(members.begin(), members.end(), a);
    bool ib = std::binary_search(members.begin(), members.end(), b);
    if (ia && ib) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  for (auto& [c, v] : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  int start = members.front();
  for (int c : members)
    if (adj[c].size() <= 1) {
      start = c;
      break;
    }
  std::vector<int> chain{start};
  std::set<int> used{start};
  for (int cur = start;;) {
    int nxt = -1;
    for (int c : adj[cur])
      if (!used.count(c)) {
        nxt = c;
        break;
      }
    if (nxt < 0) break;
    chain.push_back(nxt);
    used.insert(nxt);
    cur = nxt;
  }
  if (chain.size() != members.size())
    throw Error(ErrorKind::PreconditionViolated, "crossings between two regions span several twist regions");
  return chain;
}

}  // namespace

ClaspSet clasp_candidates(const LinkDiagram& input, const LatticeEmbedding& e, const CoordinatePairing& pr) {
  if (!is_special_alternating(input)) throw Error(ErrorKind::NotSpecialAlternating, "clasps need a special alternating diagram");
  if (has_nugatory(input)) throw Error(ErrorKind::PreconditionViolated, "diagram is not reduced");
  if (!is_twist_reduced(input)) throw Error(ErrorKind::PreconditionViolated, "diagram is not twist-reduced");
  if (!claim1_structure(e)) throw Error(ErrorKind::PreconditionViolated, "embedding columns are not +-1 pairs");
  // Same diagram the obstruction used: the one with sigma <= 0.
  LinkDiagram d = input;
  if (gl_signature(d, checkerboard_negative(d)) > 0) d = mirror(d);
  Checkerboard cb = checkerboard_negative(d);
  GoeritzLattice g = goeritz(d, cb);
  if (g.rank != static_cast<int>(e.images.size())) throw Error(ErrorKind::PreconditionViolated, "embedding rank mismatch");
  const TwistDecomposition tw = twist_regions(d);
  const IntMatrix full = e.full_matrix();

  // Group pairs by the region pair their coordinate marks.
  std::map<std::pair<int, int>, int> demand;
  std::vector<std::pair<int, int>> order;
  for (const auto& pair : pr.pairs) {
    std::vector<int> rows;
    for (int i = 0; i < static_cast<int>(full.size()); ++i)
      if (full[i][pair.a] != 0) rows.push_back(i);
    if (rows.size() != 2) throw Error(ErrorKind::PreconditionViolated, "coordinate does not mark two regions");
    int fa = g.region_face[rows[0]], fb = g.region_face[rows[1]];
    auto key = std::minmax(fa, fb);
    if (demand[key]++ == 0) order.push_back(key);
  }
  ClaspSet out;
  for (const auto& key : order) {
    const int want = demand[key];
    auto chain = chain_between(d, cb, key.first, key.second);
    if (static_cast<int>(chain.size()) < 2 * want)
      throw Error(ErrorKind::MarkedRegionsNotAdjacent, "regions " + std::to_string(key.first) + " and " +
                                                           std::to_string(key.second) + " share " +
                                                           std::to_string(chain.size()) + " crossings");
    for (int i = 0; i < want; ++i) {
      Clasp c;
      c.crossings = {chain[2 * i], chain[2 * i + 1]};
      c.changed = std::min(c.crossings[0], c.crossings[1]);
      c.regions = {key.first, key.second};
      c.twist_region = tw.region_of[c.changed];
      out.clasps.push_back(c);
    }
  }
  return out;
}

UnlinkingVerdict decide_minimal_unlinking(const LinkDiagram& input, const DecideOptions& opts) {
  if (!is_connected(input)) throw Error(ErrorKind::SplitDiagram, "decompose split diagrams and combine verdicts");
  if (!is_special_alternating(input))
    throw Error(ErrorKind::NotSpecialAlternating, "decision needs a special alternating diagram");
  UnlinkingVerdict v;
  LinkDiagram d = has_nugatory(input) ? reduce_nugatory(input) : input;
  if (d.crossing_count() > 0 && gl_signature(d, checkerboard_negative(d)) > 0) {
    d = mirror(d);
    v.mirrored = true;
  }
  v.components = d.component_count();
  if (d.crossing_count() == 0) {
    v.result = VerdictKind::Equal;
    v.u_lower = v.u_upper = v.c4_lower = v.c4_upper = 0;
    v.obstruction = Obstruction::Admissible;
    return v;
  }
  v.sigma = gl_signature(d, checkerboard_negative(d));
  v.p = (-v.sigma + v.components - 1) / 2;
  const int p = v.p;

  ObstructionOptions oo;
  oo.jobs = opts.jobs;
  ObstructionVerdict ob = obstruction(d, oo);
  v.obstruction = ob.kind;
  std::vector<Subset> priority;
  if (ob.kind == Obstruction::Admissible) {
    v.provenance.push_back("obstruction: admissible embedding");
    if (is_twist_reduced(d)) {
      try {
        v.clasps = clasp_candidates(d, *ob.embedding, *ob.pairing);
        priority.push_back(v.clasps->crossings());
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::MarkedRegionsNotAdjacent) throw;
        v.provenance.push_back(std::string("clasps skipped: ") + err.what());
      }
    }
  } else {
    v.provenance.push_back("obstruction: no admissible embedding, c4 > p");
  }

  SearchOptions so;
  so.jobs = opts.jobs;
  so.budget = opts.budget;
  so.priority = priority;
  SearchResult at_p = exhaustive_search(d, p, so);
  v.searches.push_back(at_p);
  if (at_p.kind == SearchResult::Kind::Some) {
    if (ob.kind != Obstruction::Admissible)
      throw Error(ErrorKind::Internal, "search found p changes although the lattice obstruction applies");
    v.result = VerdictKind::Equal;
    v.witness = at_p.witnesses.front();
    v.u_lower = v.u_upper = v.c4_lower = v.c4_upper = p;
    v.provenance.push_back("search: unlinked by p changes");
    return v;
  }
  const bool strict = at_p.kind == SearchResult::Kind::AllRefuted || ob.kind != Obstruction::Admissible;
  if (at_p.kind == SearchResult::Kind::AllRefuted) v.provenance.push_back("search: every p-subset refuted");
  if (!strict) {
    v.result = VerdictKind::Inconclusive;
    v.unknown = at_p.unknown;
    v.u_lower = v.c4_lower = p;
    v.provenance.push_back("search: unresolved p-subsets");
    return v;
  }
  v.result = VerdictKind::StrictlyGreater;
  v.unknown = at_p.unknown;
  v.u_lower = v.c4_lower = p + 1;
  so.priority.clear();
  for (int extra = 1; extra <= opts.max_extra_changes; ++extra) {
    SearchResult r = exhaustive_search(d, p + extra, so);
    v.searches.push_back(r);
    if (r.kind == SearchResult::Kind::Some) {
      v.witness = r.witnesses.front();
      v.u_upper = v.c4_upper = p + extra;
      v.provenance.push_back("search: unlinked by p+" + std::to_string(extra) + " changes");
      break;
    }
  }
  return v;
}

CombinedVerdict split_additivity(const std::vector<UnlinkingVerdict>& verdicts) {
  CombinedVerdict out;
  out.u_lower = out.u_upper = out.c4_lower = out.c4_upper = 0;
  bool any_inconclusive = false;
  for (const auto& v : verdicts) {
    out.p += v.p;
    out.witnesses.push_back(v.witness);
    out.changes += static_cast<int>(v.witness.size());
    if (v.result == VerdictKind::Inconclusive) any_inconclusive = true;
    if (v.result != VerdictKind::Equal && out.result == VerdictKind::Equal) out.result = VerdictKind::StrictlyGreater;
    auto add = [](std::optional<int>& acc, const std::optional<int>& x) {
      if (acc && x)
        *acc += *x;
      else
        acc.reset();
    };
    add(out.u_lower, v.u_lower ? v.u_lower : std::optional<int>(v.p));
    add(out.c4_lower, v.c4_lower ? v.c4_lower : std::optional<int>(v.p));
    add(out.u_upper, v.u_upper);
    add(out.c4_upper, v.c4_upper);
  }
  if (any_inconclusive && out.result != VerdictKind::Equal) out.result = VerdictKind::Inconclusive;
  return out;
}

std::optional<Relation> reference_relation(const LinkDiagram& d, const std::vector<ReferenceKnot>& refs,
                                           const SimplifyBudget& budget) {
  for (int c = 0; c < d.crossing_count(); ++c) {
    const LinkDiagram changed = change_crossings(d, std::array{c});
    const long long det = determinant(changed);
    for (const auto& ref : refs) {
      if (ref.diagram.crossing_count() > d.crossing_count()) continue;
      if (ref.diagram.component_count() != d.component_count()) continue;
      // A determinant mismatch rules the pair out without searching.
      if (det != determinant(ref.diagram)) continue;
      if (auto moves = find_isotopy(changed.code(), ref.diagram.code(), budget))
        return Relation{ref.name, c, std::move(*moves), ref.c4 + 1};
    }
  }
  return std::nullopt;
}

}  // namespace specalt
