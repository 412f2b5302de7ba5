#include "specalt/serialize.hpp"

#include "specalt/error.hpp"

namespace specalt {

void to_json(json& j, const LatticeEmbedding& e) { j = json{{"target_dim", e.target_dim}, {"rows", e.images}}; }

void from_json(const json& j, LatticeEmbedding& e) {
  e.target_dim = j.at("target_dim").get<int>();
  e.images = j.at("rows").get<IntMatrix>();
  for (const auto& row : e.images)
    if (static_cast<int>(row.size()) != e.target_dim) throw Error(ErrorKind::Parse, "row length differs from target_dim");
}

void to_json(json& j, const CoordinatePairing& p) {
  j = json::array();
  for (const auto& q : p.pairs) j.push_back({{"a", q.a}, {"b", q.b}, {"eps", q.eps}});
}

void to_json(json& j, const ObstructionVerdict& v) {
  j = json{{"verdict", to_string(v.kind)},
           {"sigma", v.sigma},
           {"p", v.p},
           {"target_dim", v.target_dim},
           {"rank", v.lattice.rank},
           {"mirrored", v.mirrored},
           {"gram", v.lattice.gram},
           {"stats", {{"nodes", v.stats.nodes}, {"emitted", v.stats.emitted}, {"candidates", v.stats.candidates}}}};
  j["embedding"] = v.embedding ? json(*v.embedding) : json(nullptr);
  if (v.embedding) j["full_matrix"] = v.embedding->full_matrix();
  j["pairing"] = v.pairing ? json(*v.pairing) : json(nullptr);
}

namespace {
constexpr int kArity[] = {1, 2, 2, 5};
}

void to_json(json& j, const Move& m) {
  const int n = kArity[static_cast<int>(m.kind)];
  j = json{{"move", to_string(m.kind)}, {"site", std::vector<int>(m.site.begin(), m.site.begin() + n)}};
}

void from_json(const json& j, Move& m) {
  const auto tag = j.at("move").get<std::string>();
  const MoveKind kinds[] = {MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::R2Up};
  bool found = false;
  for (auto k : kinds)
    if (to_string(k) == tag) {
      m.kind = k;
      found = true;
    }
  if (!found) throw Error(ErrorKind::Parse, "unknown move " + tag);
  auto site = j.at("site").get<std::vector<int>>();
  if (static_cast<int>(site.size()) != kArity[static_cast<int>(m.kind)])
    throw Error(ErrorKind::Parse, "wrong site arity for " + tag);
  m.site = {};
  std::copy(site.begin(), site.end(), m.site.begin());
}

void to_json(json& j, const UnlinkCertificate& c) {
  j = json{{"status", to_string(c.status)}};
  if (c.status == UnlinkCertificate::Status::Certified) j["moves"] = c.moves;
  if (c.status == UnlinkCertificate::Status::Refuted) {
    j["invariant"] = c.invariant;
    j["value"] = c.value;
  }
  j["states"] = c.stats.states;
}

void to_json(json& j, const SearchResult& r) {
  j = json{{"changes", r.m},
           {"result", to_string(r.kind)},
           {"witnesses", r.witnesses},
           {"unknown", r.unknown},
           {"refuted_by", r.refuted_by},
           {"subsets_checked", r.subsets_checked}};
  if (!r.witnesses.empty()) j["certificate"] = r.certificate;
}

namespace {
json opt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
}  // namespace

void to_json(json& j, const UnlinkingVerdict& v) {
  j = json{{"p", v.p},
           {"sigma", v.sigma},
           {"components", v.components},
           {"mirrored", v.mirrored},
           {"result", to_string(v.result)},
           {"obstruction", to_string(v.obstruction)},
           {"witness", v.witness},
           {"u_lower", opt(v.u_lower)},
           {"u_upper", opt(v.u_upper)},
           {"c4_lower", opt(v.c4_lower)},
           {"c4_upper", opt(v.c4_upper)},
           {"unknown", v.unknown},
           {"provenance", v.provenance},
           {"searches", v.searches}};
  j["clasps"] = v.clasps ? json(v.clasps->crossings()) : json(nullptr);
}

void to_json(json& j, const Range& r) {
  if (r.determined())
    j = r.lo;
  else
    j = json{{"lo", r.lo}, {"hi", opt(r.hi)}};
}

void to_json(json& j, const ReportRow& r) {
  j = json{{"name", r.name}};
  if (!r.error.empty()) {
    j["error"] = r.error;
    return;
  }
  j.update(json{{"sigma", r.sigma},
                {"nullity", r.nullity},
                {"p", r.p},
                {"crossings", r.crossings},
                {"components", r.components},
                {"genus", r.genus},
                {"obstruction", r.obstruction},
                {"verdict", r.verdict},
                {"u", *r.u},
                {"c4", *r.c4},
                {"witness", r.witness},
                {"unknown", r.unknown},
                {"provenance", r.provenance}});
  j["relation"] = r.relation ? json{{"reference", r.relation->reference},
                                    {"crossing", r.relation->crossing},
                                    {"c4_upper", r.relation->c4_upper},
                                    {"moves", r.relation->moves}}
                             : json(nullptr);
  if (r.seconds > 0) j["timings"] = {{"seconds", r.seconds}};
}

}  // namespace specalt
