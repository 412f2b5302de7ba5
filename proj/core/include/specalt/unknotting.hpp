#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specalt/diagram.hpp"
#include "specalt/lattice.hpp"

namespace specalt {

// ---- Kauffman bracket ----------------------------------------------------

/// Laurent polynomial in A with exact integer coefficients.
struct Laurent {
  std::map<int, long long> coeff;  // exponent -> nonzero coefficient

  static Laurent monomial(long long c, int e);
  Laurent operator+(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  bool operator==(const Laurent&) const = default;
  std::string to_string() const;
};

/// Unnormalised bracket <D>, with <O> = 1.
Laurent kauffman_bracket(const PlanarCode& code);
/// (-A^3)^(-w) <D>; equals delta^(k-1) for the k-component unlink.
Laurent normalized_bracket(const LinkDiagram& d);
Laurent unlink_bracket(int k);
/// Jones polynomial in t^(1/4) exponents: returns map exponent(t^(1/4)) -> coeff.
std::map<int, long long> jones_quarter(const LinkDiagram& d);

// ---- Reidemeister moves ---------------------------------------------------

enum class MoveKind { R1, R2, R3, R2Up };

/// R1 {c}; R2 {c1, c2}; R3 {c, slot} naming a corner of the triangle;
/// R2Up {ca, sa, cb, sb, top}: push the edge leaving (ca, sa) across the edge
/// leaving (cb, sb) inside their common face, top = 0 puts the first strand over.
struct Move {
  MoveKind kind = MoveKind::R1;
  std::array<int, 5> site{};
  bool operator==(const Move&) const = default;
};

std::string to_string(MoveKind k);
std::string to_string(const Move& m);

/// Throws InvalidDiagram if the move does not apply. Labels of the result are
/// compacted.
PlanarCode apply_move(const PlanarCode& code, const Move& m);
/// Every intermediate code, starting with `code` itself.
std::vector<PlanarCode> replay(const PlanarCode& code, const std::vector<Move>& log);

struct SimplifyBudget {
  int extra = 2;                     // crossings allowed above the current count
  std::uint64_t nodes = 1'000'000;   // distinct states per call
};

struct SimplifyStats {
  std::uint64_t states = 0;
  std::uint64_t expanded = 0;
  std::uint64_t dedup = 0;
  bool exhausted = false;
};

struct SimplifyResult {
  PlanarCode code;
  std::vector<Move> log;
  SimplifyStats stats;
};

SimplifyResult reidemeister_simplify(const PlanarCode& code, const SimplifyBudget& budget = {});

/// Looks for a move sequence from `from` to a diagram isomorphic to `target`
/// (planar reflection and global over/under swap allowed).
std::optional<std::vector<Move>> find_isotopy(const PlanarCode& from, const PlanarCode& target,
                                              const SimplifyBudget& budget = {});

// ---- Certification --------------------------------------------------------

struct CertifyBudget {
  SimplifyBudget first{};
  SimplifyBudget escalated{4, 10'000'000};
  bool escalate = true;
};

struct UnlinkCertificate {
  enum class Status { Certified, Refuted, Unknown };
  Status status = Status::Unknown;
  std::vector<Move> moves;  // Certified: replays to a crossing-free diagram
  std::string invariant;    // Refuted: "linking number" | "determinant" | "bracket"
  std::string value;
  SimplifyStats stats;
};

std::string to_string(UnlinkCertificate::Status s);

UnlinkCertificate certify_unlink(const LinkDiagram& d, const CertifyBudget& budget = {});

using Subset = std::vector<int>;

struct SearchOptions {
  int jobs = 1;
  CertifyBudget budget{};
  std::vector<Subset> priority;  // tried before the lexicographic sweep
  bool all_witnesses = false;    // keep sweeping after the first witness
};

struct SearchResult {
  enum class Kind { Some, AllRefuted, Inconclusive };
  Kind kind = Kind::AllRefuted;
  int m = 0;
  std::vector<Subset> witnesses;  // the reported one first
  std::vector<Subset> unknown;
  std::map<std::string, int> refuted_by;
  std::uint64_t subsets_checked = 0;
  UnlinkCertificate certificate;  // for witnesses.front()
};

std::string to_string(SearchResult::Kind k);

std::vector<Subset> subsets_of(int n, int m);
SearchResult exhaustive_search(const LinkDiagram& d, int m, const SearchOptions& opts = {});

// ---- Clasps and the decision procedure -------------------------------------

struct Clasp {
  int changed = -1;                // crossing to change
  std::array<int, 2> crossings{};  // both crossings of the clasp
  std::array<int, 2> regions{};    // white face ids
  int twist_region = -1;
};

struct ClaspSet {
  std::vector<Clasp> clasps;
  Subset crossings() const;
};

ClaspSet clasp_candidates(const LinkDiagram& d, const LatticeEmbedding& e, const CoordinatePairing& pr);

enum class VerdictKind { Equal, StrictlyGreater, Inconclusive };
std::string to_string(VerdictKind k);

struct DecideOptions {
  int jobs = 1;
  CertifyBudget budget{};
  int max_extra_changes = 2;  // sweep m = p+1 .. p+max for an upper bound
};

struct UnlinkingVerdict {
  int p = 0;
  int sigma = 0;
  int components = 1;
  bool mirrored = false;
  VerdictKind result = VerdictKind::Inconclusive;
  Obstruction obstruction = Obstruction::Obstructed;
  std::optional<ClaspSet> clasps;
  Subset witness;  // Equal: p changes; otherwise the witness at u_upper if any
  std::optional<int> u_lower, u_upper, c4_lower, c4_upper;
  std::vector<Subset> unknown;
  std::vector<std::string> provenance;
  std::vector<SearchResult> searches;
};

UnlinkingVerdict decide_minimal_unlinking(const LinkDiagram& d, const DecideOptions& opts = {});

struct CombinedVerdict {
  int p = 0;
  VerdictKind result = VerdictKind::Equal;
  std::vector<Subset> witnesses;  // one per component diagram
  int changes = 0;
  std::optional<int> u_lower, u_upper, c4_lower, c4_upper;
};

CombinedVerdict split_additivity(const std::vector<UnlinkingVerdict>& verdicts);

// ---- Reference relations ---------------------------------------------------

struct ReferenceKnot {
  std::string name;
  LinkDiagram diagram;
  int c4 = 0;
};

struct Relation {
  std::string reference;
  int crossing = -1;  // crossing of the input diagram that is changed
  std::vector<Move> moves;
  int c4_upper = 0;  // c4(reference) + 1
};

/// First single crossing change turning `d` into a diagram isotopic (up to
/// mirror) to one of the references.
std::optional<Relation> reference_relation(const LinkDiagram& d, const std::vector<ReferenceKnot>& refs,
                                           const SimplifyBudget& budget = {});

}  // namespace specalt
