#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specalt/diagram.hpp"
#include "specalt/invariants.hpp"
#include "specalt/matrix.hpp"

namespace specalt {

struct LatticeEmbedding {
  IntMatrix images;  // row i = image of v_{i+1}
  int target_dim = 0;

  /// Rows v_0..v_r with v_0 = -(v_1 + ... + v_r).
  IntMatrix full_matrix() const;
  bool operator==(const LatticeEmbedding&) const = default;
};

struct CoordinatePairing {
  struct Pair {
    int a, b, eps;  // column a = eps * column b
    bool operator==(const Pair&) const = default;
  };
  std::vector<Pair> pairs;
};

struct SearchStats {
  std::uint64_t nodes = 0;       // partial matrices visited
  std::uint64_t emitted = 0;     // canonical representatives reached
  std::uint64_t candidates = 0;  // representatives handed to the filter
};

struct EnumerateOptions {
  int jobs = 1;
  bool stop_at_first = false;
  /// Only representatives passing the filter are returned (all if empty).
  std::function<bool(const LatticeEmbedding&)> accept;
};

/// One representative per orbit of signed column permutations, in a fixed
/// order independent of `jobs`.
std::vector<LatticeEmbedding> enumerate_embeddings(const IntMatrix& gram, int n, const EnumerateOptions& opts = {},
                                                   SearchStats* stats = nullptr);

/// Size of the signed-permutation orbit of an embedding.
BigInt orbit_size(const LatticeEmbedding& e);
/// Columns sign-normalised and sorted; equal iff equivalent.
IntMatrix column_canonical(const IntMatrix& m);

bool condition_all_coords(const LatticeEmbedding& e);
std::optional<CoordinatePairing> find_pairing(const LatticeEmbedding& e, int p);
bool claim1_structure(const LatticeEmbedding& e);
bool verify_embedding(const LatticeEmbedding& e, const IntMatrix& gram);

enum class Obstruction { Admissible, Obstructed, ObstructedByParity };
std::string to_string(Obstruction o);

struct ObstructionVerdict {
  Obstruction kind = Obstruction::Obstructed;
  std::optional<LatticeEmbedding> embedding;
  std::optional<CoordinatePairing> pairing;
  SearchStats stats;
  int sigma = 0;  // after mirroring, so <= 0
  int p = 0;
  int target_dim = 0;
  bool mirrored = false;
  GoeritzLattice lattice;
};

struct ObstructionOptions {
  int jobs = 1;
  bool enumerate_all = false;
};

ObstructionVerdict obstruction(const LinkDiagram& d, const ObstructionOptions& opts = {});

}  // namespace specalt
