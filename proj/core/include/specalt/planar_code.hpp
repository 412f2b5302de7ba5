#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace specalt {

/// Edge labels of one crossing in counterclockwise order. Slots 0 and 2
/// belong to the under-strand, slots 1 and 3 to the over-strand.
using Quad = std::array<int, 4>;

/// A (crossing, slot) pair. As a face-tracing step it means "leave the
/// crossing along this slot"; the corner between `slot` and `slot + 1`
/// belongs to the face on the left of that step.
struct Dart {
  int crossing = 0;
  int slot = 0;
  auto operator<=>(const Dart&) const = default;
};

/// Unoriented planar diagram: the embedding is carried by the cyclic slot
/// order, so no coordinates are needed. Crossingless unknotted circles are
/// counted in `free_loops`.
struct PlanarCode {
  std::vector<Quad> crossings;
  int free_loops = 0;

  int size() const { return static_cast<int>(crossings.size()); }
  bool operator==(const PlanarCode&) const = default;
};

/// Label -> its two darts. Labels may be any positive integers.
class EdgeTable {
 public:
  explicit EdgeTable(const PlanarCode& code);

  /// The dart at the far end of the edge leaving through `d`.
  Dart across(Dart d) const;
  std::array<Dart, 2> ends(int label) const;
  int max_label() const { return static_cast<int>(ends_.size()) - 1; }

 private:
  const PlanarCode* code_;
  std::vector<std::array<Dart, 2>> ends_;
};

struct FaceData {
  /// Each face as its cycle of departure darts.
  std::vector<std::vector<Dart>> faces;
  /// corner_face[c][q]: face holding the corner between slots q and q+1.
  std::vector<std::array<int, 4>> corner_face;
};

FaceData trace_faces(const PlanarCode& code);

/// Connected pieces of the underlying 4-valent graph, as crossing index
/// lists (ascending). Free loops are not included.
std::vector<std::vector<int>> pieces(const PlanarCode& code);

/// Throws InvalidDiagram unless every label occurs exactly twice and every
/// piece traces n + 2 faces.
void validate(const PlanarCode& code);

/// Removes the given crossings, letting both strands pass straight through.
/// Closed strands without crossings become free loops. Labels are compacted
/// to 1..E in order of first appearance.
PlanarCode remove_crossings(const PlanarCode& code, std::span<const int> removed);

/// Relabels edges to 1..E in order of first appearance.
PlanarCode compact_labels(const PlanarCode& code);

PlanarCode reflect(const PlanarCode& code);      // mirror the plane
PlanarCode swap_over_under(const PlanarCode& code);
PlanarCode sub_code(const PlanarCode& code, std::span<const int> crossing_ids);

struct IsoOptions {
  bool allow_reflection = false;
  bool allow_mirror = false;
};

/// Complete invariant of the diagram up to relabelling and isotopy of the
/// sphere (each piece canonicalised separately).
std::vector<std::uint8_t> canonical_code(const PlanarCode& code, IsoOptions opts = {});
std::uint64_t canonical_hash(const PlanarCode& code, IsoOptions opts = {});
bool isomorphic(const PlanarCode& a, const PlanarCode& b, IsoOptions opts = {});

std::string to_pd_string(const PlanarCode& code);

}  // namespace specalt
