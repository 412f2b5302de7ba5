#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specalt/planar_code.hpp"

namespace specalt {

/// Oriented link diagram. Every quad starts at the incoming under-strand;
/// `over_in[c]` is the slot (1 or 3) where the over-strand enters.
/// A 0-crossing diagram is `components` disjoint circles.
class LinkDiagram {
 public:
  LinkDiagram() = default;
  /// Builds from quads already in the incoming-under convention.
  LinkDiagram(PlanarCode code, std::vector<int> over_in);

  /// k disjoint unknotted circles.
  static LinkDiagram unlink(int k);

  const PlanarCode& code() const { return code_; }
  const std::vector<int>& over_in() const { return over_in_; }
  int crossing_count() const { return code_.size(); }
  int edge_count() const { return 2 * code_.size(); }
  int component_count() const { return components_; }
  /// Component of the under- and over-strand at each crossing.
  const std::vector<std::array<int, 2>>& strand_components() const { return strand_comp_; }
  /// True if the edge leaving crossing c through slot s points away from c.
  bool outgoing(int c, int s) const { return s == 2 || s == (over_in_[c] + 2) % 4; }

  bool operator==(const LinkDiagram& o) const { return code_ == o.code_ && over_in_ == o.over_in_; }

 private:
  PlanarCode code_;
  std::vector<int> over_in_;
  int components_ = 0;
  std::vector<std::array<int, 2>> strand_comp_;
};

/// Per-component orientation flips applied after the numbering-based default.
using OrientationOverride = std::vector<bool>;

LinkDiagram parse_pd(std::string_view text, const OrientationOverride& flips = {});
LinkDiagram parse_dt(std::string_view text);
/// Orients an unoriented code; `hint[c]` (if given) is the preferred
/// incoming over-slot for strands with no under-passes.
LinkDiagram orient(const PlanarCode& code, const OrientationOverride& flips = {});
/// Orients every strand along its traversal order, rotating quads as needed.
/// Never fails on a valid code; used for codes produced by Reidemeister moves.
LinkDiagram orient_any(const PlanarCode& code);

FaceData faces(const LinkDiagram& d);

struct Checkerboard {
  std::vector<bool> white;        // per face id of `faces(d)`
  std::vector<int> incidence;     // mu(c) per crossing
  std::vector<int> white_faces;   // ascending face ids; v_0 is the first
  std::vector<std::array<int, 2>> white_pair;  // white faces at each crossing
};

bool is_connected(const LinkDiagram& d);
bool is_alternating(const LinkDiagram& d);
/// Coloring with the white corners at slots {0,2} or {1,3}, chosen so
/// that mu(c) = target at every crossing.
Checkerboard coloring_with_incidence(const LinkDiagram& d, int target);
Checkerboard checkerboard_negative(const LinkDiagram& d);
/// Checkerboard of any connected diagram; the face at corner 0 of
/// crossing 0 is white. Incidence varies per crossing.
Checkerboard checkerboard_any(const LinkDiagram& d);

std::vector<int> crossing_signs(const LinkDiagram& d);
int writhe(const LinkDiagram& d);
bool is_special_alternating(const LinkDiagram& d);
/// Number of Seifert circles (including free loops).
int seifert_circle_count(const LinkDiagram& d);

LinkDiagram reduce_nugatory(const LinkDiagram& d);
bool has_nugatory(const LinkDiagram& d);

struct TwistDecomposition {
  std::vector<std::vector<int>> regions;  // crossing ids along each chain
  std::vector<int> region_of;             // per crossing
};

TwistDecomposition twist_regions(const LinkDiagram& d);
bool is_twist_reduced(const LinkDiagram& d);

LinkDiagram change_crossings(const LinkDiagram& d, std::span<const int> subset);
LinkDiagram mirror(const LinkDiagram& d);
std::vector<LinkDiagram> split_components(const LinkDiagram& d);
/// Disjoint union; labels of `b` are shifted.
LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b);

/// Linking number between components i < j (sum of signs over mixed
/// crossings, halved).
int linking_number(const LinkDiagram& d, int i, int j);

}  // namespace specalt
