#pragma once

#include <utility>
#include <vector>

#include "specalt/diagram.hpp"
#include "specalt/matrix.hpp"

namespace specalt {

struct GoeritzLattice {
  int rank = 0;
  IntMatrix gram;                 // v_1..v_r
  IntMatrix full;                 // v_0..v_r, before the quotient
  std::vector<int> region_face;   // generator index -> face id, [0] is v_0
  int crossing_count = 0;
};

/// Goeritz form for the all-(-1) coloring; throws DegenerateColoring if any
/// incidence is +1.
GoeritzLattice goeritz(const LinkDiagram& d, const Checkerboard& c);
/// Same pairing for an arbitrary coloring (no incidence check).
GoeritzLattice goeritz_form(const LinkDiagram& d, const Checkerboard& c);

/// Gordon-Litherland route: sign(G) + sum of mu over crossings whose white
/// corners sit between an incoming and an outgoing edge.
int gl_signature(const LinkDiagram& d, const Checkerboard& c);
int gl_correction(const LinkDiagram& d, const Checkerboard& c);

struct Braid {
  int strands = 0;
  std::vector<int> word;  // +-i for sigma_i^{+-1}, i in 1..strands-1
};

/// Braided form of a connected diagram obtained by Vogel moves.
Braid braid_from_diagram(const LinkDiagram& d);
/// Seifert matrix of a closed braid (Collins' construction).
IntMatrix braid_seifert_matrix(const Braid& b);
/// Seifert matrix of the diagram's link; split pieces are joined by tubes
/// (one zero row/column per extra piece).
IntMatrix seifert_matrix(const LinkDiagram& d);

struct SignatureNullity {
  int sigma = 0;
  int eta = 0;
};

SignatureNullity signature_nullity(const LinkDiagram& d);
long long determinant(const LinkDiagram& d);

/// Both bounds are halves of integers; `twice_*` keeps them exact.
struct LowerBound {
  int twice_u = 0;
  int twice_c4 = 0;
  bool u_integral() const { return twice_u % 2 == 0; }
  int u() const { return twice_u / 2; }
  int c4() const { return twice_c4 / 2; }
};

LowerBound unlinking_lower_bound(int sigma, int eta, int k);

/// chi(S_-) = 1 - (n - r) equals 1 + sigma and k - 2p. Positive special
/// alternating, reduced, non-split diagrams only.
bool euler_check(const LinkDiagram& d, const Checkerboard& c);

/// (n - s + 2 - k) / 2 from Seifert's algorithm on the given diagram;
/// minimal for alternating diagrams.
int seifert_genus(const LinkDiagram& d);

}  // namespace specalt
