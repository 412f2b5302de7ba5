#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "specalt/error.hpp"
#include "specalt/invariants.hpp"
#include "specalt/unknotting.hpp"

using namespace specalt;

namespace {

LinkDiagram knot(const std::string& name) {
  static const auto small = fixtures::by_name("knots_upto10.csv");
  auto it = small.find(name);
  return parse_pd(it != small.end() ? it->second.pd : fixtures::knot(name).pd);
}

const char* kHopf = "X[4,1,3,2] X[2,3,1,4]";
const char* kKink = "X[1,2,2,1]";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Determinant read off an unoriented code.
long long det_of(const PlanarCode& c) { return determinant(orient_any(c)); }

void expect_log_sound(const PlanarCode& start, const std::vector<Move>& log) {
  const long long det = det_of(start);
  for (const auto& code : replay(start, log)) {
    EXPECT_NO_THROW(validate(code));
    EXPECT_EQ(det_of(code), det);
  }
}

std::map<int, long long> poly(std::initializer_list<std::pair<int, long long>> terms) { return {terms.begin(), terms.end()}; }

}  // namespace

// Jones polynomials in powers of t^(1/4), from the public tables.
TEST(Bracket, TrefoilJones) {
  EXPECT_EQ(jones_quarter(knot("3_1")), poly({{4, 1}, {12, 1}, {16, -1}}));
  EXPECT_EQ(jones_quarter(mirror(knot("3_1"))), poly({{-4, 1}, {-12, 1}, {-16, -1}}));
}

TEST(Bracket, FigureEightJones) {
  EXPECT_EQ(jones_quarter(knot("4_1")), poly({{-8, 1}, {-4, -1}, {0, 1}, {4, -1}, {8, 1}}));
}

TEST(Bracket, UnlinkValues) {
  EXPECT_EQ(normalized_bracket(parse_pd(kKink)), unlink_bracket(1));
  EXPECT_EQ(normalized_bracket(LinkDiagram::unlink(3)), unlink_bracket(3));
  EXPECT_EQ(unlink_bracket(2).to_string(), "-A^2 - A^-2");
  EXPECT_FALSE(normalized_bracket(parse_pd(kHopf)) == unlink_bracket(2));
}

TEST(Moves, KinkRemoval) {
  auto out = apply_move(parse_pd(kKink).code(), Move{MoveKind::R1, {0}});
  EXPECT_EQ(out.size(), 0);
  EXPECT_EQ(out.free_loops, 1);
}

TEST(Moves, InapplicableMovesThrow) {
  const auto tre = knot("3_1").code();
  EXPECT_EQ(kind_of([&] { apply_move(tre, Move{MoveKind::R1, {0}}); }), ErrorKind::InvalidDiagram);
  EXPECT_EQ(kind_of([&] { apply_move(tre, Move{MoveKind::R2, {0, 1}}); }), ErrorKind::InvalidDiagram);
  EXPECT_EQ(kind_of([&] { apply_move(tre, Move{MoveKind::R1, {7}}); }), ErrorKind::InvalidDiagram);
}

TEST(Moves, CreateThenCancel) {
  const auto tre = knot("3_1").code();
  FaceData fd = trace_faces(tre);
  int tried = 0;
  for (const auto& f : fd.faces)
    for (std::size_t j = 1; j < f.size(); ++j)
      for (int top = 0; top < 2; ++top) {
        Move up{MoveKind::R2Up, {f[0].crossing, f[0].slot, f[j].crossing, f[j].slot, top}};
        if (tre.crossings[f[0].crossing][f[0].slot] == tre.crossings[f[j].crossing][f[j].slot]) continue;
        auto bigger = apply_move(tre, up);
        ASSERT_EQ(bigger.size(), 5);
        EXPECT_EQ(det_of(bigger), 3);
        auto back = apply_move(bigger, Move{MoveKind::R2, {3, 4}});
        EXPECT_TRUE(isomorphic(back, tre));
        ++tried;
      }
  EXPECT_GT(tried, 0);
}

// Random walks of R2+/R3 moves keep the link type: determinant and the
// normalised bracket of a knot are unchanged.
TEST(Moves, RandomWalkPreservesInvariants) {
  std::mt19937 rng(7);
  for (auto name : {"3_1", "4_1", "5_2", "6_1"}) {
    PlanarCode code = knot(name).code();
    const long long det = det_of(code);
    const Laurent f = normalized_bracket(orient_any(code));
    for (int step = 0; step < 12; ++step) {
      std::vector<Move> cand;
      FaceData fd = trace_faces(code);
      for (const auto& face : fd.faces) {
        if (face.size() == 3) cand.push_back({MoveKind::R3, {face[0].crossing, face[0].slot}});
        if (code.size() < 9 && face.size() >= 2)
          cand.push_back({MoveKind::R2Up, {face[0].crossing, face[0].slot, face[1].crossing, face[1].slot,
                                           static_cast<int>(rng() % 2)}});
      }
      std::shuffle(cand.begin(), cand.end(), rng);
      for (const auto& m : cand) {
        try {
          code = apply_move(code, m);
        } catch (const Error&) {
          continue;
        }
        break;
      }
      ASSERT_EQ(det_of(code), det) << name;
      ASSERT_EQ(normalized_bracket(orient_any(code)), f) << name;
    }
    EXPECT_GT(code.size(), knot(name).crossing_count());
  }
}

TEST(Simplify, Kink) {
  auto r = reidemeister_simplify(parse_pd(kKink).code());
  EXPECT_EQ(r.code.size(), 0);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].kind, MoveKind::R1);
}

TEST(Simplify, ChangedTrefoil) {
  auto changed = change_crossings(knot("3_1"), std::array{0});
  auto r = reidemeister_simplify(changed.code());
  EXPECT_EQ(r.code.size(), 0);
  expect_log_sound(changed.code(), r.log);
}

TEST(Simplify, TrefoilStays) {
  auto r = reidemeister_simplify(knot("3_1").code());
  EXPECT_EQ(r.code.size(), 3);
  EXPECT_EQ(det_of(r.code), 3);
}

TEST(Simplify, InflatedDiagramsReturnToMinimal) {
  // Grow an unknot diagram by random R2+ moves, then simplify it back.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    PlanarCode code = parse_pd(kKink).code();
    while (code.size() < 7) {
      FaceData fd = trace_faces(code);
      const auto& f = fd.faces[rng() % fd.faces.size()];
      if (f.size() < 2) continue;
      Move m{MoveKind::R2Up, {f[0].crossing, f[0].slot, f[1].crossing, f[1].slot, static_cast<int>(rng() % 2)}};
      try {
        code = apply_move(code, m);
      } catch (const Error&) {
      }
    }
    auto r = reidemeister_simplify(code);
    EXPECT_EQ(r.code.size(), 0);
    expect_log_sound(code, r.log);
  }
}

TEST(Certify, Trivial) {
  EXPECT_EQ(certify_unlink(LinkDiagram::unlink(1)).status, UnlinkCertificate::Status::Certified);
}

TEST(Certify, TrefoilRefutedByDeterminant) {
  auto c = certify_unlink(knot("3_1"));
  EXPECT_EQ(c.status, UnlinkCertificate::Status::Refuted);
  EXPECT_EQ(c.invariant, "determinant");
  EXPECT_EQ(c.value, "3");
}

TEST(Certify, HopfRefutedByLinking) {
  auto c = certify_unlink(parse_pd(kHopf));
  EXPECT_EQ(c.status, UnlinkCertificate::Status::Refuted);
  EXPECT_EQ(c.invariant, "linking number");
  EXPECT_EQ(std::abs(std::stoi(c.value)), 1);
}

TEST(Certify, CertifiedReplaysToEmpty) {
  auto changed = change_crossings(knot("11a299"), exhaustive_search(knot("11a299"), 3).witnesses.front());
  auto c = certify_unlink(changed);
  ASSERT_EQ(c.status, UnlinkCertificate::Status::Certified);
  auto seq = replay(changed.code(), c.moves);
  EXPECT_EQ(seq.back().size(), 0);
  EXPECT_EQ(seq.back().free_loops, 1);
  expect_log_sound(changed.code(), c.moves);
  auto tre = change_crossings(knot("3_1"), std::array{1});
  auto t = certify_unlink(tre);
  ASSERT_EQ(t.status, UnlinkCertificate::Status::Certified);
  EXPECT_EQ(replay(tre.code(), t.moves).back().size(), 0);
  expect_log_sound(tre.code(), t.moves);
}

TEST(Search, Subsets) {
  EXPECT_EQ(subsets_of(4, 2).size(), 6u);
  EXPECT_EQ(subsets_of(4, 0).size(), 1u);
  EXPECT_EQ(subsets_of(3, 4).size(), 0u);
  EXPECT_EQ(subsets_of(5, 3).front(), (Subset{0, 1, 2}));
  EXPECT_EQ(subsets_of(5, 3).back(), (Subset{2, 3, 4}));
}

TEST(Search, TrefoilAllSingletons) {
  SearchOptions o;
  o.all_witnesses = true;
  auto r = exhaustive_search(knot("3_1"), 1, o);
  EXPECT_EQ(r.kind, SearchResult::Kind::Some);
  EXPECT_EQ(r.witnesses, (std::vector<Subset>{{0}, {1}, {2}}));
}

TEST(Search, NineThirtyFiveOneChange) {
  auto r = exhaustive_search(knot("9_35"), 1);
  EXPECT_EQ(r.kind, SearchResult::Kind::AllRefuted);
  EXPECT_EQ(r.subsets_checked, 9u);
}

TEST(Search, EightFifteenTwoChanges) {
  auto r = exhaustive_search(knot("8_15"), 2);
  ASSERT_EQ(r.kind, SearchResult::Kind::Some);
  auto changed = change_crossings(knot("8_15"), r.witnesses.front());
  EXPECT_EQ(replay(changed.code(), r.certificate.moves).back().size(), 0);
}

TEST(Search, LeastWitnessIndependentOfJobs) {
  SearchOptions one, many;
  many.jobs = 4;
  auto a = exhaustive_search(knot("11a299"), 3, one);
  auto b = exhaustive_search(knot("11a299"), 3, many);
  ASSERT_EQ(a.kind, SearchResult::Kind::Some);
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(a.refuted_by, b.refuted_by);
}

TEST(Clasps, EightFifteen) {
  auto d = knot("8_15");
  auto ob = obstruction(d);
  ASSERT_EQ(ob.kind, Obstruction::Admissible);
  auto cs = clasp_candidates(d, *ob.embedding, *ob.pairing);
  ASSERT_EQ(cs.clasps.size(), 2u);
  // The two clasps hang off a common white region and differ in the other.
  auto r0 = cs.clasps[0].regions, r1 = cs.clasps[1].regions;
  EXPECT_NE(r0, r1);
  int shared = 0;
  for (int a : r0)
    for (int b : r1) shared += a == b;
  EXPECT_EQ(shared, 1);
  auto c = certify_unlink(change_crossings(d, cs.crossings()));
  EXPECT_EQ(c.status, UnlinkCertificate::Status::Certified);
}

TEST(Clasps, Trefoil) {
  auto d = knot("3_1");
  auto ob = obstruction(d);
  auto cs = clasp_candidates(d, *ob.embedding, *ob.pairing);
  ASSERT_EQ(cs.clasps.size(), 1u);
  EXPECT_EQ(certify_unlink(change_crossings(d, cs.crossings())).status, UnlinkCertificate::Status::Certified);
}

TEST(Clasps, NotTwistReduced) {
  auto d = knot("7_5");
  ASSERT_FALSE(is_twist_reduced(d));
  auto ob = obstruction(d);
  ASSERT_EQ(ob.kind, Obstruction::Admissible);
  EXPECT_EQ(kind_of([&] { clasp_candidates(d, *ob.embedding, *ob.pairing); }), ErrorKind::PreconditionViolated);
}

TEST(Decide, EightFifteenEqual) {
  auto v = decide_minimal_unlinking(knot("8_15"));
  EXPECT_EQ(v.result, VerdictKind::Equal);
  EXPECT_EQ(v.p, 2);
  EXPECT_EQ(v.witness.size(), 2u);
  ASSERT_TRUE(v.clasps);
  EXPECT_EQ(v.witness, v.clasps->crossings());
  EXPECT_EQ(v.u_lower, 2);
  EXPECT_EQ(v.u_upper, 2);
}

TEST(Decide, ElevenA299) {
  auto v = decide_minimal_unlinking(knot("11a299"));
  EXPECT_EQ(v.result, VerdictKind::StrictlyGreater);
  EXPECT_EQ(v.p, 2);
  EXPECT_EQ(v.obstruction, Obstruction::Obstructed);
  EXPECT_EQ(v.u_lower, 3);
  EXPECT_EQ(v.u_upper, 3);
  EXPECT_EQ(v.c4_lower, 3);
  EXPECT_EQ(v.witness.size(), 3u);
}

TEST(Decide, ElevenA362Bounds) {
  auto v = decide_minimal_unlinking(knot("11a362"));
  EXPECT_EQ(v.result, VerdictKind::StrictlyGreater);
  EXPECT_EQ(v.u_lower, 2);
  EXPECT_EQ(v.u_upper, 3);
}

TEST(Decide, MirrorGivesSameBounds) {
  auto a = decide_minimal_unlinking(knot("9_35"));
  auto b = decide_minimal_unlinking(mirror(knot("9_35")));
  EXPECT_EQ(a.u_lower, b.u_lower);
  EXPECT_EQ(a.u_upper, b.u_upper);
  EXPECT_TRUE(b.mirrored);
  EXPECT_EQ(a.u_lower, 2);
}

TEST(Decide, Preconditions) {
  EXPECT_EQ(kind_of([] { decide_minimal_unlinking(knot("4_1")); }), ErrorKind::NotSpecialAlternating);
  auto two = split_union(knot("3_1"), knot("3_1"));
  EXPECT_EQ(kind_of([&] { decide_minimal_unlinking(two); }), ErrorKind::SplitDiagram);
}

TEST(Additivity, Examples) {
  auto tre = decide_minimal_unlinking(knot("3_1"));
  auto both = split_additivity({tre, tre});
  EXPECT_EQ(both.result, VerdictKind::Equal);
  EXPECT_EQ(both.changes, 2);
  EXPECT_EQ(both.p, 2);

  UnlinkingVerdict greater;
  greater.p = 1;
  greater.result = VerdictKind::StrictlyGreater;
  greater.u_lower = greater.c4_lower = 2;
  auto mixed = split_additivity({tre, greater});
  EXPECT_EQ(mixed.result, VerdictKind::StrictlyGreater);
  EXPECT_EQ(mixed.u_lower, 3);
  EXPECT_FALSE(mixed.u_upper);

  auto none = split_additivity({});
  EXPECT_EQ(none.result, VerdictKind::Equal);
  EXPECT_EQ(none.changes, 0);
}

TEST(Additivity, SplitComponentsDecideSeparately) {
  auto two = split_union(knot("3_1"), knot("8_15"));
  std::vector<UnlinkingVerdict> vs;
  for (const auto& piece : split_components(two)) vs.push_back(decide_minimal_unlinking(piece));
  auto c = split_additivity(vs);
  EXPECT_EQ(c.result, VerdictKind::Equal);
  EXPECT_EQ(c.p, 3);
  EXPECT_EQ(c.u_upper, 3);
}

TEST(Reference, ElevenA354RelatesToNineThirtyFive) {
  std::vector<ReferenceKnot> refs{{"9_35", knot("9_35"), 2}};
  auto d = knot("11a354");
  auto rel = reference_relation(d, refs);
  ASSERT_TRUE(rel);
  EXPECT_EQ(rel->c4_upper, 3);
  auto path = replay(change_crossings(d, std::array{rel->crossing}).code(), rel->moves);
  EXPECT_TRUE(isomorphic(path.back(), knot("9_35").code(), {true, true}));
}

TEST(Reference, NoRelationForDeterminedKnot) {
  std::vector<ReferenceKnot> refs{{"9_35", knot("9_35"), 2}};
  EXPECT_FALSE(reference_relation(knot("11a299"), refs));
}
