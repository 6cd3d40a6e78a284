#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "weldmu/cli.hpp"
#include "weldmu/milnor.hpp"
#include "weldmu/moves.hpp"

using namespace weldmu;
using gauss::Based;
using gauss::BasePoints;
using gauss::Diagram;
using moves::Move;
using moves::MoveClass;
using moves::MoveError;
using moves::Site;

namespace {

const char* kHopf = "O1+ U2+ ; O2+ U1+";
const char* kExample = "O2+ U1+ ; O1+ O4- U2+ O5+ U3+ O3+ ; U4- U5+";
// Crossing 1 is a self-crossing of component 1 with an under pass between
// its legs, so it is SV-deletable but not a deletable kink at base gap 0.
const char* kSeparatedKink = "O1+ U2+ U1+ ; O2+";

int count_kind(const std::vector<Move>& ms, auto probe) {
  return static_cast<int>(std::count_if(
      ms.begin(), ms.end(), [&](const Move& m) { return probe(m); }));
}

}  // namespace

TEST_CASE("move classes partition the vocabulary") {
  CHECK(moves::move_class(moves::R1Insert{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::R1Delete{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::R2Insert{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::R2Delete{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::R3{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::OCSwap{}) == MoveClass::WBar);
  CHECK(moves::move_class(moves::BaseShift{}) == MoveClass::BaseChange);
  CHECK(moves::move_class(moves::SVDelete{}) == MoveClass::SV);
}

TEST_CASE("trace lines replay to the same move") {
  const std::vector<std::pair<Move, std::string>> table = {
      {moves::R1Insert{2, 3, 1, true, 7}, "R1I c=7 comp=2 gap=3 sign=+ ord=OU"},
      {moves::R1Insert{1, 0, -1, false, 4}, "R1I c=4 comp=1 gap=0 sign=- ord=UO"},
      {moves::R1Delete{7}, "R1D c=7"},
      {moves::R2Insert{{2, 3}, {1, 0}, 1, false, 8, 9},
       "R2I c1=8 c2=9 over=2:3 under=1:0 sign=+ ord=OU"},
      {moves::R2Insert{{2, 3}, {2, 3}, -1, true, 8, 9},
       "R2I c1=8 c2=9 over=2:3 under=2:3 sign=- ord=UO"},
      {moves::R2Delete{8, 9}, "R2D c1=8 c2=9"},
      {moves::R3{1, 2, 3}, "R3 t=1 m=2 c=3"},
      {moves::OCSwap{1, 4}, "OC comp=1 gap=4"},
      {moves::BaseShift{2, 1}, "BS comp=2 dir=+1"},
      {moves::BaseShift{1, -1}, "BS comp=1 dir=-1"},
      {moves::SVDelete{3}, "SV c=3"},
  };
  for (const auto& [move, line] : table) {
    CHECK(moves::to_trace(move) == line);
    CHECK(moves::move_from_trace(line) == move);
  }

  CHECK_THROWS_AS(moves::move_from_trace(""), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("XX c=1"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("R1I c=7"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("R1I c=7 comp=2 gap=3 sign=+ ord=XY"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("R1I c=7 comp=x gap=3 sign=+ ord=OU"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("BS comp=1 dir=2"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("OC comp=1gap"), MoveError);
  CHECK_THROWS_AS(moves::move_from_trace("R2I c1=8 c2=9 over=23 under=1:0 sign=+ ord=OU"),
                  MoveError);
}

TEST_CASE("kink insertion and deletion are inverse") {
  Based b = gauss::parse_based(kHopf);
  for (bool over_first : {true, false}) {
    Based kinked = moves::apply(b.diagram, b.base,
                                moves::R1Insert{2, 1, -1, over_first, 7});
    CHECK(kinked.diagram.crossing_count() == 3);
    CHECK(kinked.diagram.sign(7) == -1);
    Based back = moves::apply(kinked.diagram, kinked.base, moves::R1Delete{7});
    CHECK(back == b);
  }
}

TEST_CASE("r2 insertion and deletion are inverse in every site layout") {
  Based hopf = gauss::parse_based(kHopf);

  // Two different components.
  Based big = moves::apply(hopf.diagram, hopf.base,
                           moves::R2Insert{{1, 1}, {2, 1}, 1, false, 5, 6});
  CHECK(gauss::serialize_diagram(big.diagram) == "O1+ O5+ O6- U2+ ; O2+ U6- U5+ U1+");
  CHECK(moves::apply(big.diagram, big.base, moves::R2Delete{5, 6}) == hopf);
  // The pair is ordered: the blocks read O(c1) O(c2) and U(c2) U(c1).
  CHECK_THROWS_AS(moves::apply(big.diagram, big.base, moves::R2Delete{6, 5}), MoveError);

  // Same component, distinct gaps.
  Based knot = gauss::parse_based("O1+ U1+");
  Based strand = moves::apply(knot.diagram, knot.base,
                              moves::R2Insert{{1, 0}, {1, 1}, 1, false, 5, 6});
  CHECK(gauss::serialize_diagram(strand.diagram) == "O5+ O6- O1+ U6- U5+ U1+");
  CHECK(moves::apply(strand.diagram, strand.base, moves::R2Delete{5, 6}) == knot);

  // Same gap, both block orders.
  Based ou = moves::apply(knot.diagram, knot.base,
                          moves::R2Insert{{1, 1}, {1, 1}, -1, false, 5, 6});
  CHECK(gauss::serialize_diagram(ou.diagram) == "O1+ O5- O6+ U6+ U5- U1+");
  CHECK(moves::apply(ou.diagram, ou.base, moves::R2Delete{5, 6}) == knot);

  Based uo = moves::apply(knot.diagram, knot.base,
                          moves::R2Insert{{1, 1}, {1, 1}, -1, true, 5, 6});
  CHECK(gauss::serialize_diagram(uo.diagram) == "O1+ U6+ U5- O5- O6+ U1+");
  CHECK(moves::apply(uo.diagram, uo.base, moves::R2Delete{5, 6}) == knot);
}

TEST_CASE("a base point in the only closing gap blocks the kink deletion") {
  Based b = gauss::parse_based(kSeparatedKink);
  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::R1Delete{1}), MoveError);

  std::vector<Move> wbar = moves::legal_moves(b.diagram, b.base, MoveClass::WBar);
  CHECK(count_kind(wbar, [](const Move& m) {
          return std::holds_alternative<moves::R1Delete>(m);
        }) == 0);

  // SV has no adjacency requirement, so the same crossing goes quietly.
  std::vector<Move> sv = moves::legal_moves(b.diagram, b.base, MoveClass::SV);
  REQUIRE(sv.size() == 1);
  CHECK(sv[0] == Move{moves::SVDelete{1}});
  Based gone = moves::apply(b.diagram, b.base, moves::SVDelete{1});
  CHECK(gauss::serialize_based(gone.diagram, gone.base) == "U2+@0 ; O2+@0");
}

TEST_CASE("the r3 slide swaps three pass pairs and is an involution") {
  Based b = gauss::parse_based("U1- U2+ ; O2+ U3+ ; O1- O3+");

  std::vector<Move> wbar = moves::legal_moves(b.diagram, b.base, MoveClass::WBar);
  CHECK(std::count(wbar.begin(), wbar.end(), Move{moves::R3{1, 2, 3}}) == 1);

  Based slid = moves::apply(b.diagram, b.base, moves::R3{1, 2, 3});
  CHECK(gauss::serialize_diagram(slid.diagram) == "U2+ U1- ; U3+ O2+ ; O3+ O1-");
  CHECK(moves::apply(slid.diagram, slid.base, moves::R3{1, 2, 3}) == b);

  CHECK(milnor::mu_table(slid.diagram, slid.base, 3).values ==
        milnor::mu_table(b.diagram, b.base, 3).values);

  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::R3{2, 1, 3}), MoveError);
  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::R3{1, 3, 2}), MoveError);
  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::R3{1, 2, 2}), MoveError);
}

TEST_CASE("adjacent over passes commute unless the base point sits between them") {
  Based b = gauss::parse_based("O1+ O2+ ; U1+ U2+");
  Based swapped = moves::apply(b.diagram, b.base, moves::OCSwap{1, 1});
  CHECK(gauss::serialize_diagram(swapped.diagram) == "O2+ O1+ ; U1+ U2+");
  CHECK(moves::apply(swapped.diagram, swapped.base, moves::OCSwap{1, 1}) == b);
  CHECK(milnor::mu_table(swapped.diagram, swapped.base, 3).values ==
        milnor::mu_table(b.diagram, b.base, 3).values);

  // Gap 0 holds the base point; the wrap-around swap is blocked there.
  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::OCSwap{1, 0}), MoveError);
  CHECK_THROWS_AS(moves::apply(b.diagram, b.base, moves::OCSwap{2, 1}), MoveError);
}

TEST_CASE("base shifts walk the base point around the component") {
  Based b = gauss::parse_based(kExample);
  Based cur = b;
  for (int i = 0; i < 3; ++i)
    cur = moves::apply(cur.diagram, cur.base, moves::BaseShift{2, 1});
  CHECK(cur.base.gaps == std::vector<int>{0, 3, 0});
  CHECK(cur.diagram == b.diagram);
  CHECK(milnor::longitude_words(cur.diagram, cur.base) ==
        std::vector<std::string>{"a22", "a21^-1 a22 a11", "a22^-1 a21"});

  // mu(123) moves, the residue pair does not.
  CHECK(milnor::mu(b.diagram, b.base, {1, 2, 3}) !=
        milnor::mu(cur.diagram, cur.base, {1, 2, 3}));
  CHECK(milnor::mu_bar(b.diagram, b.base, {1, 2, 3})
            .same_invariant(milnor::mu_bar(cur.diagram, cur.base, {1, 2, 3})));

  for (int i = 0; i < 3; ++i)
    cur = moves::apply(cur.diagram, cur.base, moves::BaseShift{2, -1});
  CHECK(cur == b);

  Based gappy = gauss::parse_based("- ; O1+ U1+");
  CHECK_THROWS_AS(moves::apply(gappy.diagram, gappy.base, moves::BaseShift{1, 1}), MoveError);
}

TEST_CASE("erasing a wrapped pair keeps the base point in its surviving gap") {
  Based b = gauss::parse_based("U1+ O2+ U2+ O1+@2");
  Based out = moves::apply(b.diagram, b.base, moves::R1Delete{1});
  CHECK(gauss::serialize_diagram(out.diagram) == "O2+ U2+");
  CHECK(out.base.gaps == std::vector<int>{1});

  // From the last gap the base lands on the cyclic seam, which is gap 0.
  Based b3 = gauss::parse_based("U1+ O2+ U2+ O1+@3");
  Based out3 = moves::apply(b3.diagram, b3.base, moves::R1Delete{1});
  CHECK(out3.base.gaps == std::vector<int>{0});
}

TEST_CASE("the hopf link has exactly the expected legal moves") {
  Based b = gauss::parse_based(kHopf);

  std::vector<Move> wbar = moves::legal_moves(b.diagram, b.base, MoveClass::WBar);
  CHECK(wbar.size() == 56);  // 16 kink insertions + 40 r2 insertions
  CHECK(count_kind(wbar, [](const Move& m) {
          return std::holds_alternative<moves::R1Insert>(m);
        }) == 16);
  CHECK(count_kind(wbar, [](const Move& m) {
          return std::holds_alternative<moves::R2Insert>(m);
        }) == 40);

  std::vector<Move> base = moves::legal_moves(b.diagram, b.base, MoveClass::BaseChange);
  CHECK(base.size() == 4);
  CHECK(moves::legal_moves(b.diagram, b.base, MoveClass::SV).empty());

  // Every advertised move actually applies.
  for (const auto& cls : {MoveClass::WBar, MoveClass::BaseChange}) {
    for (const Move& m : moves::legal_moves(b.diagram, b.base, cls))
      CHECK_NOTHROW(moves::apply(b.diagram, b.base, m));
  }
}

TEST_CASE("random walks are deterministic in the seed and replayable") {
  Based b = gauss::parse_based(kSeparatedKink);
  auto w1 = moves::random_walk(b.diagram, b.base, 11, 60, {MoveClass::WBar});
  auto w2 = moves::random_walk(b.diagram, b.base, 11, 60, {MoveClass::WBar});
  REQUIRE(w1.size() == 61);
  REQUIRE(w2.size() == 61);
  CHECK_FALSE(w1[0].move.has_value());

  Based cur = b;
  for (std::size_t s = 0; s < w1.size(); ++s) {
    CHECK(w1[s].state == w2[s].state);
    if (s == 0) continue;
    REQUIRE(w1[s].move.has_value());
    CHECK(moves::to_trace(*w1[s].move) == moves::to_trace(*w2[s].move));
    // Replaying the trace line reproduces the state.
    cur = moves::apply(cur.diagram, cur.base,
                       moves::move_from_trace(moves::to_trace(*w1[s].move)));
    CHECK(cur == w1[s].state);
    CHECK(cur.diagram.crossing_count() <= 42);
  }

  auto w3 = moves::random_walk(b.diagram, b.base, 12, 60, {MoveClass::WBar});
  bool same = true;
  for (std::size_t s = 1; s < w3.size(); ++s)
    same = same && moves::to_trace(*w3[s].move) == moves::to_trace(*w1[s].move);
  CHECK_FALSE(same);

  CHECK_THROWS_AS(moves::random_walk(b.diagram, b.base, 1, 5, {}), MoveError);
  CHECK_THROWS_AS(moves::random_walk(b.diagram, b.base, 1, -1, {MoveClass::WBar}), MoveError);
}

TEST_CASE("walks only emit moves of the requested classes plus insertions") {
  Based b = gauss::parse_based(kExample);
  auto walk = moves::random_walk(b.diagram, b.base, 5, 80,
                                 {MoveClass::BaseChange, MoveClass::SV});
  bool saw_base = false;
  for (std::size_t s = 1; s < walk.size(); ++s) {
    MoveClass cls = moves::move_class(*walk[s].move);
    CHECK((cls == MoveClass::WBar || cls == MoveClass::BaseChange || cls == MoveClass::SV));
    saw_base = saw_base || cls == MoveClass::BaseChange;
  }
  CHECK(saw_base);

  // Fresh crossing ids never repeat along a walk.
  std::set<gauss::CrossingId> used;
  for (const auto& [c, s] : b.diagram.signs) used.insert(c);
  for (std::size_t s = 1; s < walk.size(); ++s) {
    if (const auto* r1 = std::get_if<moves::R1Insert>(&*walk[s].move))
      CHECK(used.insert(r1->fresh).second);
    if (const auto* r2 = std::get_if<moves::R2Insert>(&*walk[s].move)) {
      CHECK(used.insert(r2->fresh1).second);
      CHECK(used.insert(r2->fresh2).second);
    }
  }
}

TEST_CASE("check_walk confirms honest walks and catches a planted change") {
  Based b = gauss::parse_based(kSeparatedKink);
  auto honest = moves::random_walk(b.diagram, b.base, 3, 40,
                                   {MoveClass::WBar, MoveClass::SV});
  cli::WalkVerdict ok = cli::check_walk(honest, 3, {.non_repeated_only = true});
  CHECK(ok.ok);
  CHECK(ok.violation_step == -1);

  Based ref = gauss::parse_based(kExample);
  auto based_walk = moves::random_walk(ref.diagram, ref.base, 9, 30,
                                       {MoveClass::WBar, MoveClass::BaseChange});
  CHECK(cli::check_walk(based_walk, 3, {.mod_delta = true}).ok);

  // A hand-built "walk" whose second state has the opposite linking number.
  std::vector<moves::WalkStep> lie;
  lie.push_back({gauss::parse_based(kHopf), std::nullopt});
  lie.push_back({gauss::parse_based("O1- U2+ ; O2+ U1-"), moves::OCSwap{1, 1}});
  cli::WalkVerdict bad = cli::check_walk(lie, 2, {});
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation_step == 1);
  CHECK(bad.witness == milnor::Sequence{1, 2});
  CHECK(bad.detail.find("changed") != std::string::npos);
}

TEST_CASE("illegal moves are rejected with the reason") {
  Based hopf = gauss::parse_based(kHopf);
  Based r3d = gauss::parse_based("U1- U2+ ; O2+ U3+ ; O1- O3+");

  // Fresh id collisions and malformed parameters.
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Insert{1, 0, 1, true, 1}),
                  MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Insert{1, 0, 1, true, -3}),
                  MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Insert{3, 0, 1, true, 7}),
                  MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Insert{1, 2, 1, true, 7}),
                  MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Insert{1, 0, 2, true, 7}),
                  MoveError);
  CHECK_THROWS_AS(
      moves::apply(hopf.diagram, hopf.base, moves::R2Insert{{1, 0}, {2, 0}, 1, false, 7, 7}),
      MoveError);
  CHECK_THROWS_AS(
      moves::apply(hopf.diagram, hopf.base, moves::R2Insert{{1, 0}, {1, 1}, 1, true, 7, 8}),
      MoveError);

  // Deletions that do not match the diagram.
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Delete{1}), MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R1Delete{9}), MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::R2Delete{1, 1}), MoveError);
  CHECK_THROWS_AS(moves::apply(hopf.diagram, hopf.base, moves::SVDelete{1}), MoveError);

  Based same_sign = gauss::parse_based("O1+ O2+ ; U2+ U1+");
  CHECK_THROWS_AS(moves::apply(same_sign.diagram, same_sign.base, moves::R2Delete{1, 2}),
                  MoveError);

  // R3 with mismatched strands.
  CHECK_THROWS_AS(moves::apply(r3d.diagram, r3d.base, moves::R3{1, 3, 2}), MoveError);
}
