#pragma once

/*
 * Local moves on based Gauss codes.
 *
 * Everything here rewrites the code combinatorially; no geometry is tracked,
 * so detour moves (re-routing through virtual crossings) are identities and
 * never appear.  The move vocabulary:
 *
 *   R1Insert / R1Delete    kink with a fresh crossing, either pass order
 *   R2Insert / R2Delete    opposite-sign pair, pattern O(c1)O(c2) on one
 *                          strand and U(c2)U(c1) on another
 *   R3                     slide the middle strand across a top/bottom
 *                          crossing; one oriented variant and its inverse,
 *                          the others are compositions with R2
 *   OCSwap                 swap two adjacent over passes
 *   BaseShift              move a base point across one adjacent pass
 *   SV                     delete a self-crossing (virtualization)
 *
 * Moves are "relative base point" moves: a base point may never sit in a gap
 * strictly between two passes an R-move treats as adjacent; only BaseShift
 * carries a base point across a pass.  Classes group the vocabulary by what
 * they preserve: WBar moves (R1*, R2*, R3, OCSwap) preserve every mu; adding
 * BaseShift preserves delta and mu modulo delta; SV preserves mu of
 * non-repeated sequences.
 *
 * Each move line in a trace is replayable: insertions carry their fresh
 * crossing ids, and random_walk allocates ids monotonically so a trace never
 * reuses one.
 */

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weldmu/gauss.hpp"

namespace weldmu::moves {

class MoveError : public std::runtime_error {
 public:
  explicit MoveError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class MoveClass { WBar, BaseChange, SV };

struct Site {
  int component{};  // 1-based
  int gap{};        // 0-based, before the gap-th pass
  bool operator==(const Site&) const = default;
};

struct R1Insert {
  int component{};
  int gap{};
  int sign{};
  bool over_first{};  // true: O then U; false: U then O
  gauss::CrossingId fresh{};
  bool operator==(const R1Insert&) const = default;
};

struct R1Delete {
  gauss::CrossingId crossing{};
  bool operator==(const R1Delete&) const = default;
};

struct R2Insert {
  Site over_site{};   // receives O(c1) O(c2)
  Site under_site{};  // receives U(c2) U(c1)
  int sign{};         // sign of c1; c2 gets the opposite
  // Only meaningful when both sites name the same gap: whether the under
  // block precedes the over block there.
  bool under_first{};
  gauss::CrossingId fresh1{};
  gauss::CrossingId fresh2{};
  bool operator==(const R2Insert&) const = default;
};

struct R2Delete {
  gauss::CrossingId c1{};
  gauss::CrossingId c2{};
  bool operator==(const R2Delete&) const = default;
};

// The three crossings of the triangle: t = top over bottom (sign -1),
// m = middle over bottom (sign +1), c = top over middle (sign +1).
// Applying swaps the pass pair at each of the three strands, which is an
// involution, so the same triple names the move and its inverse.
struct R3 {
  gauss::CrossingId t{};
  gauss::CrossingId m{};
  gauss::CrossingId c{};
  bool operator==(const R3&) const = default;
};

struct OCSwap {
  int component{};
  int gap{};  // the gap between the two over passes being swapped
  bool operator==(const OCSwap&) const = default;
};

struct BaseShift {
  int component{};
  int dir{};  // +1: forward past one pass, -1: backward
  bool operator==(const BaseShift&) const = default;
};

struct SVDelete {
  gauss::CrossingId crossing{};
  bool operator==(const SVDelete&) const = default;
};

using Move = std::variant<R1Insert, R1Delete, R2Insert, R2Delete, R3, OCSwap, BaseShift, SVDelete>;

MoveClass move_class(const Move& m);

// One-line replayable rendering, e.g. "R1I c=7 comp=2 gap=3 sign=+ ord=OU".
std::string to_trace(const Move& m);
Move move_from_trace(std::string_view line);

// Pure; throws MoveError when the move does not apply to (d, p).
gauss::Based apply(const gauss::Diagram& d, const gauss::BasePoints& p, const Move& m);

// Every legal move of the class.  WBar includes the insertion families
// (fresh ids filled in as max id + 1, + 2); a crossing-free diagram
// therefore still has WBar moves.
std::vector<Move> legal_moves(const gauss::Diagram& d, const gauss::BasePoints& p, MoveClass cls);

struct WalkStep {
  gauss::Based state;
  std::optional<Move> move;  // empty on the initial entry
};

struct WalkOptions {
  int size_cap = 40;            // insertions suppressed at or above this many crossings
  int deletion_bias_from = 30;  // above this, prefer shrinking moves with ramping odds
};

// Deterministic in (seed, inputs): steps entries are appended after the
// initial state, sampling uniformly from the legal moves of the allowed
// classes plus the insertion families; when nothing is legal an insertion
// is emitted regardless of the size cap.
std::vector<WalkStep> random_walk(const gauss::Diagram& d, const gauss::BasePoints& p,
                                  std::uint64_t seed, int steps,
                                  const std::set<MoveClass>& classes, WalkOptions opts = {});

}  // namespace weldmu::moves
