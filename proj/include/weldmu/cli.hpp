#pragma once

/*
 * Command implementations behind the weldmu binary.  Each cmd_* takes a
 * request struct plus the two output streams and returns the process exit
 * code, so tests drive them without spawning processes.
 *
 * Exit codes: 0 success, 1 compare decided "not equivalent", 2 parse error
 * in diagram input, 3 validation or usage error, 4 invariant violation
 * (fuzz found a counterexample, or a cross-check failed).
 *
 * Machine-readable output goes to out and is byte-deterministic for
 * identical requests; diagnostics go to err.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weldmu/bigint.hpp"
#include "weldmu/gauss.hpp"
#include "weldmu/milnor.hpp"
#include "weldmu/moves.hpp"

namespace weldmu::cli {

// A diagram argument: inline code, or a file path ("-" reads stdin).  JSON
// input is detected by a leading '{'.
struct DiagramInput {
  std::optional<std::string> code;
  std::optional<std::string> path;
};

struct ComputeRequest {
  DiagramInput input;
  std::optional<std::vector<int>> base;  // overrides any "@" annotations
  std::optional<int> rmax;               // default min(n + 1, 4)
  bool allow_large = false;              // permits rmax > 6
  bool json = false;
  bool non_repeated_only = false;
  bool longitudes = false;
  bool reduced_check = false;  // cross-check mu_reduced == mu on non-repeated rows
};

struct FuzzRequest {
  DiagramInput input;
  std::optional<std::vector<int>> base;
  std::uint64_t seed = 1;
  int steps = 100;
  std::set<moves::MoveClass> classes{moves::MoveClass::WBar};
  std::optional<int> rmax;  // default min(n + 1, 4)
  bool allow_large = false;
  // Compare only non-repeated sequences; defaults to true exactly when the
  // SV class is enabled.
  std::optional<bool> non_repeated;
};

enum class CompareMode { Sv, MuBar };

struct CompareRequest {
  DiagramInput a;
  DiagramInput b;
  std::optional<std::vector<int>> base_a;
  std::optional<std::vector<int>> base_b;
  CompareMode mode = CompareMode::Sv;
  std::optional<int> rmax;  // mubar mode only; default min(n + 1, 4)
  bool allow_large = false;
};

struct CloseRequest {
  DiagramInput input;  // string link text
};

struct LongitudesRequest {
  DiagramInput input;
  std::optional<std::vector<int>> base;
};

int cmd_compute(const ComputeRequest& req, std::ostream& out, std::ostream& err);
int cmd_fuzz(const FuzzRequest& req, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareRequest& req, std::ostream& out, std::ostream& err);
int cmd_close(const CloseRequest& req, std::ostream& out, std::ostream& err);
int cmd_longitudes(const LongitudesRequest& req, std::ostream& out, std::ostream& err);

// What a fuzz walk must preserve, derived from the move classes: BaseChange
// weakens equality to congruence mod delta, SV restricts the sequences to
// non-repeated ones.
struct InvarianceCheck {
  bool non_repeated_only = false;
  bool mod_delta = false;
};

struct WalkVerdict {
  bool ok = true;
  int violation_step = -1;  // index into the walk, first bad state
  milnor::Sequence witness;
  std::string detail;  // human-readable mismatch description
};

// Checks every state of the walk against the initial state's table. rmax
// must be >= 2; the walk comes from moves::random_walk or a replayed trace.
WalkVerdict check_walk(const std::vector<moves::WalkStep>& walk, int rmax, InvarianceCheck chk);

}  // namespace weldmu::cli
