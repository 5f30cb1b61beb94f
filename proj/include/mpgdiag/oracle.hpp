#pragma once

#include <vector>

#include "mpgdiag/game.hpp"

namespace mpgdiag {

enum class Winner { Winning, Losing };

struct OracleLimits {
  int32_t brute_max_positions = 14;
};

struct GameTooLargeForBruteForce : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground truth by enumeration: the entrance is winning iff some Exists
// strategy beats every Forall strategy. Exponential; closed games only.
Winner brute_force_solve(const OpenGame& g, int32_t entrance, const OracleLimits& lim = {});

struct PmStats {
  int64_t lifts = 0;
  int64_t top = 0;
  std::string weight_scale;  // factor that cleared rational weights
};

struct PmBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Energy progress measure solver: least fixpoint of the lifting
// operator, top element the sum of absolute negative weights. Closed
// games, one verdict per entrance. Pseudo-polynomial: a nonzero
// max_lifts caps the work (reproducibly, unlike a wall clock) and
// overruns raise PmBudgetExceeded.
std::vector<Winner> progress_measure_solve(const OpenGame& g, PmStats* stats = nullptr,
                                           int64_t max_lifts = 0);

}  // namespace mpgdiag
