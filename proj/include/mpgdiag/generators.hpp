#pragma once

#include <random>
#include <string>

#include "mpgdiag/diagram.hpp"
#include "mpgdiag/game.hpp"
#include "mpgdiag/plays.hpp"

namespace mpgdiag {

// Seeded RNG with rejection-sampled ranges so that generated artifacts
// do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t raw() { return eng_(); }
  int64_t irange(int64_t lo, int64_t hi);  // inclusive
  bool percent(int p) { return irange(0, 99) < p; }

 private:
  std::mt19937_64 eng_;
};

struct RandomGameOpts {
  int32_t positions = 4;
  int64_t weight_lo = -5;
  int64_t weight_hi = 5;
  bool decimal_weights = false;  // tenths instead of integers
  int32_t max_out = 3;
  int stuck_percent = 10;      // position with no successor
  int exit_feed_percent = 70;  // exit receives a predecessor
};

OpenGame random_rightward_game(Rng& rng, int32_t m, int32_t n, const RandomGameOpts& o = {});
OpenGame random_open_game(Rng& rng, Arity left, Arity right, const RandomGameOpts& o = {});
// Out-degree at most one everywhere: a play graph.
OpenGame random_deterministic_game(Rng& rng, int32_t m, int32_t n, const RandomGameOpts& o = {});

PlayArrow random_play_arrow(Rng& rng, int32_t m, int32_t n);

// Benchmark families. All generators are deterministic in their
// arguments and emit self-contained diagram sources.

struct MiningOpts {
  int32_t floors = 4;
  int32_t floor_positions = 40;
  int32_t loop_arity = 1;
  int64_t weight_lo = -100000;
  int64_t weight_hi = 100000;
};
std::string gen_mining(uint64_t seed, const MiningOpts& o = {});

struct LayeredOpts {
  int32_t layers = 20;
  int64_t weight_lo = -100000;
  int64_t weight_hi = 100000;
  int64_t max_flat_positions = 200000;
};
std::string gen_layered(uint64_t seed, const LayeredOpts& o = {});

struct DrOpts {
  int32_t dr = 4;       // degree of repetition; divides slots
  int32_t slots = 16;   // leaves in the fixed chain
  int32_t width = 2;    // leaf interface width
  int32_t leaf_positions = 5;
  int64_t weight_lo = -100000;
  int64_t weight_hi = 100000;
};
std::string gen_dr(uint64_t seed, const DrOpts& o = {});

struct ArityOpts {
  int32_t width = 2;
  int32_t slots = 8;
  int32_t leaf_positions = 5;
  int64_t weight_lo = -100000;
  int64_t weight_hi = 100000;
};
std::string gen_arity(uint64_t seed, const ArityOpts& o = {});

struct RandomClosedOpts {
  int32_t max_positions = 12;  // flattened total
  int64_t weight_lo = -5;
  int64_t weight_hi = 5;
  bool decimal_weights = false;
};
std::string gen_random_closed(uint64_t seed, const RandomClosedOpts& o = {});

}  // namespace mpgdiag
