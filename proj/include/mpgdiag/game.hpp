#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpgdiag/rational.hpp"

namespace mpgdiag {

enum class Role : uint8_t { Exists, Forall };

// One boundary of an open game: number of rightward and leftward wires.
struct Arity {
  int32_t right = 0;
  int32_t left = 0;
  friend bool operator==(const Arity&, const Arity&) = default;
};

// Target of an edge: an exit or a position, packed into one int.
struct Target {
  int32_t code = 0;  // >= 0: position index, < 0: exit index ~code
  static Target exit(int32_t j) { return Target{~j}; }
  static Target pos(int32_t q) { return Target{q}; }
  bool is_exit() const { return code < 0; }
  int32_t exit_index() const { return ~code; }
  int32_t pos_index() const { return code; }
  friend auto operator<=>(const Target&, const Target&) = default;
};

// Source of an edge: an entrance or a position.
struct EdgeSource {
  int32_t code = 0;  // >= 0: position index, < 0: entrance index ~code
  static EdgeSource entrance(int32_t i) { return EdgeSource{~i}; }
  static EdgeSource pos(int32_t q) { return EdgeSource{q}; }
  bool is_entrance() const { return code < 0; }
  int32_t entrance_index() const { return ~code; }
  int32_t pos_index() const { return code; }
  friend auto operator<=>(const EdgeSource&, const EdgeSource&) = default;
};

enum class GameErrorCode {
  EntranceWithoutSuccessor,
  EntranceWithMultipleSuccessors,
  ExitWithMultiplePredecessors,
  DanglingEdgeEndpoint,
  MissingRoleOrWeight,
  NotRightward,
  NotDeterministic,
  StrategyGameMismatch,
  LeafTooLarge,
};

struct GameError : std::runtime_error {
  GameErrorCode code;
  GameError(GameErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Unvalidated game description, as it comes out of the parser or a generator.
struct RawGame {
  Arity left, right;  // left-arity m, right-arity n
  std::vector<std::string> pos_names;
  std::vector<Role> roles;
  std::vector<Rational> weights;
  struct Edge {
    EdgeSource src;
    Target dst;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };
  std::vector<Edge> edges;
};

// A validated open mean payoff game. Entrances are indexed
// 0..left.right+right.left-1 (left rightward wires first, then right
// leftward ones); exits 0..right.right+left.left-1 (right rightward
// first, then left leftward). Every entrance has exactly one successor
// and every exit at most one predecessor.
struct OpenGame {
  Arity left, right;
  std::vector<Role> roles;
  std::vector<Rational> weights;
  std::vector<Target> entrance_succ;        // one per entrance
  std::vector<std::vector<Target>> succ;    // per position, sorted, unique
  std::vector<std::string> labels;          // empty for composite games

  int32_t num_positions() const { return static_cast<int32_t>(roles.size()); }
  int32_t num_entrances() const { return left.right + right.left; }
  int32_t num_exits() const { return right.right + left.left; }
  bool is_rightward() const { return left.left == 0 && right.left == 0; }
  int64_t num_edges() const;
  std::string label(int32_t q) const;
};

OpenGame validate_game(const RawGame& raw);
RawGame to_raw(const OpenGame& g);

// Re-checks the OpenGame invariants; used by property tests on the
// outputs of the composition operations.
void check_valid(const OpenGame& g);

// Reads an oMPG (m_r,m_l)->(n_r,n_l) as the rightward game
// m_r+n_l -> n_r+m_l it is underneath; wrap_object goes back.
OpenGame as_underlying(const OpenGame& g);
OpenGame wrap_object(OpenGame underlying, Arity dom, Arity cod);

struct Strategy {
  Role owner = Role::Exists;
  std::vector<std::optional<Target>> choice;  // indexed by position
};

// Lazy enumeration of the memoryless strategies of one player: an
// odometer over the successor lists of the owned positions that can move.
class StrategyEnum {
 public:
  StrategyEnum(const OpenGame& g, Role owner);
  bool next(Strategy& out);  // fills strategies one by one; false when done
  uint64_t count() const;
  void reset();

 private:
  const OpenGame* game_;
  Role owner_;
  std::vector<int32_t> movable_;  // owned positions with >= 1 successor
  std::vector<size_t> odometer_;
  bool exhausted_ = false;
  bool started_ = false;
};

// Deterministic play graph over a base game: at most one successor per
// position. Shares roles/weights with the base.
struct RoPG {
  const OpenGame* base = nullptr;
  std::vector<Target> entrance_succ;
  std::vector<std::optional<Target>> succ;

  int32_t num_entrances() const { return base->num_entrances(); }
  int32_t num_exits() const { return base->num_exits(); }
  Role role(int32_t q) const { return base->roles[q]; }
  const Rational& weight(int32_t q) const { return base->weights[q]; }
};

RoPG induced_ropg(const OpenGame& g, const Strategy& se, const Strategy& sa);
RoPG induced_ropg(OpenGame&&, const Strategy&, const Strategy&) = delete;
RoPG as_ropg(const OpenGame& g);  // requires deterministic edges
RoPG as_ropg(OpenGame&&) = delete;  // the view must not outlive the game

struct PlayNode {
  enum class Kind : uint8_t { Entrance, Position, Exit };
  Kind kind;
  int32_t idx;
  friend bool operator==(const PlayNode&, const PlayNode&) = default;
};

// A finite play (empty cycle), or the lasso of an infinite memoryless
// play: prefix followed by the cycle repeated forever.
struct Play {
  std::vector<PlayNode> prefix;
  std::vector<PlayNode> cycle;
  bool infinite() const { return !cycle.empty(); }
};

Play unique_play(const RoPG& pg, int32_t entrance);

// Cycle test of the mean payoff condition: true iff the cycle sum is >= 0.
// The prefix is irrelevant; it is accepted to mirror how plays arrive here.
bool mp_check(const std::vector<Rational>& prefix, const std::vector<Rational>& cycle);

// Cross-check mode: the exact average of the first `steps` weights of
// prefix followed by the unrolled cycle.
Rational mp_simulated_average(const std::vector<Rational>& prefix,
                              const std::vector<Rational>& cycle, int64_t steps);

}  // namespace mpgdiag
