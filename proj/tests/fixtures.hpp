#pragma once

#include "mpgdiag/game.hpp"
#include "mpgdiag/generators.hpp"
#include "mpgdiag/plays.hpp"

namespace mpgdiag::test {

// The three-position open game used as the running example: an Exists
// position worth 3.1 between two Forall positions worth -4.5 and 2,
// with arities (3,1) -> (2,1).
//
// Entrances: 0,1,2 = left rightward wires, 3 = right leftward wire.
// Exits: 0,1 = right rightward wires, 2 = left leftward wire.
inline OpenGame example_game() {
  RawGame raw;
  raw.left = {3, 1};
  raw.right = {2, 1};
  raw.pos_names = {"e1", "a1", "a2"};
  raw.roles = {Role::Exists, Role::Forall, Role::Forall};
  raw.weights = {Rational(31, 10), Rational(-9, 2), Rational(2)};
  raw.edges = {
      {EdgeSource::entrance(0), Target::exit(0)}, {EdgeSource::entrance(1), Target::pos(1)},
      {EdgeSource::entrance(2), Target::pos(0)},  {EdgeSource::entrance(3), Target::pos(2)},
      {EdgeSource::pos(0), Target::exit(2)},      {EdgeSource::pos(0), Target::pos(1)},
      {EdgeSource::pos(1), Target::pos(2)},       {EdgeSource::pos(2), Target::pos(0)},
      {EdgeSource::pos(2), Target::exit(1)},
  };
  return validate_game(raw);
}

// The four strategies of example_game: Exists moves e1 to the left exit
// or into the cycle; Forall moves a2 back to e1 or to the right exit.
inline Strategy exists_to_exit(const OpenGame& g) {
  Strategy s{Role::Exists, std::vector<std::optional<Target>>(g.num_positions())};
  s.choice[0] = Target::exit(2);
  return s;
}
inline Strategy exists_to_cycle(const OpenGame& g) {
  Strategy s{Role::Exists, std::vector<std::optional<Target>>(g.num_positions())};
  s.choice[0] = Target::pos(1);
  return s;
}
inline Strategy forall_to_cycle(const OpenGame& g) {
  Strategy s{Role::Forall, std::vector<std::optional<Target>>(g.num_positions())};
  s.choice[1] = Target::pos(2);
  s.choice[2] = Target::pos(0);
  return s;
}
inline Strategy forall_to_exit(const OpenGame& g) {
  Strategy s{Role::Forall, std::vector<std::optional<Target>>(g.num_positions())};
  s.choice[1] = Target::pos(2);
  s.choice[2] = Target::exit(1);
  return s;
}

inline Rational rat(int64_t num, int64_t den = 1) { return Rational(num, den); }

}  // namespace mpgdiag::test
