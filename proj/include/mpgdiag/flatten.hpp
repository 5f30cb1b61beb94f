#pragma once

#include "mpgdiag/diagram.hpp"
#include "mpgdiag/game.hpp"

namespace mpgdiag {

// Game-level composition: the operations of the rightward syntactic
// category, plus their bidirectional composites. Flattening a diagram
// through these yields one monolithic game, the baseline the
// compositional evaluation is checked against.

OpenGame ident_game(int32_t n);
OpenGame swap_game(int32_t a, int32_t b);  // rightward a+b -> b+a

OpenGame seq_rightward(const OpenGame& a, const OpenGame& b);
OpenGame sum_games(const OpenGame& a, const OpenGame& b);
OpenGame trace_game(int32_t loops, const OpenGame& a);

OpenGame constant_game(ConstKind k);
OpenGame seq_bidirectional(const OpenGame& a, const OpenGame& b);
OpenGame sum_bidirectional(const OpenGame& a, const OpenGame& b);

OpenGame flatten(const SharedDag& dag);

// The flattened game written back in the leaf `game { ... }` syntax.
std::string emit_leaf_syntax(const OpenGame& g);

}  // namespace mpgdiag
