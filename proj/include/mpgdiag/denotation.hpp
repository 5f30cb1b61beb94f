#pragma once

#include <vector>

#include "mpgdiag/game.hpp"
#include "mpgdiag/plays.hpp"

namespace mpgdiag {

// Set of sets of play arrows: the outer index ranges over the Exists
// player's strategies, the inner one over the Forall player's responses.
// Stored canonically (inner and outer sorted, duplicates collapsed) so
// that equality is plain equality.
struct FatDen {
  int32_t dom = 0, cod = 0;
  std::vector<std::vector<PlayArrow>> val;

  friend bool operator==(const FatDen&, const FatDen&) = default;
};

void canonicalize(std::vector<std::vector<PlayArrow>>& val);

struct LeafLimits {
  int32_t max_positions = 20;
};

// Denotation of a leaf by full strategy enumeration over the underlying
// rightward game. Exponential in the branching positions of the leaf,
// which is the intended usage: keep leaves small, compose for size.
FatDen denote_leaf(const OpenGame& g, const LeafLimits& limits = {});

FatDen fat_identity(int32_t n);
FatDen fat_swap(int32_t a, int32_t b);
FatDen fat_singleton(PlayArrow f);

FatDen seq_fat(const FatDen& F, const FatDen& G);
FatDen sum_fat(const FatDen& F, const FatDen& G);
FatDen trace_fat(int32_t loops, const FatDen& F);

enum class Status { Winning, Losing, Pending };
const char* status_name(Status s);

// Def-of-entrance classification on the per-entrance projection of a
// denotation; the same rule serves the fat and the meager form.
Status classify_entrance(const std::vector<std::vector<PlayArrow>>& val, int32_t i);

// Per-entrance projection: the set of sets of values at entrance i.
std::vector<std::vector<TValue>> project_entrance(const std::vector<std::vector<PlayArrow>>& val,
                                                  int32_t i);

template <class Den>
struct IntArrow {
  Arity dom, cod;  // den is an arrow dom.right+cod.left -> cod.right+dom.left
  Den den;
};

}  // namespace mpgdiag
