#pragma once

#include "mpgdiag/denotation.hpp"

namespace mpgdiag {

// Dominance order on play arrow values, per entrance. Win-for-Exists is
// the bottom element (best for Exists), Win-for-Forall the top; weighted
// exits to the same exit compare by weight, with a higher weight smaller.
bool leq_tvalue(const TValue& a, const TValue& b);
bool leq_play(const PlayArrow& f, const PlayArrow& g);

// Hoare-style lifting to antichains: S <= T iff every element of S is
// below some element of T.
bool leq_antichain(const std::vector<PlayArrow>& S, const std::vector<PlayArrow>& T);

std::vector<PlayArrow> maximal_arrows(std::vector<PlayArrow> S);
std::vector<PlayArrow> minimal_arrows(std::vector<PlayArrow> S);
std::vector<std::vector<PlayArrow>> minimal_antichains(std::vector<std::vector<PlayArrow>> S);

bool is_antichain(const std::vector<PlayArrow>& S);

// Fat denotation pruned to what dominance keeps relevant: each inner set
// reduced to its maximal arrows (Forall's best responses), the outer set
// to the antichains minimal in the lifted order (Exists' dominant
// strategies). Classification agrees with the fat form.
struct MeagerDen {
  int32_t dom = 0, cod = 0;
  std::vector<std::vector<PlayArrow>> val;

  friend bool operator==(const MeagerDen&, const MeagerDen&) = default;
};

MeagerDen fat_to_meager(const FatDen& F);
MeagerDen denote_leaf_meager(const OpenGame& g, const LeafLimits& limits = {});

MeagerDen meager_identity(int32_t n);
MeagerDen meager_swap(int32_t a, int32_t b);
MeagerDen meager_singleton(PlayArrow f);

MeagerDen seq_meager(const MeagerDen& F, const MeagerDen& G);
MeagerDen sum_meager(const MeagerDen& F, const MeagerDen& G);
MeagerDen trace_meager(int32_t loops, const MeagerDen& F);

void check_meager_invariants(const MeagerDen& d);

}  // namespace mpgdiag
