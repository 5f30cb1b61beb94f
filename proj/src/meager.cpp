#include "mpgdiag/meager.hpp"

#include <algorithm>
#include <cassert>

namespace mpgdiag {

bool leq_tvalue(const TValue& a, const TValue& b) {
  if (a.kind == TValue::Kind::WinE || b.kind == TValue::Kind::WinA) return true;
  if (a.kind == TValue::Kind::Exit && b.kind == TValue::Kind::Exit) return a.exit == b.exit;
  if (a.kind == TValue::Kind::WExit && b.kind == TValue::Kind::WExit)
    return a.exit == b.exit && a.weight >= b.weight;
  return false;
}

bool leq_play(const PlayArrow& f, const PlayArrow& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    throw std::invalid_argument("leq_play: arity mismatch");
  for (int32_t i = 0; i < f.dom; ++i)
    if (!leq_tvalue(f.map[i], g.map[i])) return false;
  return true;
}

bool leq_antichain(const std::vector<PlayArrow>& S, const std::vector<PlayArrow>& T) {
  for (const auto& x : S) {
    bool dominated = false;
    for (const auto& y : T)
      if (leq_play(x, y)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

namespace {

// Quadratic pairwise filter with early exit; adequate because pruned
// sets stay small.
template <class T, class Leq>
std::vector<T> extreme(std::vector<T> S, Leq leq) {
  if (S.empty()) throw std::invalid_argument("extreme of empty set");
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::vector<T> kept;
  for (size_t i = 0; i < S.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < S.size() && !dominated; ++j)
      if (j != i && leq(S[i], S[j])) dominated = true;
    if (!dominated) kept.push_back(S[i]);
  }
  return kept;
}

}  // namespace

std::vector<PlayArrow> maximal_arrows(std::vector<PlayArrow> S) {
  return extreme(std::move(S), [](const PlayArrow& a, const PlayArrow& b) {
    return !(a == b) && leq_play(a, b);
  });
}

std::vector<PlayArrow> minimal_arrows(std::vector<PlayArrow> S) {
  return extreme(std::move(S), [](const PlayArrow& a, const PlayArrow& b) {
    return !(a == b) && leq_play(b, a);
  });
}

std::vector<std::vector<PlayArrow>> minimal_antichains(std::vector<std::vector<PlayArrow>> S) {
  // Minimality in the lifted order; antisymmetry holds on antichains, so
  // on the deduplicated input "strictly below" is "<= and not equal".
  return extreme(std::move(S),
                 [](const std::vector<PlayArrow>& a, const std::vector<PlayArrow>& b) {
                   return !(a == b) && leq_antichain(b, a);
                 });
}

bool is_antichain(const std::vector<PlayArrow>& S) {
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = 0; j < S.size(); ++j)
      if (i != j && leq_play(S[i], S[j]) && !(S[i] == S[j])) return false;
  return true;
}

namespace {

MeagerDen prune(int32_t dom, int32_t cod, std::vector<std::vector<PlayArrow>> val) {
  for (auto& inner : val) inner = maximal_arrows(std::move(inner));
  for (auto& inner : val) std::sort(inner.begin(), inner.end());
  val = minimal_antichains(std::move(val));
  return MeagerDen{dom, cod, std::move(val)};
}

}  // namespace

MeagerDen fat_to_meager(const FatDen& F) { return prune(F.dom, F.cod, F.val); }

MeagerDen denote_leaf_meager(const OpenGame& g, const LeafLimits& limits) {
  return fat_to_meager(denote_leaf(g, limits));
}

MeagerDen meager_singleton(PlayArrow f) {
  MeagerDen d{f.dom, f.cod, {}};
  d.val.push_back({std::move(f)});
  return d;
}

MeagerDen meager_identity(int32_t n) { return meager_singleton(identity_arrow(n)); }
MeagerDen meager_swap(int32_t a, int32_t b) { return meager_singleton(swap_arrow(a, b)); }

MeagerDen seq_meager(const MeagerDen& F, const MeagerDen& G) {
  if (F.cod != G.dom) throw std::invalid_argument("seq_meager: interface mismatch");
  std::vector<std::vector<PlayArrow>> val;
  val.reserve(F.val.size() * G.val.size());
  for (const auto& Fi : F.val)
    for (const auto& Gi : G.val) {
      std::vector<PlayArrow> inner;
      inner.reserve(Fi.size() * Gi.size());
      for (const auto& f : Fi)
        for (const auto& g : Gi) inner.push_back(seq_play(f, g));
      val.push_back(std::move(inner));
    }
  return prune(F.dom, G.cod, std::move(val));
}

MeagerDen sum_meager(const MeagerDen& F, const MeagerDen& G) {
  std::vector<std::vector<PlayArrow>> val;
  val.reserve(F.val.size() * G.val.size());
  for (const auto& Fi : F.val)
    for (const auto& Gi : G.val) {
      std::vector<PlayArrow> inner;
      inner.reserve(Fi.size() * Gi.size());
      for (const auto& f : Fi)
        for (const auto& g : Gi) inner.push_back(sum_play(f, g));
      val.push_back(std::move(inner));
    }
  return prune(F.dom + G.dom, F.cod + G.cod, std::move(val));
}

MeagerDen trace_meager(int32_t loops, const MeagerDen& F) {
  std::vector<std::vector<PlayArrow>> val;
  val.reserve(F.val.size());
  for (const auto& Fi : F.val) {
    std::vector<PlayArrow> inner;
    inner.reserve(Fi.size());
    for (const auto& f : Fi) inner.push_back(trace_play(loops, f));
    val.push_back(std::move(inner));
  }
  return prune(F.dom - loops, F.cod - loops, std::move(val));
}

void check_meager_invariants(const MeagerDen& d) {
  assert(!d.val.empty());
  for (const auto& inner : d.val) {
    assert(!inner.empty());
    if (!is_antichain(inner)) throw std::logic_error("meager inner set is not an antichain");
  }
  for (size_t i = 0; i < d.val.size(); ++i)
    for (size_t j = 0; j < d.val.size(); ++j)
      if (i != j && leq_antichain(d.val[i], d.val[j]) && !(d.val[i] == d.val[j]))
        throw std::logic_error("meager outer set is not minimal");
}

}  // namespace mpgdiag
