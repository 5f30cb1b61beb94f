#include "mpgdiag/denotation.hpp"

#include <algorithm>

namespace mpgdiag {

void canonicalize(std::vector<std::vector<PlayArrow>>& val) {
  for (auto& inner : val) {
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  }
  std::sort(val.begin(), val.end());
  val.erase(std::unique(val.begin(), val.end()), val.end());
}

FatDen denote_leaf(const OpenGame& g, const LeafLimits& limits) {
  if (g.num_positions() > limits.max_positions)
    throw GameError(GameErrorCode::LeafTooLarge,
                    "leaf has " + std::to_string(g.num_positions()) +
                        " positions, over the limit of " + std::to_string(limits.max_positions) +
                        "; decompose it or raise --leaf-limit");
  FatDen d{g.num_entrances(), g.num_exits(), {}};
  StrategyEnum exists_enum(g, Role::Exists);
  StrategyEnum forall_enum(g, Role::Forall);
  Strategy se, sa;
  while (exists_enum.next(se)) {
    std::vector<PlayArrow> inner;
    forall_enum.reset();
    while (forall_enum.next(sa)) inner.push_back(ropg_denotation(induced_ropg(g, se, sa)));
    d.val.push_back(std::move(inner));
  }
  canonicalize(d.val);
  return d;
}

FatDen fat_singleton(PlayArrow f) {
  FatDen d{f.dom, f.cod, {}};
  d.val.push_back({std::move(f)});
  return d;
}

FatDen fat_identity(int32_t n) { return fat_singleton(identity_arrow(n)); }
FatDen fat_swap(int32_t a, int32_t b) { return fat_singleton(swap_arrow(a, b)); }

FatDen seq_fat(const FatDen& F, const FatDen& G) {
  if (F.cod != G.dom) throw std::invalid_argument("seq_fat: interface mismatch");
  FatDen r{F.dom, G.cod, {}};
  for (const auto& Fi : F.val)
    for (const auto& Gi : G.val) {
      std::vector<PlayArrow> inner;
      inner.reserve(Fi.size() * Gi.size());
      for (const auto& f : Fi)
        for (const auto& g : Gi) inner.push_back(seq_play(f, g));
      r.val.push_back(std::move(inner));
    }
  canonicalize(r.val);
  return r;
}

FatDen sum_fat(const FatDen& F, const FatDen& G) {
  FatDen r{F.dom + G.dom, F.cod + G.cod, {}};
  for (const auto& Fi : F.val)
    for (const auto& Gi : G.val) {
      std::vector<PlayArrow> inner;
      inner.reserve(Fi.size() * Gi.size());
      for (const auto& f : Fi)
        for (const auto& g : Gi) inner.push_back(sum_play(f, g));
      r.val.push_back(std::move(inner));
    }
  canonicalize(r.val);
  return r;
}

FatDen trace_fat(int32_t loops, const FatDen& F) {
  FatDen r{F.dom - loops, F.cod - loops, {}};
  for (const auto& Fi : F.val) {
    std::vector<PlayArrow> inner;
    inner.reserve(Fi.size());
    for (const auto& f : Fi) inner.push_back(trace_play(loops, f));
    r.val.push_back(std::move(inner));
  }
  canonicalize(r.val);
  return r;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Winning: return "winning";
    case Status::Losing: return "losing";
    case Status::Pending: return "pending";
  }
  return "?";
}

Status classify_entrance(const std::vector<std::vector<PlayArrow>>& val, int32_t i) {
  bool losing = true;
  for (const auto& inner : val) {
    bool all_win_e = !inner.empty();
    bool has_win_a = false;
    for (const auto& f : inner) {
      if (f.map[i].kind != TValue::Kind::WinE) all_win_e = false;
      if (f.map[i].kind == TValue::Kind::WinA) has_win_a = true;
    }
    if (all_win_e) return Status::Winning;
    if (!has_win_a) losing = false;
  }
  return losing ? Status::Losing : Status::Pending;
}

std::vector<std::vector<TValue>> project_entrance(const std::vector<std::vector<PlayArrow>>& val,
                                                  int32_t i) {
  std::vector<std::vector<TValue>> out;
  out.reserve(val.size());
  for (const auto& inner : val) {
    std::vector<TValue> s;
    s.reserve(inner.size());
    for (const auto& f : inner) s.push_back(f.map[i]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mpgdiag
