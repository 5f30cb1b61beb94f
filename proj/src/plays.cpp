#include "mpgdiag/plays.hpp"

#include <algorithm>
#include <cassert>

namespace mpgdiag {

bool realizable(const PlayArrow& f) {
  for (int32_t i = 0; i < f.dom; ++i) {
    if (f.map[i].kind != TValue::Kind::Exit) continue;
    for (int32_t j = 0; j < f.dom; ++j) {
      if (j == i) continue;
      if (f.map[j].targets_exit() && f.map[j].exit == f.map[i].exit) return false;
    }
  }
  return true;
}

void require_realizable(const PlayArrow& f, const char* where) {
  if (!realizable(f))
    throw RealizabilityViolation(std::string("realizability violated in ") + where);
}

PlayArrow identity_arrow(int32_t n) {
  PlayArrow f{n, n, {}};
  f.map.reserve(n);
  for (int32_t i = 0; i < n; ++i) f.map.push_back(TValue::plain(i));
  return f;
}

PlayArrow swap_arrow(int32_t a, int32_t b) {
  PlayArrow f{a + b, a + b, {}};
  f.map.reserve(a + b);
  for (int32_t i = 0; i < a; ++i) f.map.push_back(TValue::plain(b + i));
  for (int32_t i = 0; i < b; ++i) f.map.push_back(TValue::plain(i));
  return f;
}

PlayArrow seq_play(const PlayArrow& f, const PlayArrow& g) {
  assert(f.cod == g.dom);
  PlayArrow h{f.dom, g.cod, {}};
  h.map.reserve(f.dom);
  for (int32_t i = 0; i < f.dom; ++i) {
    const TValue& a = f.map[i];
    if (a.is_winner()) {
      h.map.push_back(a);
      continue;
    }
    const TValue& b = g.map[a.exit];
    if (a.kind == TValue::Kind::Exit) {
      h.map.push_back(b);  // plain handover: the result is entirely g's
    } else if (b.is_winner()) {
      h.map.push_back(b);  // prefix independence: the weight is dropped
    } else if (b.kind == TValue::Kind::Exit) {
      h.map.push_back(TValue::weighted(a.weight, b.exit));
    } else {
      h.map.push_back(TValue::weighted(a.weight + b.weight, b.exit));
    }
  }
  require_realizable(h, "seq_play");
  return h;
}

PlayArrow sum_play(const PlayArrow& f, const PlayArrow& g) {
  PlayArrow h{f.dom + g.dom, f.cod + g.cod, {}};
  h.map = f.map;
  for (const TValue& v : g.map) {
    TValue s = v;
    if (s.targets_exit()) s.exit += f.cod;
    h.map.push_back(std::move(s));
  }
  require_realizable(h, "sum_play");
  return h;
}

Tdp semantic_tdp(const PlayArrow& f, int32_t loops, int32_t i) {
  assert(loops >= 0 && f.dom >= loops && f.cod >= loops);
  assert(i >= 0 && i < f.dom - loops);
  Tdp v;
  v.prefix.push_back({TdpEntry::Kind::Start, i, {}});
  std::vector<int32_t> first_seen(loops, -1);
  int32_t port = loops + i;  // next application of f
  while (true) {
    const TValue& t = f.map[port];
    TdpEntry e;
    switch (t.kind) {
      case TValue::Kind::WinE:
        v.prefix.push_back({TdpEntry::Kind::WinE, 0, {}});
        return v;
      case TValue::Kind::WinA:
        v.prefix.push_back({TdpEntry::Kind::WinA, 0, {}});
        return v;
      case TValue::Kind::Exit:
        if (t.exit >= loops) {
          v.prefix.push_back({TdpEntry::Kind::Exit, t.exit - loops, {}});
          return v;
        }
        e = {TdpEntry::Kind::Loop, t.exit, {}};
        break;
      case TValue::Kind::WExit:
        if (t.exit >= loops) {
          v.prefix.push_back({TdpEntry::Kind::WExit, t.exit - loops, t.weight});
          return v;
        }
        e = {TdpEntry::Kind::WLoop, t.exit, t.weight};
        break;
    }
    int32_t p = e.idx;
    if (first_seen[p] >= 0) {
      // Entries after a port replay verbatim; the two arrival entries at
      // p may carry different weights, so the cycle starts after the
      // first arrival and ends with the current one.
      auto at = v.prefix.begin() + first_seen[p] + 1;
      v.cycle.assign(at, v.prefix.end());
      v.cycle.push_back(std::move(e));
      v.prefix.erase(at, v.prefix.end());
      bool weighted = false;
      for (const auto& c : v.cycle) weighted |= c.weighted();
      if (!weighted)
        throw NonProductiveCycle("all-plain loop cycle; input arrow is not realizable");
      return v;
    }
    first_seen[p] = static_cast<int32_t>(v.prefix.size());
    v.prefix.push_back(std::move(e));
    port = p;
  }
}

TValue tdp_denotation(const Tdp& v) {
  if (v.infinite()) {
    Rational sum = 0;
    for (const auto& e : v.cycle)
      if (e.weighted()) sum += e.weight;
    return sum >= 0 ? TValue::win_e() : TValue::win_a();
  }
  assert(!v.prefix.empty());
  const TdpEntry& last = v.prefix.back();
  if (last.kind == TdpEntry::Kind::WinE) return TValue::win_e();
  if (last.kind == TdpEntry::Kind::WinA) return TValue::win_a();
  assert(last.kind == TdpEntry::Kind::Exit || last.kind == TdpEntry::Kind::WExit);
  bool any_weight = false;
  Rational sum = 0;
  for (const auto& e : v.prefix)
    if (e.weighted()) {
      any_weight = true;
      sum += e.weight;
    }
  if (!any_weight) return TValue::plain(last.idx);
  return TValue::weighted(std::move(sum), last.idx);
}

PlayArrow trace_play(int32_t loops, const PlayArrow& f) {
  assert(f.dom >= loops && f.cod >= loops);
  PlayArrow h{f.dom - loops, f.cod - loops, {}};
  h.map.reserve(h.dom);
  for (int32_t i = 0; i < h.dom; ++i) h.map.push_back(tdp_denotation(semantic_tdp(f, loops, i)));
  require_realizable(h, "trace_play");
  return h;
}

TValue denote_play(const RoPG& pg, const Play& play) {
  assert(!play.prefix.empty() && play.prefix.front().kind == PlayNode::Kind::Entrance);
  if (play.infinite()) {
    Rational sum = 0;
    for (const auto& s : play.cycle) {
      assert(s.kind == PlayNode::Kind::Position);
      sum += pg.weight(s.idx);
    }
    return sum >= 0 ? TValue::win_e() : TValue::win_a();
  }
  // By (+) an entrance always has a successor, so a finite play has at
  // least two elements and its last is an exit or a stuck position.
  assert(play.prefix.size() >= 2);
  const PlayNode& last = play.prefix.back();
  if (last.kind == PlayNode::Kind::Exit) {
    if (play.prefix.size() == 2) return TValue::plain(last.idx);
    Rational sum = 0;
    for (size_t k = 1; k + 1 < play.prefix.size(); ++k) sum += pg.weight(play.prefix[k].idx);
    return TValue::weighted(std::move(sum), last.idx);
  }
  return pg.role(last.idx) == Role::Forall ? TValue::win_e() : TValue::win_a();
}

TValue play_denotation(const RoPG& pg, int32_t entrance) {
  return denote_play(pg, unique_play(pg, entrance));
}

PlayArrow ropg_denotation(const RoPG& pg) {
  PlayArrow f{pg.num_entrances(), pg.num_exits(), {}};
  f.map.reserve(f.dom);
  for (int32_t i = 0; i < f.dom; ++i) f.map.push_back(play_denotation(pg, i));
  require_realizable(f, "ropg_denotation");
  return f;
}

TValue monad_unit(int32_t x) { return TValue::plain(x); }

TValue monad_mult(const NestedT& z) {
  switch (z.shell) {
    case NestedT::Shell::WinE:
      return TValue::win_e();
    case NestedT::Shell::WinA:
      return TValue::win_a();
    case NestedT::Shell::Pure:
      return z.inner;
    case NestedT::Shell::Weighted:
      switch (z.inner.kind) {
        case TValue::Kind::WinE:
          return TValue::win_e();
        case TValue::Kind::WinA:
          return TValue::win_a();
        case TValue::Kind::Exit:
          return TValue::weighted(z.weight, z.inner.exit);
        case TValue::Kind::WExit:
          return TValue::weighted(z.weight + z.inner.weight, z.inner.exit);
      }
  }
  return TValue::win_e();  // unreachable
}

}  // namespace mpgdiag
