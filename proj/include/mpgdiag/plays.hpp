#pragma once

#include <vector>

#include "mpgdiag/game.hpp"
#include "mpgdiag/rational.hpp"

namespace mpgdiag {

// Outcome of one deterministic play: reaching exit j directly, reaching
// it with an accumulated weight, or a decided winner. The Kind values
// double as the canonical order used everywhere sets are compared.
struct TValue {
  enum class Kind : uint8_t { WinE = 0, Exit = 1, WExit = 2, WinA = 3 };
  Kind kind = Kind::WinE;
  int32_t exit = 0;
  Rational weight;

  static TValue win_e() { return TValue{}; }
  static TValue win_a() { return TValue{Kind::WinA, 0, {}}; }
  static TValue plain(int32_t j) { return TValue{Kind::Exit, j, {}}; }
  static TValue weighted(Rational r, int32_t j) { return TValue{Kind::WExit, j, std::move(r)}; }

  bool is_winner() const { return kind == Kind::WinE || kind == Kind::WinA; }
  bool targets_exit() const { return kind == Kind::Exit || kind == Kind::WExit; }

  friend bool operator==(const TValue& a, const TValue& b) {
    return a.kind == b.kind && a.exit == b.exit && a.weight == b.weight;
  }
  friend bool operator<(const TValue& a, const TValue& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.exit != b.exit) return a.exit < b.exit;
    return a.weight < b.weight;
  }
};

struct RealizabilityViolation : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonProductiveCycle : std::logic_error {
  using std::logic_error::logic_error;
};

// An arrow of the play semantic category: one TValue per entrance,
// subject to realizability (a plainly reached exit has no other incoming
// play, weighted or not).
struct PlayArrow {
  int32_t dom = 0, cod = 0;
  std::vector<TValue> map;

  friend bool operator==(const PlayArrow& a, const PlayArrow& b) {
    return a.dom == b.dom && a.cod == b.cod && a.map == b.map;
  }
  friend bool operator<(const PlayArrow& a, const PlayArrow& b) {
    if (a.dom != b.dom) return a.dom < b.dom;
    if (a.cod != b.cod) return a.cod < b.cod;
    return a.map < b.map;
  }
};

bool realizable(const PlayArrow& f);
void require_realizable(const PlayArrow& f, const char* where);

PlayArrow identity_arrow(int32_t n);
PlayArrow swap_arrow(int32_t a, int32_t b);  // a+b -> b+a

PlayArrow seq_play(const PlayArrow& f, const PlayArrow& g);
PlayArrow sum_play(const PlayArrow& f, const PlayArrow& g);

// One element of a traced denotation of plays: a visit to a loop port or
// an exit (optionally weighted), a decided winner, or the start entrance.
struct TdpEntry {
  enum class Kind : uint8_t { Start, Loop, WLoop, Exit, WExit, WinE, WinA };
  Kind kind;
  int32_t idx = 0;
  Rational weight;

  bool weighted() const { return kind == Kind::WLoop || kind == Kind::WExit; }
  friend bool operator==(const TdpEntry&, const TdpEntry&) = default;
};

struct Tdp {
  std::vector<TdpEntry> prefix;
  std::vector<TdpEntry> cycle;  // empty = finite
  bool infinite() const { return !cycle.empty(); }
};

// Iterates f: loops+m -> loops+n from real entrance i, re-entering at
// loop exits. The cycle is detected at the first repeated loop port; the
// entries after a port only depend on the port, so this is sound.
Tdp semantic_tdp(const PlayArrow& f, int32_t loops, int32_t i);

TValue tdp_denotation(const Tdp& v);

PlayArrow trace_play(int32_t loops, const PlayArrow& f);

TValue denote_play(const RoPG& pg, const Play& play);
TValue play_denotation(const RoPG& pg, int32_t entrance);
PlayArrow ropg_denotation(const RoPG& pg);

// The play monad's multiplication, spelled out on one nested value.
struct NestedT {
  enum class Shell : uint8_t { Pure, Weighted, WinE, WinA };
  Shell shell = Shell::Pure;
  Rational weight;  // for Weighted
  TValue inner;     // for Pure / Weighted
};

TValue monad_unit(int32_t x);
TValue monad_mult(const NestedT& z);

}  // namespace mpgdiag
