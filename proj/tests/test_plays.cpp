#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "mpgdiag/flatten.hpp"
#include "mpgdiag/plays.hpp"

using namespace mpgdiag;
using namespace mpgdiag::test;

namespace {

PlayArrow arrow(int32_t dom, int32_t cod, std::vector<TValue> vals) {
  PlayArrow f{dom, cod, std::move(vals)};
  require_realizable(f, "test arrow");
  return f;
}

}  // namespace

TEST_CASE("realizability rejects a plain exit with company") {
  PlayArrow bad{2, 1, {TValue::plain(0), TValue::weighted(rat(1), 0)}};
  CHECK(!realizable(bad));
  CHECK_THROWS_AS(require_realizable(bad, "here"), RealizabilityViolation);
  PlayArrow two_weighted{2, 1, {TValue::weighted(rat(2), 0), TValue::weighted(rat(1), 0)}};
  CHECK(realizable(two_weighted));  // weighted arrivals may share an exit
}

TEST_CASE("sequential composition of play arrows follows the five cases") {
  PlayArrow g = arrow(2, 2, {TValue::weighted(rat(3), 1), TValue::win_a()});
  SUBCASE("winners pass through") {
    PlayArrow f = arrow(1, 2, {TValue::win_e()});
    CHECK(seq_play(f, g).map[0] == TValue::win_e());
  }
  SUBCASE("plain exits defer entirely to the right arrow") {
    PlayArrow f = arrow(1, 2, {TValue::plain(0)});
    CHECK(seq_play(f, g).map[0] == TValue::weighted(rat(3), 1));
  }
  SUBCASE("weights add across weighted hops") {
    PlayArrow f = arrow(1, 2, {TValue::weighted(rat(2), 0)});
    CHECK(seq_play(f, g).map[0] == TValue::weighted(rat(5), 1));
  }
  SUBCASE("a decided winner absorbs the accumulated weight") {
    PlayArrow f = arrow(1, 2, {TValue::weighted(rat(2), 1)});
    CHECK(seq_play(f, g).map[0] == TValue::win_a());
  }
  SUBCASE("weighted onto plain keeps the weight") {
    PlayArrow h = arrow(1, 3, {TValue::plain(2)});
    PlayArrow f = arrow(1, 1, {TValue::weighted(rat(2), 0)});
    CHECK(seq_play(f, h).map[0] == TValue::weighted(rat(2), 2));
  }
}

TEST_CASE("identity is neutral for sequential composition") {
  Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    PlayArrow f = random_play_arrow(rng, 3, 3);
    CHECK(seq_play(f, identity_arrow(3)) == f);
    CHECK(seq_play(identity_arrow(3), f) == f);
  }
}

TEST_CASE("sum shifts the right arrow's indices") {
  PlayArrow f = arrow(1, 2, {TValue::plain(1)});
  PlayArrow g = arrow(2, 1, {TValue::weighted(rat(7), 0), TValue::win_e()});
  PlayArrow s = sum_play(f, g);
  CHECK(s.dom == 3);
  CHECK(s.cod == 3);
  CHECK(s.map[0] == TValue::plain(1));
  CHECK(s.map[1] == TValue::weighted(rat(7), 2));
  CHECK(s.map[2] == TValue::win_e());
  PlayArrow empty{0, 0, {}};
  CHECK(sum_play(f, empty) == f);
}

TEST_CASE("sum preserves realizability on random pairs") {
  Rng rng(43);
  for (int k = 0; k < 200; ++k) {
    PlayArrow f = random_play_arrow(rng, static_cast<int32_t>(rng.irange(0, 3)),
                                    static_cast<int32_t>(rng.irange(0, 3)));
    PlayArrow g = random_play_arrow(rng, static_cast<int32_t>(rng.irange(0, 3)),
                                    static_cast<int32_t>(rng.irange(0, 3)));
    CHECK(realizable(sum_play(f, g)));
  }
}

TEST_CASE("semantic traced denotations") {
  SUBCASE("finite two-step unfold") {
    // loops = 1: the entrance feeds the loop port, the loop port exits.
    PlayArrow f = arrow(2, 2, {TValue::weighted(rat(5, 2), 1), TValue::weighted(rat(1), 0)});
    Tdp v = semantic_tdp(f, 1, 0);
    CHECK(!v.infinite());
    REQUIRE(v.prefix.size() == 3);
    CHECK(v.prefix[0].kind == TdpEntry::Kind::Start);
    CHECK(v.prefix[1] == TdpEntry{TdpEntry::Kind::WLoop, 0, rat(1)});
    CHECK(v.prefix[2] == TdpEntry{TdpEntry::Kind::WExit, 0, rat(5, 2)});
    CHECK(tdp_denotation(v) == TValue::weighted(rat(7, 2), 0));
  }
  SUBCASE("loop port repetition makes the lasso") {
    PlayArrow f = arrow(2, 2, {TValue::weighted(rat(-1), 0), TValue::weighted(rat(-1), 0)});
    Tdp v = semantic_tdp(f, 1, 0);
    REQUIRE(v.infinite());
    CHECK(v.prefix.size() == 2);  // the start and the first loop arrival
    CHECK(v.cycle == std::vector<TdpEntry>{{TdpEntry::Kind::WLoop, 0, rat(-1)}});
    CHECK(tdp_denotation(v) == TValue::win_a());
  }
  SUBCASE("no loop ports means a single application") {
    PlayArrow f = arrow(2, 1, {TValue::win_a(), TValue::plain(0)});
    Tdp v = semantic_tdp(f, 0, 1);
    REQUIRE(v.prefix.size() == 2);
    CHECK(tdp_denotation(v) == TValue::plain(0));
  }
  SUBCASE("plain path to an exit stays plain") {
    PlayArrow f = arrow(2, 2, {TValue::plain(1), TValue::plain(0)});
    Tdp v = semantic_tdp(f, 1, 0);
    CHECK(tdp_denotation(v) == TValue::plain(0));
  }
  SUBCASE("cycle boundary: zero sum wins for Exists") {
    PlayArrow f = arrow(2, 2, {TValue::weighted(rat(0), 0), TValue::weighted(rat(0), 0)});
    Tdp v = semantic_tdp(f, 1, 0);
    REQUIRE(v.infinite());
    CHECK(tdp_denotation(v) == TValue::win_e());
  }
}

TEST_CASE("an all-plain loop cycle is reported, not spun on") {
  // Hand-built non-realizable arrow: the loop port plainly feeds itself.
  PlayArrow f{2, 2, {TValue::plain(0), TValue::plain(0)}};
  CHECK(!realizable(f));
  CHECK_THROWS_AS(semantic_tdp(f, 1, 0), NonProductiveCycle);
}

TEST_CASE("trace of play arrows") {
  SUBCASE("yanking") { CHECK(trace_play(1, swap_arrow(1, 1)) == identity_arrow(1)); }
  SUBCASE("weighted self-feeding loop loses") {
    PlayArrow f = arrow(2, 2, {TValue::weighted(rat(-1), 0), TValue::weighted(rat(-1), 0)});
    CHECK(trace_play(1, f).map[0] == TValue::win_a());
  }
  SUBCASE("vanishing: the zero trace is the arrow itself") {
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
      PlayArrow f = random_play_arrow(rng, 3, 2);
      CHECK(trace_play(0, f) == f);
    }
  }
}

TEST_CASE("play graph denotation of the example game") {
  OpenGame g = example_game();
  RoPG pg = induced_ropg(g, exists_to_exit(g), forall_to_exit(g));
  PlayArrow f = ropg_denotation(pg);
  CHECK(f.dom == 4);
  CHECK(f.cod == 3);
  CHECK(f.map[0] == TValue::plain(0));
  CHECK(f.map[1] == TValue::weighted(rat(-5, 2), 1));
  OpenGame idg = ident_game(3);
  CHECK(ropg_denotation(as_ropg(idg)) == identity_arrow(3));
}

TEST_CASE("per-entrance denotation agrees with the arrow on random play graphs") {
  Rng rng(99);
  RandomGameOpts o;
  o.positions = 5;
  for (int k = 0; k < 300; ++k) {
    OpenGame g = random_deterministic_game(rng, 3, 2, o);
    RoPG pg = as_ropg(g);
    PlayArrow f = ropg_denotation(pg);
    for (int32_t i = 0; i < 3; ++i) CHECK(f.map[i] == play_denotation(pg, i));
  }
}

// The solution of a composite play graph is the composite of the
// solutions, for each of the three operations.
TEST_CASE("decomposition equality for sequential composition") {
  Rng rng(123);
  RandomGameOpts o;
  o.positions = 4;
  for (int k = 0; k < 200; ++k) {
    OpenGame c = random_deterministic_game(rng, 2, 3, o);
    OpenGame d = random_deterministic_game(rng, 3, 2, o);
    OpenGame cd = seq_rightward(c, d);
    RoPG pc = as_ropg(c), pd = as_ropg(d), pcd = as_ropg(cd);
    CHECK(ropg_denotation(pcd) == seq_play(ropg_denotation(pc), ropg_denotation(pd)));
  }
}

TEST_CASE("decomposition equality for sums") {
  Rng rng(124);
  RandomGameOpts o;
  o.positions = 4;
  for (int k = 0; k < 200; ++k) {
    OpenGame c = random_deterministic_game(rng, 2, 2, o);
    OpenGame d = random_deterministic_game(rng, 1, 2, o);
    OpenGame cd = sum_games(c, d);
    RoPG pc = as_ropg(c), pd = as_ropg(d), pcd = as_ropg(cd);
    CHECK(ropg_denotation(pcd) == sum_play(ropg_denotation(pc), ropg_denotation(pd)));
  }
}

TEST_CASE("decomposition equality for traces") {
  Rng rng(125);
  RandomGameOpts o;
  o.positions = 5;
  o.exit_feed_percent = 85;
  for (int k = 0; k < 200; ++k) {
    int32_t loops = static_cast<int32_t>(rng.irange(1, 2));
    OpenGame e = random_deterministic_game(rng, loops + 2, loops + 2, o);
    OpenGame traced = trace_game(loops, e);
    RoPG pe = as_ropg(e), pt = as_ropg(traced);
    CHECK(ropg_denotation(pt) == trace_play(loops, ropg_denotation(pe)));
  }
}

TEST_CASE("trace axioms on random play arrows") {
  Rng rng(126);
  SUBCASE("naturality in the codomain tail") {
    for (int k = 0; k < 100; ++k) {
      PlayArrow f = random_play_arrow(rng, 3, 3);  // 1+2 -> 1+2
      PlayArrow g = random_play_arrow(rng, 2, 2);
      PlayArrow lhs = seq_play(trace_play(1, f), g);
      PlayArrow rhs = trace_play(1, seq_play(f, sum_play(identity_arrow(1), g)));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("naturality in the domain tail") {
    for (int k = 0; k < 100; ++k) {
      PlayArrow f = random_play_arrow(rng, 3, 3);
      PlayArrow g = random_play_arrow(rng, 2, 2);
      PlayArrow lhs = seq_play(g, trace_play(1, f));
      PlayArrow rhs = trace_play(1, seq_play(sum_play(identity_arrow(1), g), f));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("dinaturality in the looped wires") {
    for (int k = 0; k < 100; ++k) {
      PlayArrow f = random_play_arrow(rng, 2 + 2, 1 + 2);  // loops 2 on the left, 1 right
      PlayArrow g = random_play_arrow(rng, 1, 2);
      PlayArrow lhs = trace_play(2, seq_play(f, sum_play(g, identity_arrow(2))));
      PlayArrow rhs = trace_play(1, seq_play(sum_play(g, identity_arrow(2)), f));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("yanking") { CHECK(trace_play(1, swap_arrow(1, 1)) == identity_arrow(1)); }
  SUBCASE("superposing with a spectator") {
    for (int k = 0; k < 100; ++k) {
      PlayArrow f = random_play_arrow(rng, 3, 3);
      PlayArrow g = random_play_arrow(rng, 2, 2);
      PlayArrow lhs = sum_play(g, trace_play(1, f));
      // move the loop wire across g with swaps, then trace
      PlayArrow body = seq_play(
          seq_play(sum_play(swap_arrow(1, 2), identity_arrow(2)), sum_play(g, f)),
          sum_play(swap_arrow(2, 1), identity_arrow(2)));
      PlayArrow rhs = trace_play(1, body);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("play monad laws") {
  Rng rng(321);
  auto random_tvalue = [&](int32_t n) -> TValue {
    switch (rng.irange(0, 3)) {
      case 0: return TValue::plain(static_cast<int32_t>(rng.irange(0, n - 1)));
      case 1:
        return TValue::weighted(rat(rng.irange(-9, 9)),
                                static_cast<int32_t>(rng.irange(0, n - 1)));
      case 2: return TValue::win_e();
      default: return TValue::win_a();
    }
  };
  SUBCASE("unit laws") {
    for (int k = 0; k < 500; ++k) {
      TValue t = random_tvalue(4);
      // pure shells collapse to the inner value
      CHECK(monad_mult(NestedT{NestedT::Shell::Pure, {}, t}) == t);
      // wrapping the payload with the unit changes nothing
      NestedT lifted;
      switch (t.kind) {
        case TValue::Kind::Exit:
          lifted = {NestedT::Shell::Pure, {}, monad_unit(t.exit)};
          break;
        case TValue::Kind::WExit:
          lifted = {NestedT::Shell::Weighted, t.weight, monad_unit(t.exit)};
          break;
        case TValue::Kind::WinE: lifted = {NestedT::Shell::WinE, {}, {}}; break;
        case TValue::Kind::WinA: lifted = {NestedT::Shell::WinA, {}, {}}; break;
      }
      CHECK(monad_mult(lifted) == t);
    }
  }
  SUBCASE("spelled-out cases") {
    CHECK(monad_mult(NestedT{NestedT::Shell::WinE, {}, {}}) == TValue::win_e());
    CHECK(monad_mult(NestedT{NestedT::Shell::Weighted, rat(2), TValue::weighted(rat(3), 7)}) ==
          TValue::weighted(rat(5), 7));
    CHECK(monad_mult(NestedT{NestedT::Shell::Weighted, rat(2), TValue::win_a()}) ==
          TValue::win_a());
  }
  SUBCASE("associativity through double weights") {
    for (int k = 0; k < 500; ++k) {
      Rational r1 = rat(rng.irange(-9, 9)), r2 = rat(rng.irange(-9, 9)),
               r3 = rat(rng.irange(-9, 9));
      TValue inner3 = rng.percent(70) ? TValue::weighted(r3, 1) : TValue::win_e();
      TValue via_inner = monad_mult(NestedT{NestedT::Shell::Weighted, r2, inner3});
      TValue lhs = monad_mult(NestedT{NestedT::Shell::Weighted, r1, via_inner});
      TValue via_outer = monad_mult(NestedT{NestedT::Shell::Weighted, r1 + r2, inner3});
      CHECK(lhs == via_outer);
    }
  }
}

TEST_CASE("productivity holds for realizable arrows") {
  Rng rng(654);
  for (int k = 0; k < 300; ++k) {
    int32_t loops = static_cast<int32_t>(rng.irange(1, 3));
    int32_t m = static_cast<int32_t>(rng.irange(1, 2));
    int32_t n = static_cast<int32_t>(rng.irange(0, 2));
    PlayArrow f = random_play_arrow(rng, loops + m, loops + n);
    for (int32_t i = 0; i < m; ++i) CHECK_NOTHROW(semantic_tdp(f, loops, i));
  }
}
