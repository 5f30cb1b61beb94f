#include "doctest.h"
#include "fixtures.hpp"
#include "mpgdiag/evaluate.hpp"
#include "mpgdiag/flatten.hpp"
#include "mpgdiag/meager.hpp"

using namespace mpgdiag;
using namespace mpgdiag::test;

namespace {

PlayArrow const_arrow(int32_t m, int32_t n, const TValue& v) {
  PlayArrow f{m, n, std::vector<TValue>(m, v)};
  return f;
}

}  // namespace

TEST_CASE("the dominance order on values") {
  CHECK(leq_tvalue(TValue::weighted(rat(5), 3), TValue::weighted(rat(3), 3)));
  CHECK(!leq_tvalue(TValue::weighted(rat(3), 3), TValue::weighted(rat(5), 3)));
  CHECK(!leq_tvalue(TValue::weighted(rat(5), 0), TValue::weighted(rat(5), 1)));
  CHECK(leq_tvalue(TValue::plain(2), TValue::plain(2)));
  CHECK(!leq_tvalue(TValue::plain(2), TValue::plain(1)));
  CHECK(!leq_tvalue(TValue::plain(2), TValue::weighted(rat(0), 2)));
  CHECK(leq_tvalue(TValue::win_e(), TValue::plain(0)));
  CHECK(leq_tvalue(TValue::weighted(rat(9), 1), TValue::win_a()));
}

TEST_CASE("the dominance order on arrows") {
  PlayArrow f{1, 2, {TValue::weighted(rat(5), 1)}};
  PlayArrow g{1, 2, {TValue::weighted(rat(3), 1)}};
  CHECK(leq_play(f, g));  // the higher payoff is the smaller element
  CHECK(!leq_play(g, f));
  PlayArrow h{1, 2, {TValue::weighted(rat(5), 0)}};
  CHECK(!leq_play(f, h));
  CHECK(!leq_play(h, f));
  CHECK(leq_play(const_arrow(3, 2, TValue::win_e()), f == f ? const_arrow(3, 2, TValue::win_a())
                                                            : f));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    PlayArrow any = random_play_arrow(rng, 3, 2);
    CHECK(leq_play(const_arrow(3, 2, TValue::win_e()), any));
    CHECK(leq_play(any, const_arrow(3, 2, TValue::win_a())));
  }
  CHECK_THROWS_AS(leq_play(f, const_arrow(2, 2, TValue::win_e())), std::invalid_argument);
}

TEST_CASE("the order is a partial order") {
  Rng rng(2);
  std::vector<PlayArrow> pool;
  for (int k = 0; k < 60; ++k) pool.push_back(random_play_arrow(rng, 2, 2));
  for (int k = 0; k < 1000; ++k) {
    const PlayArrow& a = pool[rng.irange(0, 59)];
    const PlayArrow& b = pool[rng.irange(0, 59)];
    const PlayArrow& c = pool[rng.irange(0, 59)];
    CHECK(leq_play(a, a));
    if (leq_play(a, b) && leq_play(b, a)) CHECK(a == b);
    if (leq_play(a, b) && leq_play(b, c)) CHECK(leq_play(a, c));
  }
}

TEST_CASE("the lifted order on antichains is a partial order") {
  Rng rng(3);
  std::vector<std::vector<PlayArrow>> pool;
  for (int k = 0; k < 40; ++k) {
    std::vector<PlayArrow> s;
    for (int j = 0; j <= rng.irange(0, 3); ++j) s.push_back(random_play_arrow(rng, 2, 2));
    s = maximal_arrows(std::move(s));
    std::sort(s.begin(), s.end());
    pool.push_back(std::move(s));
  }
  for (int k = 0; k < 1000; ++k) {
    const auto& a = pool[rng.irange(0, 39)];
    const auto& b = pool[rng.irange(0, 39)];
    const auto& c = pool[rng.irange(0, 39)];
    CHECK(leq_antichain(a, a));
    if (leq_antichain(a, b) && leq_antichain(b, a)) CHECK(a == b);
    if (leq_antichain(a, b) && leq_antichain(b, c)) CHECK(leq_antichain(a, c));
  }
}

TEST_CASE("maximal and minimal selections") {
  PlayArrow low{1, 1, {TValue::weighted(rat(9), 0)}};
  PlayArrow mid{1, 1, {TValue::weighted(rat(5), 0)}};
  PlayArrow high{1, 1, {TValue::weighted(rat(1), 0)}};
  SUBCASE("a chain keeps only its ends") {
    CHECK(maximal_arrows({low, mid, high}) == std::vector<PlayArrow>{high});
    CHECK(minimal_arrows({low, mid, high}) == std::vector<PlayArrow>{low});
  }
  SUBCASE("incomparable arrows all survive") {
    PlayArrow left{1, 2, {TValue::weighted(rat(6, 10), 1)}};
    PlayArrow right{1, 2, {TValue::weighted(rat(-5, 2), 0)}};
    auto kept = maximal_arrows({left, right});
    CHECK(kept.size() == 2);
  }
  SUBCASE("minimal antichain selection under the lifted order") {
    std::vector<PlayArrow> s{low};
    std::vector<PlayArrow> t{mid};
    CHECK(leq_antichain(s, t));
    auto kept = minimal_antichains({s, t});
    CHECK(kept == std::vector<std::vector<PlayArrow>>{s});
  }
  SUBCASE("the empty input is rejected") {
    CHECK_THROWS(maximal_arrows({}));
    CHECK_THROWS(minimal_antichains({}));
  }
}

TEST_CASE("pruning the example game keeps both dominant strategies") {
  OpenGame g = example_game();
  MeagerDen d = denote_leaf_meager(g);
  check_meager_invariants(d);
  CHECK(d.val.size() == 2);
  CHECK(d.val[0].size() + d.val[1].size() == 3);  // one inner set collapsed to its best
  for (int32_t i = 0; i < 4; ++i) CHECK(classify_entrance(d.val, i) == Status::Pending);
}

TEST_CASE("pruning a fat denotation is idempotent and classification-invariant") {
  Rng rng(4);
  RandomGameOpts o;
  o.positions = 4;
  for (int k = 0; k < 300; ++k) {
    Arity dom{static_cast<int32_t>(rng.irange(1, 2)), 0};
    Arity cod{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 1))};
    OpenGame g = random_open_game(rng, dom, cod, o);
    FatDen fat = denote_leaf(g);
    MeagerDen meager = fat_to_meager(fat);
    check_meager_invariants(meager);
    MeagerDen again = fat_to_meager(FatDen{meager.dom, meager.cod, meager.val});
    CHECK(again == meager);
    for (int32_t i = 0; i < g.num_entrances(); ++i)
      CHECK(classify_entrance(fat.val, i) == classify_entrance(meager.val, i));
  }
  FatDen single = fat_identity(2);
  CHECK(fat_to_meager(single).val == single.val);
}

TEST_CASE("leaf pruning equals pruning the leaf denotation") {
  Rng rng(5);
  RandomGameOpts o;
  o.positions = 4;
  for (int k = 0; k < 150; ++k) {
    Arity dom{static_cast<int32_t>(rng.irange(1, 2)), static_cast<int32_t>(rng.irange(0, 1))};
    Arity cod{static_cast<int32_t>(rng.irange(0, 1)), static_cast<int32_t>(rng.irange(0, 1))};
    OpenGame g = random_open_game(rng, dom, cod, o);
    CHECK(denote_leaf_meager(g) == fat_to_meager(denote_leaf(g)));
  }
}

TEST_CASE("a closed winning game prunes to the lone winE strategy") {
  RawGame raw;
  raw.left = {1, 0};
  raw.right = {0, 0};
  raw.pos_names = {"q"};
  raw.roles = {Role::Exists};
  raw.weights = {Rational(1)};
  raw.edges = {{EdgeSource::entrance(0), Target::pos(0)}, {EdgeSource::pos(0), Target::pos(0)}};
  OpenGame g = validate_game(raw);
  MeagerDen d = denote_leaf_meager(g);
  REQUIRE(d.val.size() == 1);
  REQUIRE(d.val[0].size() == 1);
  CHECK(d.val[0][0].map[0] == TValue::win_e());
}

TEST_CASE("pruned operations commute with pruning") {
  Rng rng(6);
  RandomGameOpts o;
  o.positions = 3;
  SUBCASE("sequential composition") {
    for (int k = 0; k < 200; ++k) {
      OpenGame a = random_rightward_game(rng, 2, 2, o);
      OpenGame b = random_rightward_game(rng, 2, 2, o);
      FatDen fa = denote_leaf(a), fb = denote_leaf(b);
      CHECK(fat_to_meager(seq_fat(fa, fb)) ==
            seq_meager(fat_to_meager(fa), fat_to_meager(fb)));
    }
  }
  SUBCASE("sum") {
    for (int k = 0; k < 200; ++k) {
      OpenGame a = random_rightward_game(rng, 2, 1, o);
      OpenGame b = random_rightward_game(rng, 1, 2, o);
      FatDen fa = denote_leaf(a), fb = denote_leaf(b);
      CHECK(fat_to_meager(sum_fat(fa, fb)) ==
            sum_meager(fat_to_meager(fa), fat_to_meager(fb)));
    }
  }
  SUBCASE("trace") {
    for (int k = 0; k < 200; ++k) {
      OpenGame e = random_rightward_game(rng, 3, 3, {.positions = 3, .exit_feed_percent = 85});
      FatDen fe = denote_leaf(e);
      CHECK(fat_to_meager(trace_fat(1, fe)) == trace_meager(1, fat_to_meager(fe)));
    }
  }
}

TEST_CASE("meager identities and units") {
  OpenGame g = example_game();
  MeagerDen d = denote_leaf_meager(g);
  CHECK(seq_meager(d, meager_identity(3)) == d);
  CHECK(seq_meager(meager_identity(4), d) == d);
  CHECK(trace_meager(0, d) == d);
  MeagerDen empty = meager_singleton(PlayArrow{0, 0, {}});
  MeagerDen s = sum_meager(d, empty);
  CHECK(s == d);
}

TEST_CASE("pruned sum and trace are monotone in the lifted order") {
  Rng rng(7);
  // An ordered pair of antichains: S collects lowered copies of T's
  // elements, so S <= T holds by construction.
  auto lower = [&](const PlayArrow& f) {
    PlayArrow g = f;
    for (auto& v : g.map) {
      if (rng.percent(40)) continue;
      if (v.kind == TValue::Kind::WinA) {
        v = rng.percent(50) ? TValue::win_e() : TValue::weighted(rat(rng.irange(-9, 9)), 0);
      } else if (v.kind == TValue::Kind::WExit && rng.percent(70)) {
        v.weight += rat(rng.irange(0, 5));
      } else if (rng.percent(30)) {
        v = TValue::win_e();
      }
    }
    return realizable(g) ? g : f;  // lowering must stay inside the category
  };
  for (int k = 0; k < 100; ++k) {
    std::vector<PlayArrow> t_set;
    for (int j = 0; j <= rng.irange(0, 2); ++j) t_set.push_back(random_play_arrow(rng, 3, 3));
    t_set = maximal_arrows(std::move(t_set));
    std::vector<PlayArrow> s_set;
    for (const auto& f : t_set) s_set.push_back(lower(f));
    s_set = maximal_arrows(std::move(s_set));
    REQUIRE(leq_antichain(s_set, t_set));
    std::vector<PlayArrow> u_set{random_play_arrow(rng, 2, 2)};

    MeagerDen S{3, 3, {s_set}}, T{3, 3, {t_set}}, U{2, 2, {u_set}};
    CHECK(leq_antichain(sum_meager(S, U).val[0], sum_meager(T, U).val[0]));
    CHECK(leq_antichain(trace_meager(1, S).val[0], trace_meager(1, T).val[0]));
  }
}

TEST_CASE("pruned denotations compose through the loop exactly like fat ones") {
  Rng rng(8);
  RandomGameOpts o;
  o.positions = 2;
  for (int k = 0; k < 100; ++k) {
    Arity m{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 1))};
    Arity l{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 2))};
    Arity n{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 1))};
    if (m.right + l.left == 0) m.right = 1;
    OpenGame a = random_open_game(rng, m, l, o);
    OpenGame b = random_open_game(rng, l, n, o);
    MeagerDen lhs = denote_leaf_meager(seq_bidirectional(a, b));
    MeagerDen rhs =
        compose_int<MeagerOps>(m, l, n, denote_leaf_meager(a), denote_leaf_meager(b));
    CHECK(lhs == rhs);
    MeagerDen lhs2 = denote_leaf_meager(sum_bidirectional(a, b));
    MeagerDen rhs2 =
        sum_int<MeagerOps>(m, l, l, n, denote_leaf_meager(a), denote_leaf_meager(b));
    CHECK(lhs2 == rhs2);
  }
}

TEST_CASE("fat and meager classify every closed diagram identically") {
  for (uint64_t seed = 300; seed < 400; ++seed) {
    std::string src = gen_random_closed(seed, {});
    SharedDag dag = resolve_sharing(parse_diagram(src));
    IntArrow<FatDen> fat = evaluate_fat(dag);
    IntArrow<MeagerDen> meager = evaluate_meager(dag);
    CHECK(classify_entrance(fat.den.val, 0) == classify_entrance(meager.den.val, 0));
  }
}

TEST_CASE("meager evaluation keeps inner sets as antichains throughout") {
  for (uint64_t seed = 500; seed < 520; ++seed) {
    std::string src = gen_random_closed(seed, {});
    SharedDag dag = resolve_sharing(parse_diagram(src));
    IntArrow<MeagerDen> meager = evaluate_meager(dag);
    CHECK_NOTHROW(check_meager_invariants(meager.den));
  }
}
