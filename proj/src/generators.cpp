#include "mpgdiag/generators.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mpgdiag {

int64_t Rng::irange(int64_t lo, int64_t hi) {
  assert(lo <= hi);
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(raw());  // full range
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t r;
  do {
    r = raw();
  } while (r >= limit);
  return lo + static_cast<int64_t>(r % span);
}

namespace {

Rational random_weight(Rng& rng, const RandomGameOpts& o) {
  if (o.decimal_weights) return Rational(rng.irange(o.weight_lo * 10, o.weight_hi * 10), 10);
  return Rational(rng.irange(o.weight_lo, o.weight_hi));
}

}  // namespace

OpenGame random_rightward_game(Rng& rng, int32_t m, int32_t n, const RandomGameOpts& o) {
  int32_t np = o.positions;
  if (np == 0 && m > n) np = 1;  // entrances need targets that respect (++)
  RawGame raw;
  raw.left = {m, 0};
  raw.right = {n, 0};
  for (int32_t q = 0; q < np; ++q) {
    raw.pos_names.push_back("p" + std::to_string(q));
    raw.roles.push_back(rng.percent(50) ? Role::Exists : Role::Forall);
    raw.weights.push_back(random_weight(rng, o));
  }
  std::vector<bool> exit_used(n, false);
  auto free_exit = [&]() -> int32_t {
    std::vector<int32_t> free;
    for (int32_t j = 0; j < n; ++j)
      if (!exit_used[j]) free.push_back(j);
    if (free.empty()) return -1;
    return free[rng.irange(0, static_cast<int64_t>(free.size()) - 1)];
  };
  for (int32_t i = 0; i < m; ++i) {
    bool to_exit = np == 0 || (n > 0 && rng.percent(25));
    int32_t j = to_exit ? free_exit() : -1;
    if (j >= 0) {
      exit_used[j] = true;
      raw.edges.push_back({EdgeSource::entrance(i), Target::exit(j)});
    } else {
      raw.edges.push_back(
          {EdgeSource::entrance(i), Target::pos(static_cast<int32_t>(rng.irange(0, np - 1)))});
    }
  }
  std::vector<std::vector<Target>> planned(np);
  for (int32_t q = 0; q < np; ++q) {
    if (rng.percent(o.stuck_percent)) continue;
    int32_t deg = static_cast<int32_t>(rng.irange(1, o.max_out));
    for (int32_t d = 0; d < deg; ++d)
      planned[q].push_back(Target::pos(static_cast<int32_t>(rng.irange(0, np - 1))));
  }
  for (int32_t j = 0; j < n; ++j) {
    if (exit_used[j] || np == 0 || !rng.percent(o.exit_feed_percent)) continue;
    int32_t q = static_cast<int32_t>(rng.irange(0, np - 1));
    // Out-degree cap: the exit edge replaces a planned successor.
    if (static_cast<int32_t>(planned[q].size()) >= o.max_out) planned[q].pop_back();
    planned[q].push_back(Target::exit(j));
  }
  for (int32_t q = 0; q < np; ++q)
    for (const auto& t : planned[q]) raw.edges.push_back({EdgeSource::pos(q), t});
  return validate_game(raw);
}

OpenGame random_open_game(Rng& rng, Arity left, Arity right, const RandomGameOpts& o) {
  OpenGame u =
      random_rightward_game(rng, left.right + right.left, right.right + left.left, o);
  return wrap_object(std::move(u), left, right);
}

OpenGame random_deterministic_game(Rng& rng, int32_t m, int32_t n, const RandomGameOpts& o) {
  RandomGameOpts det = o;
  det.max_out = 1;
  return random_rightward_game(rng, m, n, det);
}

PlayArrow random_play_arrow(Rng& rng, int32_t m, int32_t n) {
  PlayArrow f{m, n, {}};
  // plain hits must be exclusive; weighted ones only avoid plainly hit
  // exits, so the arrow stays realizable.
  std::vector<int> state(n, 0);  // 0 free, 1 weighted, 2 plain
  for (int32_t i = 0; i < m; ++i) {
    int roll = static_cast<int>(rng.irange(0, 99));
    TValue v;
    if (n > 0 && roll < 25) {
      std::vector<int32_t> free;
      for (int32_t j = 0; j < n; ++j)
        if (state[j] == 0) free.push_back(j);
      if (!free.empty()) {
        int32_t j = free[rng.irange(0, static_cast<int64_t>(free.size()) - 1)];
        state[j] = 2;
        f.map.push_back(TValue::plain(j));
        continue;
      }
      roll = 50;
    }
    if (n > 0 && roll < 70) {
      std::vector<int32_t> ok;
      for (int32_t j = 0; j < n; ++j)
        if (state[j] != 2) ok.push_back(j);
      if (!ok.empty()) {
        int32_t j = ok[rng.irange(0, static_cast<int64_t>(ok.size()) - 1)];
        state[j] = std::max(state[j], 1);
        f.map.push_back(TValue::weighted(Rational(rng.irange(-9, 9)), j));
        continue;
      }
    }
    v = rng.percent(50) ? TValue::win_e() : TValue::win_a();
    f.map.push_back(v);
  }
  require_realizable(f, "random_play_arrow");
  return f;
}

namespace {

std::string leaf_source(const OpenGame& g) { return print_term(*Term::leaf(g)); }

// One mining floor: 2k boundary wires each way, every exit fed, modest
// branching so leaf enumeration stays cheap at 40+ positions.
OpenGame mining_floor(Rng& rng, const MiningOpts& o) {
  const int32_t k = o.loop_arity;
  const int32_t np = o.floor_positions;
  RawGame raw;
  raw.left = {k, k};
  raw.right = {k, k};
  for (int32_t q = 0; q < np; ++q) {
    raw.pos_names.push_back("p" + std::to_string(q));
    raw.roles.push_back(rng.percent(50) ? Role::Exists : Role::Forall);
    raw.weights.push_back(Rational(rng.irange(o.weight_lo, o.weight_hi)));
  }
  for (int32_t i = 0; i < 2 * k; ++i)
    raw.edges.push_back(
        {EdgeSource::entrance(i), Target::pos(static_cast<int32_t>(rng.irange(0, np - 1)))});
  for (int32_t j = 0; j < 2 * k; ++j)
    raw.edges.push_back(
        {EdgeSource::pos(static_cast<int32_t>(rng.irange(0, np - 1))), Target::exit(j)});
  for (int32_t q = 0; q < np; ++q)
    raw.edges.push_back(
        {EdgeSource::pos(q), Target::pos(static_cast<int32_t>(rng.irange(0, np - 1)))});
  const int32_t branchers = std::min<int32_t>(4, np);
  for (int32_t b = 0; b < branchers; ++b) {
    int32_t q = static_cast<int32_t>(rng.irange(0, np - 1));
    raw.edges.push_back(
        {EdgeSource::pos(q), Target::pos(static_cast<int32_t>(rng.irange(0, np - 1)))});
  }
  return validate_game(raw);
}

OpenGame mining_top(int32_t k) {
  RawGame raw;
  raw.left = {1, 0};
  raw.right = {k, k};
  raw.pos_names = {"entry"};
  raw.roles = {Role::Exists};
  raw.weights = {Rational(0)};
  raw.edges.push_back({EdgeSource::entrance(0), Target::pos(0)});
  for (int32_t i = 0; i < k; ++i)
    raw.edges.push_back({EdgeSource::entrance(1 + i), Target::pos(0)});
  raw.edges.push_back({EdgeSource::pos(0), Target::exit(0)});
  return validate_game(raw);
}

OpenGame mining_bottom(int32_t k) {
  RawGame raw;
  raw.left = {k, k};
  raw.right = {0, 0};
  for (int32_t i = 0; i < k; ++i)
    raw.edges.push_back({EdgeSource::entrance(i), Target::exit(i)});
  return validate_game(raw);
}

}  // namespace

std::string gen_mining(uint64_t seed, const MiningOpts& o) {
  assert(o.floors >= 1 && o.loop_arity >= 1 && o.floor_positions >= 1);
  Rng rng(seed);
  OpenGame floor = mining_floor(rng, o);
  std::ostringstream out;
  out << "# mining seed=" << seed << " floors=" << o.floors
      << " floor_positions=" << o.floor_positions << " loop_arity=" << o.loop_arity
      << " weights=[" << o.weight_lo << "," << o.weight_hi << "]\n";
  out << "let floor = " << leaf_source(floor) << " in\n";
  // Powers of two by repeated squaring keep the shared DAG at one floor
  // node plus logarithmically many combinators.
  std::vector<std::string> powers{"floor"};
  for (int32_t span = 2; span <= o.floors; span *= 2) {
    std::string name = "stack" + std::to_string(span);
    const std::string& prev = powers.back();
    out << "let " << name << " = " << prev << " ; " << prev << " in\n";
    powers.push_back(name);
  }
  out << leaf_source(mining_top(o.loop_arity));
  for (int32_t bit = static_cast<int32_t>(powers.size()) - 1; bit >= 0; --bit)
    if (o.floors & (1 << bit)) out << "\n; " << powers[bit];
  out << "\n; " << leaf_source(mining_bottom(o.loop_arity)) << "\n";
  return out.str();
}

namespace {

OpenGame chain_opener(Rng& rng, int32_t width, int64_t wlo, int64_t whi) {
  RawGame raw;
  raw.left = {1, 0};
  raw.right = {width, 0};
  raw.pos_names = {"entry"};
  raw.roles = {Role::Exists};
  raw.weights = {Rational(rng.irange(wlo, whi))};
  raw.edges.push_back({EdgeSource::entrance(0), Target::pos(0)});
  raw.edges.push_back({EdgeSource::pos(0), Target::exit(0)});
  return validate_game(raw);
}

OpenGame chain_closer(Rng& rng, int32_t width, int64_t wlo, int64_t whi) {
  RawGame raw;
  raw.left = {width, 0};
  raw.right = {0, 0};
  for (int32_t q = 0; q < 2; ++q) {
    raw.pos_names.push_back("s" + std::to_string(q));
    raw.roles.push_back(rng.percent(50) ? Role::Exists : Role::Forall);
    raw.weights.push_back(Rational(rng.irange(wlo, whi)));
  }
  for (int32_t i = 0; i < width; ++i)
    raw.edges.push_back(
        {EdgeSource::entrance(i), Target::pos(static_cast<int32_t>(rng.irange(0, 1)))});
  raw.edges.push_back({EdgeSource::pos(0), Target::pos(1)});
  raw.edges.push_back({EdgeSource::pos(1), Target::pos(0)});
  return validate_game(raw);
}

}  // namespace

std::string gen_layered(uint64_t seed, const LayeredOpts& o) {
  assert(o.layers >= 1);
  Rng rng(seed);
  RandomGameOpts leaf_opts;
  leaf_opts.positions = 4;
  leaf_opts.weight_lo = o.weight_lo;
  leaf_opts.weight_hi = o.weight_hi;
  leaf_opts.stuck_percent = 5;
  const int32_t k = 1;
  auto fresh = [&](int32_t a, int32_t b) {
    return Term::leaf(random_rightward_game(rng, a, b, leaf_opts));
  };
  TermPtr x = fresh(k, k);
  int64_t flat = leaf_opts.positions;
  int let_counter = 0;
  for (int32_t layer = 1; layer < o.layers; ++layer) {
    int shape = static_cast<int>(rng.irange(0, 4));
    if (shape == 4 && 2 * flat + leaf_opts.positions > o.max_flat_positions) shape = 1;
    switch (shape) {
      case 0:
        x = Term::seq(fresh(k, k), x);
        flat += leaf_opts.positions;
        break;
      case 1:
        x = Term::seq(x, fresh(k, k));
        flat += leaf_opts.positions;
        break;
      case 2:  // feedback through one extra wire
        x = Term::trace(1, Term::seq(fresh(k + 1, k + 1),
                                     Term::sum(Term::constant(ConstKind::IdR), x)));
        flat += leaf_opts.positions;
        break;
      case 3:
        x = Term::seq(Term::seq(fresh(k, k), x), fresh(k, k));
        flat += 2 * leaf_opts.positions;
        break;
      case 4: {  // the layer is used twice, shared
        std::string name = "t" + std::to_string(let_counter++);
        TermPtr var = Term::var(name);
        x = Term::let(name, x, Term::seq(Term::seq(var, fresh(k, k)), var));
        flat = 2 * flat + leaf_opts.positions;
        break;
      }
    }
  }
  TermPtr closed =
      Term::seq(Term::seq(Term::leaf(chain_opener(rng, k, o.weight_lo, o.weight_hi)), x),
                Term::leaf(chain_closer(rng, k, o.weight_lo, o.weight_hi)));
  std::ostringstream out;
  out << "# layered seed=" << seed << " layers=" << o.layers << "\n" << print_term(*closed)
      << "\n";
  return out.str();
}

std::string gen_dr(uint64_t seed, const DrOpts& o) {
  assert(o.dr >= 1 && o.slots >= 1 && o.slots % o.dr == 0);
  Rng rng(seed);
  RandomGameOpts leaf_opts;
  leaf_opts.positions = o.leaf_positions;
  leaf_opts.weight_lo = o.weight_lo;
  leaf_opts.weight_hi = o.weight_hi;
  const int32_t distinct = o.slots / o.dr;
  std::ostringstream out;
  out << "# dr seed=" << seed << " dr=" << o.dr << " slots=" << o.slots << " width=" << o.width
      << "\n";
  for (int32_t d = 0; d < distinct; ++d)
    out << "let a" << d << " = "
        << leaf_source(random_rightward_game(rng, o.width, o.width, leaf_opts)) << " in\n";
  out << leaf_source(chain_opener(rng, o.width, o.weight_lo, o.weight_hi));
  for (int32_t s = 0; s < o.slots; ++s) out << "\n; a" << (s / o.dr);
  out << "\n; " << leaf_source(chain_closer(rng, o.width, o.weight_lo, o.weight_hi)) << "\n";
  return out.str();
}

std::string gen_arity(uint64_t seed, const ArityOpts& o) {
  assert(o.width >= 1 && o.slots >= 1);
  Rng rng(seed);
  RandomGameOpts leaf_opts;
  leaf_opts.positions = o.leaf_positions;
  leaf_opts.weight_lo = o.weight_lo;
  leaf_opts.weight_hi = o.weight_hi;
  std::ostringstream out;
  out << "# arity seed=" << seed << " width=" << o.width << " slots=" << o.slots << "\n";
  out << leaf_source(chain_opener(rng, o.width, o.weight_lo, o.weight_hi));
  for (int32_t s = 0; s < o.slots; ++s)
    out << "\n; " << leaf_source(random_rightward_game(rng, o.width, o.width, leaf_opts));
  out << "\n; " << leaf_source(chain_closer(rng, o.width, o.weight_lo, o.weight_hi)) << "\n";
  return out.str();
}

namespace {

struct ClosedBuilder {
  Rng& rng;
  RandomGameOpts opts;
  int let_counter = 0;

  // Rightward k -> k term costing at most `budget` flattened positions;
  // returns the term and its exact flattened position count.
  std::pair<TermPtr, int64_t> build(int32_t k, int64_t budget) {
    int roll = static_cast<int>(rng.irange(0, 99));
    if (budget <= 2 || roll < 35) {
      RandomGameOpts lo = opts;
      lo.positions = static_cast<int32_t>(rng.irange(0, std::min<int64_t>(3, budget)));
      OpenGame g = random_rightward_game(rng, k, k, lo);
      return {Term::leaf(g), g.num_positions()};
    }
    if (roll < 55) {
      auto [a, ca] = build(k, budget / 2);
      auto [b, cb] = build(k, budget - ca);
      return {Term::seq(a, b), ca + cb};
    }
    if (roll < 68 && k >= 2) {
      int32_t k1 = static_cast<int32_t>(rng.irange(1, k - 1));
      auto [a, ca] = build(k1, budget / 2);
      auto [b, cb] = build(k - k1, budget - ca);
      return {Term::sum(a, b), ca + cb};
    }
    if (roll < 80) {
      auto [a, ca] = build(k + 1, budget);
      return {Term::trace(1, a), ca};
    }
    if (roll < 90) {  // leftward wires through a bridge of two leaves
      RandomGameOpts lo = opts;
      lo.positions = static_cast<int32_t>(rng.irange(1, std::max<int64_t>(1, budget / 2)));
      lo.positions = std::min(lo.positions, 3);
      OpenGame a = random_open_game(rng, Arity{k, 0}, Arity{k, 1}, lo);
      int64_t ca = a.num_positions();
      lo.positions = static_cast<int32_t>(std::min<int64_t>(3, std::max<int64_t>(0, budget - ca)));
      OpenGame b = random_open_game(rng, Arity{k, 1}, Arity{k, 0}, lo);
      return {Term::seq(Term::leaf(a), Term::leaf(b)), ca + b.num_positions()};
    }
    {  // shared subterm, flattened twice
      auto [a, ca] = build(k, budget / 2);
      std::string name = "s" + std::to_string(let_counter++);
      return {Term::let(name, a, Term::seq(Term::var(name), Term::var(name))), 2 * ca};
    }
  }
};

}  // namespace

std::string gen_random_closed(uint64_t seed, const RandomClosedOpts& o) {
  Rng rng(seed);
  RandomGameOpts opts;
  opts.weight_lo = o.weight_lo;
  opts.weight_hi = o.weight_hi;
  opts.decimal_weights = o.decimal_weights;
  ClosedBuilder builder{rng, opts};
  const int32_t k = static_cast<int32_t>(rng.irange(1, 2));
  OpenGame opener = chain_opener(rng, k, o.weight_lo, o.weight_hi);
  OpenGame closer = chain_closer(rng, k, o.weight_lo, o.weight_hi);
  int64_t budget = o.max_positions - opener.num_positions() - closer.num_positions();
  auto [body, cost] = builder.build(k, std::max<int64_t>(0, budget));
  (void)cost;
  TermPtr closed = Term::seq(Term::seq(Term::leaf(opener), body), Term::leaf(closer));
  std::ostringstream out;
  out << "# random-closed seed=" << seed << "\n" << print_term(*closed) << "\n";
  return out.str();
}

}  // namespace mpgdiag
