#include "mpgdiag/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "mpgdiag/plays.hpp"

namespace mpgdiag {

namespace {

void expect_closed(const OpenGame& g, const char* who) {
  if (g.num_exits() != 0)
    throw std::invalid_argument(std::string(who) + " solves closed games only");
}

}  // namespace

Winner brute_force_solve(const OpenGame& g, int32_t entrance, const OracleLimits& lim) {
  expect_closed(g, "brute_force_solve");
  if (g.num_positions() > lim.brute_max_positions)
    throw GameTooLargeForBruteForce("game has " + std::to_string(g.num_positions()) +
                                    " positions, brute force capped at " +
                                    std::to_string(lim.brute_max_positions));
  StrategyEnum exists_enum(g, Role::Exists);
  StrategyEnum forall_enum(g, Role::Forall);
  Strategy se, sa;
  while (exists_enum.next(se)) {
    bool beats_all = true;
    forall_enum.reset();
    while (forall_enum.next(sa)) {
      TValue v = play_denotation(induced_ropg(g, se, sa), entrance);
      if (v.kind != TValue::Kind::WinE) {
        beats_all = false;
        break;
      }
    }
    if (beats_all) return Winner::Winning;
  }
  return Winner::Losing;
}

std::vector<Winner> progress_measure_solve(const OpenGame& g, PmStats* stats,
                                           int64_t max_lifts) {
  expect_closed(g, "progress_measure_solve");
  const int32_t nq = g.num_positions();

  // Clear rational weights to integers by the common denominator; the
  // sign of every cycle sum is unchanged.
  BigInt scale = common_denominator(g.weights);
  std::vector<int64_t> w(nq);
  for (int32_t q = 0; q < nq; ++q) w[q] = to_int64(BigInt(g.weights[q] * scale));
  if (stats) stats->weight_scale = scale.str();

  int64_t top = 0;
  for (int32_t q = 0; q < nq; ++q)
    if (w[q] < 0) top -= w[q];
  const int64_t infty = top + 1;
  if (stats) stats->top = top;

  std::vector<std::vector<int32_t>> preds(nq);
  for (int32_t q = 0; q < nq; ++q)
    for (const auto& t : g.succ[q]) {
      assert(!t.is_exit());
      preds[t.pos_index()].push_back(q);
    }

  std::vector<int64_t> f(nq, 0);
  // Required energy before moving into u: entering adds w[u].
  auto req = [&](int32_t u) -> int64_t {
    if (f[u] >= infty) return infty;
    return std::max<int64_t>(0, f[u] - w[u]);
  };
  auto lift_value = [&](int32_t q) -> int64_t {
    if (g.succ[q].empty())
      return g.roles[q] == Role::Exists ? infty : 0;  // stuck: mover's role loses
    bool exists = g.roles[q] == Role::Exists;
    int64_t best = exists ? infty : 0;
    for (const auto& t : g.succ[q]) {
      int64_t r = req(t.pos_index());
      best = exists ? std::min(best, r) : std::max(best, r);
    }
    return std::min(best, infty);
  };

  std::deque<int32_t> todo;
  std::vector<bool> queued(nq, false);
  for (int32_t q = 0; q < nq; ++q) {
    todo.push_back(q);
    queued[q] = true;
  }
  int64_t lifts = 0;
  while (!todo.empty()) {
    int32_t q = todo.front();
    todo.pop_front();
    queued[q] = false;
    int64_t v = lift_value(q);
    if (v <= f[q]) continue;
    f[q] = v;
    ++lifts;
    if (stats) stats->lifts = lifts;
    if (max_lifts > 0 && lifts > max_lifts)
      throw PmBudgetExceeded("progress measure lifting exceeded " +
                             std::to_string(max_lifts) + " lifts");
    for (int32_t p : preds[q])
      if (!queued[p] && f[p] < infty) {
        todo.push_back(p);
        queued[p] = true;
      }
  }

  std::vector<Winner> out;
  out.reserve(g.num_entrances());
  for (int32_t i = 0; i < g.num_entrances(); ++i) {
    const Target& t = g.entrance_succ[i];
    assert(!t.is_exit());
    out.push_back(f[t.pos_index()] < infty ? Winner::Winning : Winner::Losing);
  }
  return out;
}

}  // namespace mpgdiag
