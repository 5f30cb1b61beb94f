#include "mpgdiag/game.hpp"

#include <algorithm>
#include <cassert>

namespace mpgdiag {

int64_t OpenGame::num_edges() const {
  int64_t n = entrance_succ.size();
  for (const auto& s : succ) n += static_cast<int64_t>(s.size());
  return n;
}

std::string OpenGame::label(int32_t q) const {
  if (q >= 0 && q < static_cast<int32_t>(labels.size()) && !labels[q].empty()) return labels[q];
  return "q" + std::to_string(q);
}

OpenGame validate_game(const RawGame& raw) {
  if (raw.left.right < 0 || raw.left.left < 0 || raw.right.right < 0 || raw.right.left < 0)
    throw GameError(GameErrorCode::DanglingEdgeEndpoint, "negative arity");
  const int32_t num_pos = static_cast<int32_t>(raw.pos_names.size());
  if (raw.roles.size() != raw.pos_names.size() || raw.weights.size() != raw.pos_names.size())
    throw GameError(GameErrorCode::MissingRoleOrWeight,
                    "every position needs a role and a weight");

  OpenGame g;
  g.left = raw.left;
  g.right = raw.right;
  g.roles = raw.roles;
  g.weights = raw.weights;
  g.labels = raw.pos_names;
  g.entrance_succ.assign(g.num_entrances(), Target{});
  g.succ.assign(num_pos, {});

  const int32_t entrances = g.num_entrances();
  const int32_t exits = g.num_exits();
  std::vector<bool> entrance_seen(entrances, false);
  std::vector<bool> exit_seen(exits, false);

  auto describe_exit = [&](int32_t j) { return "exit " + std::to_string(j + 1); };

  // Edges form a set: a repeated declaration is one edge, not a
  // uniqueness violation.
  std::vector<RawGame::Edge> edges = raw.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  for (const auto& e : edges) {
    if (e.src.is_entrance()) {
      int32_t i = e.src.entrance_index();
      if (i < 0 || i >= entrances)
        throw GameError(GameErrorCode::DanglingEdgeEndpoint,
                        "edge from unknown entrance " + std::to_string(i + 1));
    } else if (e.src.pos_index() < 0 || e.src.pos_index() >= num_pos) {
      throw GameError(GameErrorCode::DanglingEdgeEndpoint,
                      "edge from unknown position #" + std::to_string(e.src.pos_index()));
    }
    if (e.dst.is_exit()) {
      int32_t j = e.dst.exit_index();
      if (j < 0 || j >= exits)
        throw GameError(GameErrorCode::DanglingEdgeEndpoint,
                        "edge into unknown " + describe_exit(e.dst.exit_index()));
      if (exit_seen[j])
        throw GameError(GameErrorCode::ExitWithMultiplePredecessors,
                        describe_exit(j) + " has more than one predecessor");
      exit_seen[j] = true;
    } else if (e.dst.pos_index() < 0 || e.dst.pos_index() >= num_pos) {
      throw GameError(GameErrorCode::DanglingEdgeEndpoint,
                      "edge into unknown position #" + std::to_string(e.dst.pos_index()));
    }
    if (e.src.is_entrance()) {
      int32_t i = e.src.entrance_index();
      if (entrance_seen[i])
        throw GameError(GameErrorCode::EntranceWithMultipleSuccessors,
                        "entrance " + std::to_string(i + 1) + " has more than one successor");
      entrance_seen[i] = true;
      g.entrance_succ[i] = e.dst;
    } else {
      g.succ[e.src.pos_index()].push_back(e.dst);
    }
  }
  for (int32_t i = 0; i < entrances; ++i)
    if (!entrance_seen[i])
      throw GameError(GameErrorCode::EntranceWithoutSuccessor,
                      "entrance " + std::to_string(i + 1) + " has no successor");
  for (auto& s : g.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return g;
}

RawGame to_raw(const OpenGame& g) {
  RawGame raw;
  raw.left = g.left;
  raw.right = g.right;
  raw.roles = g.roles;
  raw.weights = g.weights;
  raw.pos_names.reserve(g.num_positions());
  for (int32_t q = 0; q < g.num_positions(); ++q) raw.pos_names.push_back(g.label(q));
  for (int32_t i = 0; i < g.num_entrances(); ++i)
    raw.edges.push_back({EdgeSource::entrance(i), g.entrance_succ[i]});
  for (int32_t q = 0; q < g.num_positions(); ++q)
    for (const auto& t : g.succ[q]) raw.edges.push_back({EdgeSource::pos(q), t});
  return raw;
}

void check_valid(const OpenGame& g) {
  OpenGame again = validate_game(to_raw(g));
  if (again.entrance_succ != g.entrance_succ || again.succ != g.succ)
    throw GameError(GameErrorCode::DanglingEdgeEndpoint, "game fails revalidation");
}

OpenGame as_underlying(const OpenGame& g) {
  OpenGame u = g;
  u.left = Arity{g.num_entrances(), 0};
  u.right = Arity{g.num_exits(), 0};
  return u;
}

OpenGame wrap_object(OpenGame underlying, Arity dom, Arity cod) {
  assert(underlying.is_rightward());
  assert(underlying.left.right == dom.right + cod.left);
  assert(underlying.right.right == cod.right + dom.left);
  underlying.left = dom;
  underlying.right = cod;
  return underlying;
}

StrategyEnum::StrategyEnum(const OpenGame& g, Role owner) : game_(&g), owner_(owner) {
  for (int32_t q = 0; q < g.num_positions(); ++q)
    if (g.roles[q] == owner && !g.succ[q].empty()) movable_.push_back(q);
  odometer_.assign(movable_.size(), 0);
}

void StrategyEnum::reset() {
  std::fill(odometer_.begin(), odometer_.end(), 0);
  exhausted_ = false;
  started_ = false;
}

uint64_t StrategyEnum::count() const {
  uint64_t n = 1;
  for (int32_t q : movable_) n *= game_->succ[q].size();
  return n;
}

bool StrategyEnum::next(Strategy& out) {
  if (exhausted_) return false;
  if (started_) {
    size_t k = 0;
    for (; k < movable_.size(); ++k) {
      if (++odometer_[k] < game_->succ[movable_[k]].size()) break;
      odometer_[k] = 0;
    }
    if (k == movable_.size()) {
      exhausted_ = true;
      return false;
    }
  }
  started_ = true;
  out.owner = owner_;
  out.choice.assign(game_->num_positions(), std::nullopt);
  for (size_t k = 0; k < movable_.size(); ++k)
    out.choice[movable_[k]] = game_->succ[movable_[k]][odometer_[k]];
  return true;
}

RoPG induced_ropg(const OpenGame& g, const Strategy& se, const Strategy& sa) {
  if (se.owner != Role::Exists || sa.owner != Role::Forall ||
      se.choice.size() != static_cast<size_t>(g.num_positions()) ||
      sa.choice.size() != static_cast<size_t>(g.num_positions()))
    throw GameError(GameErrorCode::StrategyGameMismatch, "strategies do not fit the game");
  RoPG pg;
  pg.base = &g;
  pg.entrance_succ = g.entrance_succ;
  pg.succ.resize(g.num_positions());
  for (int32_t q = 0; q < g.num_positions(); ++q)
    pg.succ[q] = g.roles[q] == Role::Exists ? se.choice[q] : sa.choice[q];
  return pg;
}

RoPG as_ropg(const OpenGame& g) {
  RoPG pg;
  pg.base = &g;
  pg.entrance_succ = g.entrance_succ;
  pg.succ.resize(g.num_positions());
  for (int32_t q = 0; q < g.num_positions(); ++q) {
    if (g.succ[q].size() > 1)
      throw GameError(GameErrorCode::NotDeterministic,
                      "position " + g.label(q) + " has several successors");
    if (!g.succ[q].empty()) pg.succ[q] = g.succ[q][0];
  }
  return pg;
}

Play unique_play(const RoPG& pg, int32_t entrance) {
  assert(entrance >= 0 && entrance < pg.num_entrances());
  Play play;
  play.prefix.push_back({PlayNode::Kind::Entrance, entrance});
  // Only positions can repeat: edges never target entrances, exits stop.
  std::vector<int32_t> first_seen(pg.succ.size(), -1);
  Target cur = pg.entrance_succ[entrance];
  while (true) {
    if (cur.is_exit()) {
      play.prefix.push_back({PlayNode::Kind::Exit, cur.exit_index()});
      return play;
    }
    int32_t q = cur.pos_index();
    if (first_seen[q] >= 0) {
      auto at = play.prefix.begin() + first_seen[q];
      play.cycle.assign(at, play.prefix.end());
      play.prefix.erase(at, play.prefix.end());
      return play;
    }
    first_seen[q] = static_cast<int32_t>(play.prefix.size());
    play.prefix.push_back({PlayNode::Kind::Position, q});
    if (!pg.succ[q]) return play;  // stuck; the winner is decided by the role
    cur = *pg.succ[q];
  }
}

bool mp_check(const std::vector<Rational>&, const std::vector<Rational>& cycle) {
  assert(!cycle.empty());
  Rational sum = 0;
  for (const auto& w : cycle) sum += w;
  return sum >= 0;
}

Rational mp_simulated_average(const std::vector<Rational>& prefix,
                              const std::vector<Rational>& cycle, int64_t steps) {
  assert(steps > 0 && !cycle.empty());
  // Fast path for integer weights; otherwise accumulate rationals.
  bool all_int = true;
  int64_t bound = 0;
  for (const auto* vec : {&prefix, &cycle})
    for (const auto& w : *vec) {
      if (denominator(w) != 1 || !fits_int64(numerator(w))) {
        all_int = false;
        break;
      }
      bound = std::max(bound, std::abs(to_int64(numerator(w))));
    }
  auto weight_at = [&](int64_t j) -> const Rational& {
    if (j < static_cast<int64_t>(prefix.size())) return prefix[j];
    return cycle[(j - prefix.size()) % cycle.size()];
  };
  if (all_int && bound < (std::numeric_limits<int64_t>::max() / (steps + 1))) {
    int64_t sum = 0;
    for (int64_t j = 0; j < steps; ++j) sum += to_int64(numerator(weight_at(j)));
    return Rational(sum, steps);
  }
  Rational sum = 0;
  for (int64_t j = 0; j < steps; ++j) sum += weight_at(j);
  return sum / steps;
}

}  // namespace mpgdiag
