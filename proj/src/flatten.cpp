#include "mpgdiag/flatten.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mpgdiag {

namespace {

void expect_rightward(const OpenGame& g, const char* op) {
  if (!g.is_rightward())
    throw GameError(GameErrorCode::NotRightward, std::string(op) + " needs rightward games");
}

void append_tagged_labels(std::vector<std::string>& out, const OpenGame& g, const char* tag) {
  for (int32_t q = 0; q < g.num_positions(); ++q) out.push_back(tag + g.label(q));
}

}  // namespace

OpenGame ident_game(int32_t n) {
  OpenGame g;
  g.left = {n, 0};
  g.right = {n, 0};
  for (int32_t i = 0; i < n; ++i) g.entrance_succ.push_back(Target::exit(i));
  return g;
}

OpenGame swap_game(int32_t a, int32_t b) {
  OpenGame g;
  g.left = {a + b, 0};
  g.right = {a + b, 0};
  for (int32_t i = 0; i < a; ++i) g.entrance_succ.push_back(Target::exit(b + i));
  for (int32_t i = 0; i < b; ++i) g.entrance_succ.push_back(Target::exit(i));
  return g;
}

OpenGame seq_rightward(const OpenGame& a, const OpenGame& b) {
  expect_rightward(a, "seq");
  expect_rightward(b, "seq");
  if (a.right.right != b.left.right)
    throw GameError(GameErrorCode::NotRightward,
                    "seq: middle arities differ (" + std::to_string(a.right.right) + " vs " +
                        std::to_string(b.left.right) + ")");
  const int32_t qa = a.num_positions();
  OpenGame r;
  r.left = a.left;
  r.right = b.right;
  r.roles = a.roles;
  r.roles.insert(r.roles.end(), b.roles.begin(), b.roles.end());
  r.weights = a.weights;
  r.weights.insert(r.weights.end(), b.weights.begin(), b.weights.end());
  append_tagged_labels(r.labels, a, "0:");
  append_tagged_labels(r.labels, b, "1:");

  // A-side targets are rewired through B's entrances; a middle open end
  // vanishes into the unique successor edge B gives it.
  auto rewire = [&](Target t) -> Target {
    if (!t.is_exit()) return t;  // position of A keeps its index
    Target via = b.entrance_succ[t.exit_index()];
    if (via.is_exit()) return via;
    return Target::pos(qa + via.pos_index());
  };
  for (const auto& t : a.entrance_succ) r.entrance_succ.push_back(rewire(t));
  r.succ.resize(qa + b.num_positions());
  for (int32_t q = 0; q < qa; ++q) {
    for (const auto& t : a.succ[q]) r.succ[q].push_back(rewire(t));
    std::sort(r.succ[q].begin(), r.succ[q].end());
    r.succ[q].erase(std::unique(r.succ[q].begin(), r.succ[q].end()), r.succ[q].end());
  }
  for (int32_t q = 0; q < b.num_positions(); ++q)
    for (const auto& t : b.succ[q])
      r.succ[qa + q].push_back(t.is_exit() ? t : Target::pos(qa + t.pos_index()));
  return r;
}

OpenGame sum_games(const OpenGame& a, const OpenGame& b) {
  expect_rightward(a, "sum");
  expect_rightward(b, "sum");
  const int32_t qa = a.num_positions();
  OpenGame r;
  r.left = {a.left.right + b.left.right, 0};
  r.right = {a.right.right + b.right.right, 0};
  r.roles = a.roles;
  r.roles.insert(r.roles.end(), b.roles.begin(), b.roles.end());
  r.weights = a.weights;
  r.weights.insert(r.weights.end(), b.weights.begin(), b.weights.end());
  append_tagged_labels(r.labels, a, "0:");
  append_tagged_labels(r.labels, b, "1:");
  auto shift = [&](Target t) {
    return t.is_exit() ? Target::exit(a.right.right + t.exit_index())
                       : Target::pos(qa + t.pos_index());
  };
  r.entrance_succ = a.entrance_succ;
  for (const auto& t : b.entrance_succ) r.entrance_succ.push_back(shift(t));
  r.succ = a.succ;
  r.succ.resize(qa + b.num_positions());
  for (int32_t q = 0; q < b.num_positions(); ++q)
    for (const auto& t : b.succ[q]) r.succ[qa + q].push_back(shift(t));
  return r;
}

OpenGame trace_game(int32_t loops, const OpenGame& a) {
  expect_rightward(a, "trace");
  if (a.left.right < loops || a.right.right < loops)
    throw GameError(GameErrorCode::NotRightward, "trace over more wires than the game has");
  const int32_t m = a.left.right - loops;
  const int32_t n = a.right.right - loops;
  OpenGame r;
  r.left = {m, 0};
  r.right = {n, 0};
  r.roles = a.roles;
  r.weights = a.weights;
  r.labels = a.labels;

  // Follow a first step through chains of loop ports. Loop ports cannot
  // repeat within one chain: a repeat would be a cycle of direct edges
  // and never reach anything.
  auto chase = [&](Target t) -> std::optional<Target> {
    std::vector<bool> seen(loops, false);
    while (t.is_exit() && t.exit_index() < loops) {
      int32_t port = t.exit_index();
      if (seen[port]) return std::nullopt;
      seen[port] = true;
      t = a.entrance_succ[port];
    }
    if (t.is_exit()) return Target::exit(t.exit_index() - loops);
    return t;
  };

  for (int32_t i = 0; i < m; ++i) {
    auto t = chase(a.entrance_succ[loops + i]);
    if (!t)
      throw GameError(GameErrorCode::ExitWithMultiplePredecessors,
                      "trace left entrance " + std::to_string(i + 1) + " in a dead loop");
    r.entrance_succ.push_back(*t);
  }
  r.succ.resize(a.num_positions());
  for (int32_t q = 0; q < a.num_positions(); ++q) {
    for (const auto& t0 : a.succ[q])
      if (auto t = chase(t0)) r.succ[q].push_back(*t);
    std::sort(r.succ[q].begin(), r.succ[q].end());
    r.succ[q].erase(std::unique(r.succ[q].begin(), r.succ[q].end()), r.succ[q].end());
  }
  return r;
}

OpenGame constant_game(ConstKind k) {
  ObjectPair o = const_arity(k);
  OpenGame underlying;
  switch (k) {
    case ConstKind::SwapRR:
    case ConstKind::SwapLL:
      underlying = swap_game(1, 1);
      break;
    case ConstKind::SwapRL:
    case ConstKind::SwapLR:
      underlying = ident_game(2);
      break;
    default:
      underlying = ident_game(1);
      break;
  }
  return wrap_object(std::move(underlying), o.dom, o.cod);
}

// (sigma_{l_l,m_r} + id_{n_l}) ; (A + id_{n_l}) ; (id_{l_r} + sigma_{m_l,n_l})
//   ; (B + id_{m_l}) ; (sigma_{n_r,l_l} + id_{m_l}), traced over l_l.
OpenGame seq_bidirectional(const OpenGame& a, const OpenGame& b) {
  if (!(a.right == b.left))
    throw GameError(GameErrorCode::NotRightward,
                    "sequential composition needs matching middle objects");
  const Arity m = a.left, l = a.right, n = b.right;
  OpenGame body = sum_games(swap_game(l.left, m.right), ident_game(n.left));
  body = seq_rightward(body, sum_games(as_underlying(a), ident_game(n.left)));
  body = seq_rightward(body, sum_games(ident_game(l.right), swap_game(m.left, n.left)));
  body = seq_rightward(body, sum_games(as_underlying(b), ident_game(m.left)));
  body = seq_rightward(body, sum_games(swap_game(n.right, l.left), ident_game(m.left)));
  return wrap_object(trace_game(l.left, body), m, n);
}

// (sigma_{m_r,k_r} + sigma_{l_l,n_l}) ; (id_{k_r} + A + id_{l_l})
//   ; (sigma_{k_r,n_r} + sigma_{l_l,m_l}) ; (id_{n_r} + B + id_{m_l}).
OpenGame sum_bidirectional(const OpenGame& a, const OpenGame& b) {
  const Arity m = a.left, n = a.right, k = b.left, l = b.right;
  OpenGame ua = as_underlying(a);
  OpenGame ub = as_underlying(b);
  OpenGame body = sum_games(swap_game(m.right, k.right), swap_game(l.left, n.left));
  body = seq_rightward(body, sum_games(sum_games(ident_game(k.right), ua), ident_game(l.left)));
  body = seq_rightward(body, sum_games(swap_game(k.right, n.right), swap_game(l.left, m.left)));
  body = seq_rightward(body, sum_games(sum_games(ident_game(n.right), ub), ident_game(m.left)));
  Arity dom{m.right + k.right, k.left + m.left};
  Arity cod{n.right + l.right, l.left + n.left};
  return wrap_object(std::move(body), dom, cod);
}

OpenGame flatten(const SharedDag& dag) {
  std::vector<OpenGame> done(dag.nodes.size());
  for (size_t idx = 0; idx < dag.nodes.size(); ++idx) {
    const DagNode& node = dag.nodes[idx];
    switch (node.kind) {
      case Term::Kind::Leaf:
        done[idx] = *node.game;
        break;
      case Term::Kind::Const:
        done[idx] = constant_game(node.ckind);
        break;
      case Term::Kind::Seq:
        done[idx] = seq_bidirectional(done[node.a], done[node.b]);
        break;
      case Term::Kind::Sum:
        done[idx] = sum_bidirectional(done[node.a], done[node.b]);
        break;
      case Term::Kind::Trace: {
        OpenGame traced = trace_game(node.trace_wires, as_underlying(done[node.a]));
        done[idx] = wrap_object(std::move(traced), node.arity.dom, node.arity.cod);
        break;
      }
      case Term::Kind::Var:
      case Term::Kind::Let:
        throw std::logic_error("let/var nodes cannot appear in a resolved dag");
    }
  }
  return done[dag.root];
}

std::string emit_leaf_syntax(const OpenGame& g) {
  std::ostringstream out;
  out << "game (" << g.left.right << "," << g.left.left << ")->(" << g.right.right << ","
      << g.right.left << ") {\n";
  for (int32_t q = 0; q < g.num_positions(); ++q)
    out << "  pos q" << q << ": " << (g.roles[q] == Role::Exists ? "E " : "A ")
        << format_rational(g.weights[q]) << ";\n";
  auto exit_port = [&](int32_t j) {
    return j < g.right.right ? "rhs.r" + std::to_string(j + 1)
                             : "lhs.l" + std::to_string(j - g.right.right + 1);
  };
  auto target = [&](const Target& t) {
    return t.is_exit() ? exit_port(t.exit_index()) : "q" + std::to_string(t.pos_index());
  };
  for (int32_t i = 0; i < g.num_entrances(); ++i) {
    std::string port = i < g.left.right ? "lhs.r" + std::to_string(i + 1)
                                        : "rhs.l" + std::to_string(i - g.left.right + 1);
    out << "  edge " << port << " -> " << target(g.entrance_succ[i]) << ";\n";
  }
  for (int32_t q = 0; q < g.num_positions(); ++q)
    for (const auto& t : g.succ[q]) out << "  edge q" << q << " -> " << target(t) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace mpgdiag
