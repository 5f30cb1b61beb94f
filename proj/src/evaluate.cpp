#include "mpgdiag/evaluate.hpp"

namespace mpgdiag {

namespace {

template <class Den>
void track(EvalStats* stats, const Den& d) {
  if (!stats) return;
  ++stats->node_evals;
  stats->max_outer = std::max(stats->max_outer, d.val.size());
  for (const auto& inner : d.val) stats->max_inner = std::max(stats->max_inner, inner.size());
}

}  // namespace

template <class Ops>
IntArrow<typename Ops::Den> evaluate_dag(const SharedDag& dag, const LeafLimits& limits,
                                         EvalStats* stats) {
  using Den = typename Ops::Den;
  std::vector<Den> done(dag.nodes.size());
  for (size_t idx = 0; idx < dag.nodes.size(); ++idx) {
    const DagNode& node = dag.nodes[idx];
    switch (node.kind) {
      case Term::Kind::Leaf:
        done[idx] = Ops::leaf(*node.game, limits);
        if (stats) ++stats->leaf_evals;
        break;
      case Term::Kind::Const: {
        const ObjectPair o = const_arity(node.ckind);
        done[idx] = node.ckind == ConstKind::SwapRR || node.ckind == ConstKind::SwapLL
                        ? Ops::swap(1, 1)
                        : Ops::ident(o.dom.right + o.cod.left);
        break;
      }
      case Term::Kind::Seq: {
        const DagNode& na = dag.nodes[node.a];
        const DagNode& nb = dag.nodes[node.b];
        done[idx] = compose_int<Ops>(na.arity.dom, na.arity.cod, nb.arity.cod, done[node.a],
                                     done[node.b]);
        break;
      }
      case Term::Kind::Sum: {
        const DagNode& na = dag.nodes[node.a];
        const DagNode& nb = dag.nodes[node.b];
        done[idx] = sum_int<Ops>(na.arity.dom, na.arity.cod, nb.arity.dom, nb.arity.cod,
                                 done[node.a], done[node.b]);
        break;
      }
      case Term::Kind::Trace:
        done[idx] = Ops::trace(node.trace_wires, done[node.a]);
        break;
      case Term::Kind::Var:
      case Term::Kind::Let:
        throw std::logic_error("let/var nodes cannot appear in a resolved dag");
    }
    track(stats, done[idx]);
  }
  const DagNode& root = dag.nodes[dag.root];
  return {root.arity.dom, root.arity.cod, std::move(done[dag.root])};
}

template IntArrow<FatDen> evaluate_dag<FatOps>(const SharedDag&, const LeafLimits&, EvalStats*);
template IntArrow<MeagerDen> evaluate_dag<MeagerOps>(const SharedDag&, const LeafLimits&,
                                                     EvalStats*);

IntArrow<FatDen> evaluate_fat(const SharedDag& dag, const LeafLimits& limits, EvalStats* stats) {
  return evaluate_dag<FatOps>(dag, limits, stats);
}

IntArrow<MeagerDen> evaluate_meager(const SharedDag& dag, const LeafLimits& limits,
                                    EvalStats* stats) {
  return evaluate_dag<MeagerOps>(dag, limits, stats);
}

}  // namespace mpgdiag
