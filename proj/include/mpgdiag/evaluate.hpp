#pragma once

#include <cstdint>

#include "mpgdiag/denotation.hpp"
#include "mpgdiag/diagram.hpp"
#include "mpgdiag/meager.hpp"

namespace mpgdiag {

struct EvalStats {
  int64_t leaf_evals = 0;
  int64_t node_evals = 0;
  size_t max_outer = 0;  // largest strategy-set cardinality seen
  size_t max_inner = 0;  // largest response-set cardinality seen
};

struct FatOps {
  using Den = FatDen;
  static Den leaf(const OpenGame& g, const LeafLimits& lim) { return denote_leaf(g, lim); }
  static Den seq(const Den& a, const Den& b) { return seq_fat(a, b); }
  static Den sum(const Den& a, const Den& b) { return sum_fat(a, b); }
  static Den trace(int32_t l, const Den& a) { return trace_fat(l, a); }
  static Den ident(int32_t n) { return fat_identity(n); }
  static Den swap(int32_t a, int32_t b) { return fat_swap(a, b); }
};

struct MeagerOps {
  using Den = MeagerDen;
  static Den leaf(const OpenGame& g, const LeafLimits& lim) {
    return denote_leaf_meager(g, lim);
  }
  static Den seq(const Den& a, const Den& b) { return seq_meager(a, b); }
  static Den sum(const Den& a, const Den& b) { return sum_meager(a, b); }
  static Den trace(int32_t l, const Den& a) { return trace_meager(l, a); }
  static Den ident(int32_t n) { return meager_identity(n); }
  static Den swap(int32_t a, int32_t b) { return meager_swap(a, b); }
};

// Int-level sequential composition: the same composite of swaps, sums
// and one trace that composes the underlying games, applied to
// denotations. Works for any semantics that provides the rightward ops.
template <class Ops>
typename Ops::Den compose_int(const Arity& m, const Arity& l, const Arity& n,
                              const typename Ops::Den& A, const typename Ops::Den& B) {
  using Den = typename Ops::Den;
  Den body = Ops::sum(Ops::swap(l.left, m.right), Ops::ident(n.left));
  body = Ops::seq(body, Ops::sum(A, Ops::ident(n.left)));
  body = Ops::seq(body, Ops::sum(Ops::ident(l.right), Ops::swap(m.left, n.left)));
  body = Ops::seq(body, Ops::sum(B, Ops::ident(m.left)));
  body = Ops::seq(body, Ops::sum(Ops::swap(n.right, l.left), Ops::ident(m.left)));
  return Ops::trace(l.left, body);
}

template <class Ops>
typename Ops::Den sum_int(const Arity& m, const Arity& n, const Arity& k, const Arity& l,
                          const typename Ops::Den& A, const typename Ops::Den& B) {
  using Den = typename Ops::Den;
  Den body = Ops::sum(Ops::swap(m.right, k.right), Ops::swap(l.left, n.left));
  body = Ops::seq(body, Ops::sum(Ops::sum(Ops::ident(k.right), A), Ops::ident(l.left)));
  body = Ops::seq(body, Ops::sum(Ops::swap(k.right, n.right), Ops::swap(l.left, m.left)));
  body = Ops::seq(body, Ops::sum(Ops::sum(Ops::ident(n.right), B), Ops::ident(m.left)));
  return body;
}

template <class Ops>
IntArrow<typename Ops::Den> evaluate_dag(const SharedDag& dag, const LeafLimits& limits = {},
                                         EvalStats* stats = nullptr);

IntArrow<FatDen> evaluate_fat(const SharedDag& dag, const LeafLimits& limits = {},
                              EvalStats* stats = nullptr);
IntArrow<MeagerDen> evaluate_meager(const SharedDag& dag, const LeafLimits& limits = {},
                                    EvalStats* stats = nullptr);

}  // namespace mpgdiag
