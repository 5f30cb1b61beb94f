#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mpgdiag/game.hpp"

namespace mpgdiag {

enum class ConstKind : uint8_t { IdR, IdL, SwapRR, SwapRL, SwapLR, SwapLL, Cup, Cap };
const char* const_name(ConstKind k);

// Domain/codomain objects of a diagram term.
struct ObjectPair {
  Arity dom, cod;
  friend bool operator==(const ObjectPair&, const ObjectPair&) = default;
};

std::string object_string(const ObjectPair& o);
ObjectPair const_arity(ConstKind k);

struct SourceLoc {
  int line = 0, col = 0;
};

struct ParseError : std::runtime_error {
  SourceLoc loc;
  ParseError(SourceLoc l, const std::string& msg)
      : std::runtime_error(std::to_string(l.line) + ":" + std::to_string(l.col) + ": " + msg),
        loc(l) {}
};

struct ArityError : std::runtime_error {
  SourceLoc loc;
  ArityError(SourceLoc l, const std::string& msg)
      : std::runtime_error(std::to_string(l.line) + ":" + std::to_string(l.col) + ": " + msg),
        loc(l) {}
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : uint8_t { Leaf, Seq, Sum, Trace, Const, Var, Let };
  Kind kind;
  SourceLoc loc;
  std::shared_ptr<const OpenGame> game;  // Leaf
  TermPtr a, b;                          // Seq/Sum: both; Trace: a; Let: a = bound, b = body
  int32_t trace_wires = 0;
  ConstKind ckind = ConstKind::IdR;
  std::string name;  // Var / Let

  static TermPtr leaf(OpenGame g, SourceLoc loc = {});
  static TermPtr seq(TermPtr a, TermPtr b, SourceLoc loc = {});
  static TermPtr sum(TermPtr a, TermPtr b, SourceLoc loc = {});
  static TermPtr trace(int32_t wires, TermPtr a, SourceLoc loc = {});
  static TermPtr constant(ConstKind k, SourceLoc loc = {});
  static TermPtr var(std::string name, SourceLoc loc = {});
  static TermPtr let(std::string name, TermPtr bound, TermPtr body, SourceLoc loc = {});
};

TermPtr parse_diagram(std::string_view source);
std::string print_term(const Term& t);

using ArityEnv = std::map<std::string, ObjectPair>;
ObjectPair infer_arity(const Term& t, const ArityEnv& env = {});

// `let`-sharing resolved into a DAG: one node per let binder no matter
// how often the variable occurs; evaluation then memoizes on node ids.
struct DagNode {
  Term::Kind kind;
  int32_t a = -1, b = -1;
  int32_t trace_wires = 0;
  ConstKind ckind = ConstKind::IdR;
  std::shared_ptr<const OpenGame> game;
  ObjectPair arity;
  SourceLoc loc;
};

struct SharedDag {
  std::vector<DagNode> nodes;  // children precede parents
  int32_t root = -1;
  int32_t leaf_count() const;
};

SharedDag resolve_sharing(const TermPtr& t);

// Substitutes every let; turns the DAG back into a tree. Test bridge for
// comparing shared against unfolded evaluation.
TermPtr unfold_lets(const TermPtr& t);

}  // namespace mpgdiag
