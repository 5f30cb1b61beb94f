#include "doctest.h"
#include "fixtures.hpp"
#include "mpgdiag/diagram.hpp"

using namespace mpgdiag;
using namespace mpgdiag::test;

namespace {

const char* kExampleLeaf =
    "game (3,1)->(2,1) {"
    " pos e1: E 3.1; pos a1: A -4.5; pos a2: A 2;"
    " edge lhs.r1 -> rhs.r1; edge lhs.r2 -> a1; edge lhs.r3 -> e1;"
    " edge rhs.l1 -> a2;"
    " edge e1 -> lhs.l1; edge e1 -> a1; edge a1 -> a2;"
    " edge a2 -> e1; edge a2 -> rhs.r2; }";

// Random terms for the print/parse round trip. Leaf games get arbitrary
// arities; composition shapes are chosen so the term stays well-arified.
TermPtr random_term(Rng& rng, int depth) {
  if (depth == 0 || rng.percent(35)) {
    switch (rng.irange(0, 3)) {
      case 0: {
        RandomGameOpts o;
        o.positions = static_cast<int32_t>(rng.irange(0, 3));
        o.decimal_weights = rng.percent(50);
        Arity dom{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 2))};
        Arity cod{static_cast<int32_t>(rng.irange(0, 2)), static_cast<int32_t>(rng.irange(0, 2))};
        return Term::leaf(random_open_game(rng, dom, cod, o));
      }
      case 1:
        return Term::constant(static_cast<ConstKind>(rng.irange(0, 7)));
      default: {
        RandomGameOpts o;
        o.positions = 2;
        return Term::leaf(random_rightward_game(rng, 1, 1, o));
      }
    }
  }
  switch (rng.irange(0, 3)) {
    case 0: {
      TermPtr a = random_term(rng, depth - 1);
      ObjectPair ao = infer_arity(*a);
      RandomGameOpts o;
      o.positions = 1;
      TermPtr b = Term::leaf(random_open_game(rng, ao.cod, Arity{1, 0}, o));
      return Term::seq(a, b);
    }
    case 1:
      return Term::sum(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: {
      RandomGameOpts o;
      o.positions = 2;
      TermPtr a = Term::leaf(random_rightward_game(rng, 2, 2, o));
      return Term::trace(1, rng.percent(50) ? Term::seq(a, a) : a);
    }
  }
}

}  // namespace

TEST_CASE("parsing the combinators") {
  TermPtr t = parse_diagram("id_r ; id_r");
  REQUIRE(t->kind == Term::Kind::Seq);
  CHECK(t->a->kind == Term::Kind::Const);
  CHECK(t->b->ckind == ConstKind::IdR);

  t = parse_diagram("let t = id_r in (t ; t ; t)");
  REQUIRE(t->kind == Term::Kind::Let);
  CHECK(t->name == "t");
  const Term& body = *t->b;  // left-associated: (t ; t) ; t
  REQUIRE(body.kind == Term::Kind::Seq);
  CHECK(body.a->kind == Term::Kind::Seq);
  CHECK(body.b->kind == Term::Kind::Var);

  t = parse_diagram("id_r (+) id_r ; id_r");  // seq binds tighter
  REQUIRE(t->kind == Term::Kind::Sum);
  CHECK(t->b->kind == Term::Kind::Seq);

  t = parse_diagram("tr[1]( game (2,0)->(2,0) { edge lhs.r1 -> rhs.r1; edge lhs.r2 -> rhs.r2; } )");
  REQUIRE(t->kind == Term::Kind::Trace);
  CHECK(t->trace_wires == 1);
  CHECK(t->a->kind == Term::Kind::Leaf);
}

TEST_CASE("parsing the example leaf gives the drawn arities") {
  TermPtr t = parse_diagram(kExampleLeaf);
  REQUIRE(t->kind == Term::Kind::Leaf);
  CHECK(t->game->left == Arity{3, 1});
  CHECK(t->game->right == Arity{2, 1});
  CHECK(t->game->num_positions() == 3);
  CHECK(t->game->weights[0] == rat(31, 10));
  CHECK(infer_arity(*t) == ObjectPair{{3, 1}, {2, 1}});
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_diagram("id_r ;\n  ; id_r");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 2);
    CHECK(e.loc.col == 3);
    CHECK(doctest::String(e.what()).size() > 0);
  }
  CHECK_THROWS_AS(parse_diagram("game (1,0->(1,0) {}"), ParseError);
  CHECK_THROWS_AS(parse_diagram(""), ParseError);
}

TEST_CASE("unbound variables are parse errors") {
  try {
    parse_diagram("let t = id_r in t ; u");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(doctest::String(e.what()) == doctest::Contains("unbound variable 'u'"));
  }
}

TEST_CASE("leaf validation failures point at the leaf") {
  const char* bad =
      "id_r ;\ngame (1,0)->(1,0) { pos p: E 1; edge lhs.r1 -> rhs.r1; edge p -> rhs.r1; }";
  try {
    parse_diagram(bad);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 2);
    CHECK(doctest::String(e.what()) == doctest::Contains("predecessor"));
  }
}

TEST_CASE("ports respect the entrance and exit numbering") {
  CHECK_THROWS_AS(parse_diagram("game (1,0)->(1,0) { edge rhs.r1 -> lhs.r1; }"), ParseError);
  CHECK_THROWS_AS(parse_diagram("game (1,0)->(1,0) { edge lhs.l1 -> rhs.r1; }"), ParseError);
  CHECK_THROWS_AS(parse_diagram("game (1,0)->(1,0) { edge lhs.r2 -> rhs.r1; }"), ParseError);
  // leftward wires: rhs.l enters, lhs.l leaves
  TermPtr t = parse_diagram("game (0,1)->(0,1) { edge rhs.l1 -> lhs.l1; }");
  CHECK(t->game->num_entrances() == 1);
}

TEST_CASE("arity inference on the combinators") {
  CHECK(const_arity(ConstKind::Cup) == ObjectPair{{0, 0}, {1, 1}});
  CHECK(const_arity(ConstKind::Cap) == ObjectPair{{1, 1}, {0, 0}});
  ArityEnv env;
  env["x"] = ObjectPair{{1, 2}, {3, 4}};
  env["y"] = ObjectPair{{5, 6}, {7, 8}};
  TermPtr t = Term::sum(Term::var("x"), Term::var("y"));
  CHECK(infer_arity(*t, env) == ObjectPair{{6, 8}, {10, 12}});
}

TEST_CASE("arity errors") {
  CHECK_THROWS_AS(infer_arity(*parse_diagram("cup ; id_r")), ArityError);
  CHECK_THROWS_AS(infer_arity(*parse_diagram("tr[1](cup ; swap_rl)")), ArityError);
  CHECK_THROWS_AS(infer_arity(*parse_diagram("tr[2](id_r)")), ArityError);
  try {
    infer_arity(*parse_diagram("id_r ;\n id_l"));
    CHECK(false);
  } catch (const ArityError& e) {
    CHECK(e.loc.line == 1);  // reported at the ';'
  }
}

TEST_CASE("constant multiplicity sugar expands to sums") {
  TermPtr t = parse_diagram("id_r^3");
  CHECK(infer_arity(*t) == ObjectPair{{3, 0}, {3, 0}});
  REQUIRE(t->kind == Term::Kind::Sum);
  t = parse_diagram("id_l^2 ; swap_ll");
  CHECK(infer_arity(*t) == ObjectPair{{0, 2}, {0, 2}});
  t = parse_diagram("id_r^0");
  CHECK(infer_arity(*t) == ObjectPair{{0, 0}, {0, 0}});
}

TEST_CASE("print then parse is the identity on a generated corpus") {
  Rng rng(777);
  for (int k = 0; k < 1000; ++k) {
    TermPtr t = random_term(rng, 3);
    std::string s = print_term(*t);
    TermPtr back = parse_diagram(s);
    CHECK(print_term(*back) == s);
    CHECK(infer_arity(*back) == infer_arity(*t));
  }
}

TEST_CASE("mutated sources fail with diagnostics, never crashes") {
  Rng rng(888);
  RandomGameOpts o;
  o.positions = 2;
  for (int k = 0; k < 300; ++k) {
    std::string src =
        "let t = " + print_term(*Term::leaf(random_rightward_game(rng, 2, 2, o))) +
        " in tr[1]((t ; t) (+) id_r)";
    for (int hits = 0; hits <= rng.irange(0, 3); ++hits) {
      size_t at = static_cast<size_t>(rng.irange(0, static_cast<int64_t>(src.size()) - 1));
      src[at] = static_cast<char>("()[]{};>-+xq19 .\t\n"[rng.irange(0, 17)]);
    }
    try {
      TermPtr t = parse_diagram(src);
      infer_arity(*t);  // either outcome is fine, crashing is not
    } catch (const ParseError&) {
    } catch (const ArityError&) {
    }
  }
}

TEST_CASE("let sharing resolves to one node per binder") {
  RandomGameOpts o;
  o.positions = 2;
  Rng rng(5);
  std::string leaf = print_term(*Term::leaf(random_rightward_game(rng, 1, 1, o)));
  SharedDag dag = resolve_sharing(parse_diagram("let t = " + leaf + " in (t ; t)"));
  CHECK(dag.leaf_count() == 1);
  int32_t seq_node = dag.root;
  CHECK(dag.nodes[seq_node].kind == Term::Kind::Seq);
  CHECK(dag.nodes[seq_node].a == dag.nodes[seq_node].b);  // same shared child
}

TEST_CASE("shadowing binds innermost") {
  RandomGameOpts o;
  o.positions = 1;
  Rng rng(6);
  std::string g1 = print_term(*Term::leaf(random_rightward_game(rng, 1, 1, o)));
  std::string g2 = print_term(*Term::leaf(random_rightward_game(rng, 1, 2, o)));
  SharedDag dag =
      resolve_sharing(parse_diagram("let t = " + g1 + " in let t = " + g2 + " in t"));
  CHECK(dag.nodes[dag.root].kind == Term::Kind::Leaf);
  CHECK(dag.nodes[dag.root].arity == ObjectPair{{1, 0}, {2, 0}});
}

TEST_CASE("unfolding lets inlines every use") {
  TermPtr t = parse_diagram("let t = id_r in (t ; t ; t)");
  TermPtr u = unfold_lets(t);
  CHECK(u->kind == Term::Kind::Seq);
  SharedDag dag = resolve_sharing(u);
  int consts = 0;
  for (const auto& n : dag.nodes)
    if (n.kind == Term::Kind::Const) ++consts;
  CHECK(consts == 3);
}
