#include "mpgdiag/diagram.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace mpgdiag {

const char* const_name(ConstKind k) {
  switch (k) {
    case ConstKind::IdR: return "id_r";
    case ConstKind::IdL: return "id_l";
    case ConstKind::SwapRR: return "swap_rr";
    case ConstKind::SwapRL: return "swap_rl";
    case ConstKind::SwapLR: return "swap_lr";
    case ConstKind::SwapLL: return "swap_ll";
    case ConstKind::Cup: return "cup";
    case ConstKind::Cap: return "cap";
  }
  return "?";
}

ObjectPair const_arity(ConstKind k) {
  switch (k) {
    case ConstKind::IdR: return {{1, 0}, {1, 0}};
    case ConstKind::IdL: return {{0, 1}, {0, 1}};
    case ConstKind::SwapRR: return {{2, 0}, {2, 0}};
    case ConstKind::SwapRL: return {{1, 1}, {1, 1}};
    case ConstKind::SwapLR: return {{1, 1}, {1, 1}};
    case ConstKind::SwapLL: return {{0, 2}, {0, 2}};
    case ConstKind::Cup: return {{0, 0}, {1, 1}};
    case ConstKind::Cap: return {{1, 1}, {0, 0}};
  }
  return {};
}

std::string object_string(const ObjectPair& o) {
  std::ostringstream s;
  s << "(" << o.dom.right << "," << o.dom.left << ")->(" << o.cod.right << "," << o.cod.left
    << ")";
  return s.str();
}

TermPtr Term::leaf(OpenGame g, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Leaf;
  t->loc = loc;
  t->game = std::make_shared<OpenGame>(std::move(g));
  return t;
}
TermPtr Term::seq(TermPtr a, TermPtr b, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Seq;
  t->loc = loc;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TermPtr Term::sum(TermPtr a, TermPtr b, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Sum;
  t->loc = loc;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TermPtr Term::trace(int32_t wires, TermPtr a, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Trace;
  t->loc = loc;
  t->trace_wires = wires;
  t->a = std::move(a);
  return t;
}
TermPtr Term::constant(ConstKind k, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->loc = loc;
  t->ckind = k;
  return t;
}
TermPtr Term::var(std::string name, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->loc = loc;
  t->name = std::move(name);
  return t;
}
TermPtr Term::let(std::string name, TermPtr bound, TermPtr body, SourceLoc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Let;
  t->loc = loc;
  t->name = std::move(name);
  t->a = std::move(bound);
  t->b = std::move(body);
  return t;
}

namespace {

enum class Tok : uint8_t {
  Ident, Number, LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Semi, Colon, Equals, Comma, Arrow, OPlus, Dot, Caret, End,
  KwLet, KwIn, KwTr, KwGame, KwPos, KwEdge, KwLhs, KwRhs, Const,
};

struct Token {
  Tok kind;
  std::string text;
  ConstKind ck = ConstKind::IdR;
  SourceLoc loc;
};

const char* token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::OPlus: return "'(+)'";
    case Tok::Dot: return "'.'";
    case Tok::Caret: return "'^'";
    case Tok::End: return "end of input";
    case Tok::KwLet: return "'let'";
    case Tok::KwIn: return "'in'";
    case Tok::KwTr: return "'tr'";
    case Tok::KwGame: return "'game'";
    case Tok::KwPos: return "'pos'";
    case Tok::KwEdge: return "'edge'";
    case Tok::KwLhs: return "'lhs'";
    case Tok::KwRhs: return "'rhs'";
    case Tok::Const: return "constant";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    tok_.loc = {line_, col_};
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "", ConstKind::IdR, tok_.loc};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\'')) {
        word.push_back(src_[pos_]);
        bump();
      }
      tok_.text = word;
      if (word == "let") tok_.kind = Tok::KwLet;
      else if (word == "in") tok_.kind = Tok::KwIn;
      else if (word == "tr") tok_.kind = Tok::KwTr;
      else if (word == "game") tok_.kind = Tok::KwGame;
      else if (word == "pos") tok_.kind = Tok::KwPos;
      else if (word == "edge") tok_.kind = Tok::KwEdge;
      else if (word == "lhs") tok_.kind = Tok::KwLhs;
      else if (word == "rhs") tok_.kind = Tok::KwRhs;
      else if (word == "id_r") { tok_.kind = Tok::Const; tok_.ck = ConstKind::IdR; }
      else if (word == "id_l") { tok_.kind = Tok::Const; tok_.ck = ConstKind::IdL; }
      else if (word == "swap_rr") { tok_.kind = Tok::Const; tok_.ck = ConstKind::SwapRR; }
      else if (word == "swap_rl") { tok_.kind = Tok::Const; tok_.ck = ConstKind::SwapRL; }
      else if (word == "swap_lr") { tok_.kind = Tok::Const; tok_.ck = ConstKind::SwapLR; }
      else if (word == "swap_ll") { tok_.kind = Tok::Const; tok_.ck = ConstKind::SwapLL; }
      else if (word == "cup") { tok_.kind = Tok::Const; tok_.ck = ConstKind::Cup; }
      else if (word == "cap") { tok_.kind = Tok::Const; tok_.ck = ConstKind::Cap; }
      else tok_.kind = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      if (c == '-') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          bump(); bump();
          tok_.kind = Tok::Arrow;
          return;
        }
        if (pos_ + 1 >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
          throw ParseError(tok_.loc, "stray '-'");
      }
      std::string num;
      num.push_back(c);
      bump();
      bool seen_sep = false;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          num.push_back(d);
          bump();
        } else if ((d == '.' || d == '/') && !seen_sep && pos_ + 1 < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          seen_sep = true;
          num.push_back(d);
          bump();
        } else {
          break;
        }
      }
      tok_.kind = Tok::Number;
      tok_.text = num;
      return;
    }
    switch (c) {
      case '(':
        if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '+' && src_[pos_ + 2] == ')') {
          bump(); bump(); bump();
          tok_.kind = Tok::OPlus;
          return;
        }
        bump(); tok_.kind = Tok::LParen; return;
      case ')': bump(); tok_.kind = Tok::RParen; return;
      case '[': bump(); tok_.kind = Tok::LBracket; return;
      case ']': bump(); tok_.kind = Tok::RBracket; return;
      case '{': bump(); tok_.kind = Tok::LBrace; return;
      case '}': bump(); tok_.kind = Tok::RBrace; return;
      case ';': bump(); tok_.kind = Tok::Semi; return;
      case ':': bump(); tok_.kind = Tok::Colon; return;
      case '=': bump(); tok_.kind = Tok::Equals; return;
      case ',': bump(); tok_.kind = Tok::Comma; return;
      case '.': bump(); tok_.kind = Tok::Dot; return;
      case '^': bump(); tok_.kind = Tok::Caret; return;
      default:
        throw ParseError(tok_.loc, std::string("unexpected character '") + c + "'");
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  TermPtr parse() {
    TermPtr t = parse_term();
    expect(Tok::End, "a complete diagram");
    return t;
  }

 private:
  Token expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind)
      throw ParseError(lex_.peek().loc, std::string("expected ") + token_name(kind) + " (" +
                                            what + "), found " +
                                            token_name(lex_.peek().kind));
    return lex_.take();
  }

  bool accept(Tok kind) {
    if (lex_.peek().kind != kind) return false;
    lex_.take();
    return true;
  }

  TermPtr parse_term() {
    if (++depth_ > 2000) throw ParseError(lex_.peek().loc, "diagram nested too deeply");
    struct Dec {
      int& d;
      ~Dec() { --d; }
    } dec{depth_};
    if (lex_.peek().kind == Tok::KwLet) {
      SourceLoc loc = lex_.take().loc;
      Token name = expect(Tok::Ident, "binder name");
      expect(Tok::Equals, "let binding");
      TermPtr bound = parse_term();
      expect(Tok::KwIn, "let body");
      scopes_.push_back(name.text);
      TermPtr body = parse_term();
      scopes_.pop_back();
      return Term::let(name.text, std::move(bound), std::move(body), loc);
    }
    return parse_sum();
  }

  TermPtr parse_sum() {
    TermPtr t = parse_seq();
    int links = 0;
    while (lex_.peek().kind == Tok::OPlus) {
      SourceLoc loc = lex_.take().loc;
      check_chain(++links, loc);
      t = Term::sum(std::move(t), parse_seq(), loc);
    }
    return t;
  }

  TermPtr parse_seq() {
    TermPtr t = parse_atom();
    int links = 0;
    while (lex_.peek().kind == Tok::Semi) {
      SourceLoc loc = lex_.take().loc;
      check_chain(++links, loc);
      t = Term::seq(std::move(t), parse_atom(), loc);
    }
    return t;
  }

  void check_chain(int links, SourceLoc loc) {
    if (links > 10000)
      throw ParseError(loc, "operator chain too long; name repeated pieces with let");
  }

  TermPtr parse_atom() {
    const Token& tk = lex_.peek();
    switch (tk.kind) {
      case Tok::LParen: {
        lex_.take();
        TermPtr t = parse_term();
        expect(Tok::RParen, "closing parenthesis");
        return t;
      }
      case Tok::KwTr: {
        SourceLoc loc = lex_.take().loc;
        expect(Tok::LBracket, "trace wire count");
        int32_t wires = parse_nat("trace wire count");
        expect(Tok::RBracket, "trace wire count");
        expect(Tok::LParen, "traced term");
        TermPtr t = parse_term();
        expect(Tok::RParen, "traced term");
        return Term::trace(wires, std::move(t), loc);
      }
      case Tok::Const: {
        Token c = lex_.take();
        TermPtr base = Term::constant(c.ck, c.loc);
        if (accept(Tok::Caret)) {
          int32_t n = parse_nat("constant multiplicity");
          if (n == 0) return Term::leaf(OpenGame{}, c.loc);  // empty monoidal unit
          TermPtr t = base;
          for (int32_t k = 1; k < n; ++k)
            t = Term::sum(std::move(t), Term::constant(c.ck, c.loc), c.loc);
          return t;
        }
        return base;
      }
      case Tok::Ident: {
        Token v = lex_.take();
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
          if (*it == v.text) return Term::var(v.text, v.loc);
        throw ParseError(v.loc, "unbound variable '" + v.text + "'");
      }
      case Tok::KwGame:
        return parse_leaf();
      default:
        throw ParseError(tk.loc, std::string("expected a diagram atom, found ") +
                                     token_name(tk.kind));
    }
  }

  int32_t parse_nat(const char* what) {
    Token n = expect(Tok::Number, what);
    for (char c : n.text)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError(n.loc, std::string(what) + " must be a natural number");
    if (n.text.size() > 7)
      throw ParseError(n.loc, std::string(what) + " is out of range");
    return std::stoi(n.text);
  }

  TermPtr parse_leaf() {
    SourceLoc loc = expect(Tok::KwGame, "leaf game").loc;
    RawGame raw;
    expect(Tok::LParen, "left arity");
    raw.left.right = parse_nat("left rightward arity");
    expect(Tok::Comma, "left arity");
    raw.left.left = parse_nat("left leftward arity");
    expect(Tok::RParen, "left arity");
    expect(Tok::Arrow, "arity arrow");
    expect(Tok::LParen, "right arity");
    raw.right.right = parse_nat("right rightward arity");
    expect(Tok::Comma, "right arity");
    raw.right.left = parse_nat("right leftward arity");
    expect(Tok::RParen, "right arity");
    expect(Tok::LBrace, "game body");
    std::map<std::string, int32_t> pos_index;
    struct PendingEdge {
      Token from, to;
      SourceLoc loc;
    };
    std::vector<PendingEdge> edges;
    while (!accept(Tok::RBrace)) {
      if (lex_.peek().kind == Tok::KwPos) {
        lex_.take();
        Token name = expect(Tok::Ident, "position name");
        if (pos_index.count(name.text))
          throw ParseError(name.loc, "position '" + name.text + "' declared twice");
        expect(Tok::Colon, "position role");
        Token role = expect(Tok::Ident, "role E or A");
        Role r;
        if (role.text == "E") r = Role::Exists;
        else if (role.text == "A") r = Role::Forall;
        else throw ParseError(role.loc, "role must be E or A");
        Token w = expect(Tok::Number, "position weight");
        expect(Tok::Semi, "position declaration");
        pos_index[name.text] = static_cast<int32_t>(raw.pos_names.size());
        raw.pos_names.push_back(name.text);
        raw.roles.push_back(r);
        raw.weights.push_back(parse_rational(w.text));
      } else if (lex_.peek().kind == Tok::KwEdge) {
        SourceLoc eloc = lex_.take().loc;
        Token from = take_port("edge source");
        expect(Tok::Arrow, "edge");
        Token to = take_port("edge target");
        expect(Tok::Semi, "edge declaration");
        edges.push_back({from, to, eloc});
      } else {
        throw ParseError(lex_.peek().loc, "expected 'pos', 'edge' or '}' in game body");
      }
    }
    for (const auto& e : edges) {
      raw.edges.push_back({resolve_source(e.from, raw, pos_index),
                           resolve_target(e.to, raw, pos_index)});
    }
    try {
      return Term::leaf(validate_game(raw), loc);
    } catch (const GameError& ge) {
      throw ParseError(loc, std::string("invalid leaf game: ") + ge.what());
    }
  }

  // Ports come fused: "lhs" "." "r3". The result token keeps the raw
  // spelling for diagnostics.
  Token take_port(const char* what) {
    const Token& tk = lex_.peek();
    if (tk.kind == Tok::KwLhs || tk.kind == Tok::KwRhs) {
      Token side = lex_.take();
      expect(Tok::Dot, what);
      Token wire = expect(Tok::Ident, "wire like r1 or l2");
      side.text += "." + wire.text;
      return side;
    }
    if (tk.kind == Tok::Ident) return lex_.take();
    throw ParseError(tk.loc, std::string("expected a port (") + what + "), found " +
                                 token_name(tk.kind));
  }

  struct PortRef {
    bool boundary;
    bool lhs = false, rightward = false;
    int32_t wire = 0;    // 1-based
    int32_t pos = -1;
  };

  PortRef decode_port(const Token& tk, const std::map<std::string, int32_t>& pos_index) {
    PortRef p{};
    auto dot = tk.text.find('.');
    if (dot == std::string::npos) {
      auto it = pos_index.find(tk.text);
      if (it == pos_index.end())
        throw ParseError(tk.loc, "unknown position '" + tk.text + "'");
      p.boundary = false;
      p.pos = it->second;
      return p;
    }
    p.boundary = true;
    p.lhs = tk.text.compare(0, dot, "lhs") == 0;
    std::string wire = tk.text.substr(dot + 1);
    if (wire.size() < 2 || (wire[0] != 'r' && wire[0] != 'l'))
      throw ParseError(tk.loc, "wire must look like r1 or l2");
    p.rightward = wire[0] == 'r';
    for (size_t k = 1; k < wire.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(wire[k])))
        throw ParseError(tk.loc, "wire must look like r1 or l2");
    if (wire.size() > 8) throw ParseError(tk.loc, "wire number out of range");
    p.wire = std::stoi(wire.substr(1));
    if (p.wire < 1) throw ParseError(tk.loc, "wire numbers start at 1");
    return p;
  }

  // Entrances are lhs.r1..m_r then rhs.l1..n_l; exits rhs.r1..n_r then
  // lhs.l1..m_l.
  EdgeSource resolve_source(const Token& tk, const RawGame& raw,
                            const std::map<std::string, int32_t>& pos_index) {
    PortRef p = decode_port(tk, pos_index);
    if (!p.boundary) return EdgeSource::pos(p.pos);
    if (p.lhs && p.rightward) {
      if (p.wire > raw.left.right) throw ParseError(tk.loc, "no such entrance " + tk.text);
      return EdgeSource::entrance(p.wire - 1);
    }
    if (!p.lhs && !p.rightward) {
      if (p.wire > raw.right.left) throw ParseError(tk.loc, "no such entrance " + tk.text);
      return EdgeSource::entrance(raw.left.right + p.wire - 1);
    }
    throw ParseError(tk.loc, tk.text + " is an exit; edges cannot leave an exit");
  }

  Target resolve_target(const Token& tk, const RawGame& raw,
                        const std::map<std::string, int32_t>& pos_index) {
    PortRef p = decode_port(tk, pos_index);
    if (!p.boundary) return Target::pos(p.pos);
    if (!p.lhs && p.rightward) {
      if (p.wire > raw.right.right) throw ParseError(tk.loc, "no such exit " + tk.text);
      return Target::exit(p.wire - 1);
    }
    if (p.lhs && !p.rightward) {
      if (p.wire > raw.left.left) throw ParseError(tk.loc, "no such exit " + tk.text);
      return Target::exit(raw.right.right + p.wire - 1);
    }
    throw ParseError(tk.loc, tk.text + " is an entrance; edges cannot enter an entrance");
  }

  Lexer lex_;
  std::vector<std::string> scopes_;
  int depth_ = 0;
};

std::string port_of_entrance(const OpenGame& g, int32_t i) {
  if (i < g.left.right) return "lhs.r" + std::to_string(i + 1);
  return "rhs.l" + std::to_string(i - g.left.right + 1);
}

std::string port_of_exit(const OpenGame& g, int32_t j) {
  if (j < g.right.right) return "rhs.r" + std::to_string(j + 1);
  return "lhs.l" + std::to_string(j - g.right.right + 1);
}

void print_leaf(std::ostringstream& out, const OpenGame& g) {
  out << "game (" << g.left.right << "," << g.left.left << ")->(" << g.right.right << ","
      << g.right.left << ") {";
  for (int32_t q = 0; q < g.num_positions(); ++q)
    out << " pos " << g.label(q) << ": " << (g.roles[q] == Role::Exists ? "E " : "A ")
        << format_rational(g.weights[q]) << ";";
  auto target = [&](const Target& t) {
    return t.is_exit() ? port_of_exit(g, t.exit_index()) : g.label(t.pos_index());
  };
  for (int32_t i = 0; i < g.num_entrances(); ++i)
    out << " edge " << port_of_entrance(g, i) << " -> " << target(g.entrance_succ[i]) << ";";
  for (int32_t q = 0; q < g.num_positions(); ++q)
    for (const auto& t : g.succ[q]) out << " edge " << g.label(q) << " -> " << target(t) << ";";
  out << " }";
}

enum Level { LvTerm = 0, LvSum = 1, LvSeq = 2, LvAtom = 3 };

void print_at(std::ostringstream& out, const Term& t, int level) {
  auto paren = [&](int needed, auto&& body) {
    if (level > needed) {
      out << "(";
      body();
      out << ")";
    } else {
      body();
    }
  };
  switch (t.kind) {
    case Term::Kind::Let:
      paren(LvTerm, [&] {
        out << "let " << t.name << " = ";
        print_at(out, *t.a, LvTerm);
        out << " in ";
        print_at(out, *t.b, LvTerm);
      });
      break;
    case Term::Kind::Sum:
      paren(LvSum, [&] {
        print_at(out, *t.a, LvSum);
        out << " (+) ";
        print_at(out, *t.b, LvSeq);
      });
      break;
    case Term::Kind::Seq:
      paren(LvSeq, [&] {
        print_at(out, *t.a, LvSeq);
        out << " ; ";
        print_at(out, *t.b, LvAtom);
      });
      break;
    case Term::Kind::Trace:
      out << "tr[" << t.trace_wires << "](";
      print_at(out, *t.a, LvTerm);
      out << ")";
      break;
    case Term::Kind::Const:
      out << const_name(t.ckind);
      break;
    case Term::Kind::Var:
      out << t.name;
      break;
    case Term::Kind::Leaf:
      print_leaf(out, *t.game);
      break;
  }
}

}  // namespace

TermPtr parse_diagram(std::string_view source) { return Parser(source).parse(); }

std::string print_term(const Term& t) {
  std::ostringstream out;
  print_at(out, t, LvTerm);
  return out.str();
}

ObjectPair infer_arity(const Term& t, const ArityEnv& env) {
  switch (t.kind) {
    case Term::Kind::Leaf:
      return {t.game->left, t.game->right};
    case Term::Kind::Const:
      return const_arity(t.ckind);
    case Term::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw ArityError(t.loc, "unbound variable '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::Let: {
      ArityEnv inner = env;
      inner[t.name] = infer_arity(*t.a, env);
      return infer_arity(*t.b, inner);
    }
    case Term::Kind::Seq: {
      ObjectPair a = infer_arity(*t.a, env);
      ObjectPair b = infer_arity(*t.b, env);
      if (!(a.cod == b.dom))
        throw ArityError(t.loc, "sequential composition needs matching middle objects: left "
                                "ends at (" + std::to_string(a.cod.right) + "," +
                                std::to_string(a.cod.left) + "), right starts at (" +
                                std::to_string(b.dom.right) + "," + std::to_string(b.dom.left) +
                                ")");
      return {a.dom, b.cod};
    }
    case Term::Kind::Sum: {
      ObjectPair a = infer_arity(*t.a, env);
      ObjectPair b = infer_arity(*t.b, env);
      return {{a.dom.right + b.dom.right, b.dom.left + a.dom.left},
              {a.cod.right + b.cod.right, b.cod.left + a.cod.left}};
    }
    case Term::Kind::Trace: {
      ObjectPair a = infer_arity(*t.a, env);
      if (a.dom.left != 0 || a.cod.left != 0)
        throw ArityError(t.loc,
                         "trace applies to purely rightward terms; use cup/cap for "
                         "bidirectional loops");
      if (a.dom.right < t.trace_wires || a.cod.right < t.trace_wires)
        throw ArityError(t.loc, "trace over " + std::to_string(t.trace_wires) +
                                    " wires needs at least that many on both sides, got " +
                                    object_string(a));
      return {{a.dom.right - t.trace_wires, 0}, {a.cod.right - t.trace_wires, 0}};
    }
  }
  throw std::logic_error("unreachable term kind");
}

int32_t SharedDag::leaf_count() const {
  int32_t n = 0;
  for (const auto& node : nodes)
    if (node.kind == Term::Kind::Leaf) ++n;
  return n;
}

namespace {

struct DagBuilder {
  SharedDag dag;
  std::map<std::string, std::vector<int32_t>> env;

  int32_t build(const Term& t) {
    DagNode node;
    node.kind = t.kind;
    node.loc = t.loc;
    switch (t.kind) {
      case Term::Kind::Var: {
        auto it = env.find(t.name);
        if (it == env.end() || it->second.empty())
          throw ArityError(t.loc, "unbound variable '" + t.name + "'");
        return it->second.back();  // the shared node
      }
      case Term::Kind::Let: {
        int32_t bound = build(*t.a);
        env[t.name].push_back(bound);
        int32_t body = build(*t.b);
        env[t.name].pop_back();
        return body;
      }
      case Term::Kind::Leaf:
        node.game = t.game;
        node.arity = {t.game->left, t.game->right};
        break;
      case Term::Kind::Const:
        node.ckind = t.ckind;
        node.arity = const_arity(t.ckind);
        break;
      case Term::Kind::Seq:
      case Term::Kind::Sum: {
        node.a = build(*t.a);
        node.b = build(*t.b);
        ObjectPair a = dag.nodes[node.a].arity;
        ObjectPair b = dag.nodes[node.b].arity;
        if (t.kind == Term::Kind::Seq) {
          if (!(a.cod == b.dom))
            throw ArityError(t.loc, "sequential composition needs matching middle objects");
          node.arity = {a.dom, b.cod};
        } else {
          node.arity = {{a.dom.right + b.dom.right, b.dom.left + a.dom.left},
                        {a.cod.right + b.cod.right, b.cod.left + a.cod.left}};
        }
        break;
      }
      case Term::Kind::Trace: {
        node.a = build(*t.a);
        node.trace_wires = t.trace_wires;
        ObjectPair a = dag.nodes[node.a].arity;
        if (a.dom.left != 0 || a.cod.left != 0)
          throw ArityError(t.loc, "trace applies to purely rightward terms");
        if (a.dom.right < t.trace_wires || a.cod.right < t.trace_wires)
          throw ArityError(t.loc, "trace over more wires than the term has");
        node.arity = {{a.dom.right - t.trace_wires, 0}, {a.cod.right - t.trace_wires, 0}};
        break;
      }
    }
    dag.nodes.push_back(std::move(node));
    return static_cast<int32_t>(dag.nodes.size() - 1);
  }
};

}  // namespace

SharedDag resolve_sharing(const TermPtr& t) {
  DagBuilder b;
  b.dag.root = b.build(*t);
  return std::move(b.dag);
}

namespace {

TermPtr unfold(const TermPtr& t, std::map<std::string, std::vector<TermPtr>>& env) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end() || it->second.empty())
        throw ArityError(t->loc, "unbound variable '" + t->name + "'");
      return it->second.back();
    }
    case Term::Kind::Let: {
      TermPtr bound = unfold(t->a, env);
      env[t->name].push_back(bound);
      TermPtr body = unfold(t->b, env);
      env[t->name].pop_back();
      return body;
    }
    case Term::Kind::Seq:
      return Term::seq(unfold(t->a, env), unfold(t->b, env), t->loc);
    case Term::Kind::Sum:
      return Term::sum(unfold(t->a, env), unfold(t->b, env), t->loc);
    case Term::Kind::Trace:
      return Term::trace(t->trace_wires, unfold(t->a, env), t->loc);
    default:
      return t;
  }
}

}  // namespace

TermPtr unfold_lets(const TermPtr& t) {
  std::map<std::string, std::vector<TermPtr>> env;
  return unfold(t, env);
}

}  // namespace mpgdiag
