#include <cctype>
#include <map>

#include "ranksets/mslsp.hpp"

namespace ranksets::mslsp {

namespace {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Dot, Arrow, DArrow, End };
  Kind kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip();
    Token t;
    t.pos = pos_;
    if (i_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = text_[i_];
    if (c == '(') return take(Token::Kind::LParen, 1);
    if (c == ')') return take(Token::Kind::RParen, 1);
    if (c == ',') return take(Token::Kind::Comma, 1);
    if (c == '.') return take(Token::Kind::Dot, 1);
    if (c == '-' && i_ + 1 < text_.size() && text_[i_ + 1] == '>')
      return take(Token::Kind::Arrow, 2);
    if (c == '<' && i_ + 2 < text_.size() && text_[i_ + 1] == '-' && text_[i_ + 2] == '>')
      return take(Token::Kind::DArrow, 3);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(text_.substr(i_, j - i_));
      advance(j - i_);
      return t;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else if (c == '\n') {
        ++i_;
        ++pos_.line;
        pos_.col = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
        ++pos_.col;
      } else {
        break;
      }
    }
  }
  Token take(Token::Kind k, size_t len) {
    Token t;
    t.kind = k;
    t.pos = pos_;
    t.text = std::string(text_.substr(i_, len));
    advance(len);
    return t;
  }
  void advance(size_t len) {
    i_ += len;
    pos_.col += static_cast<int>(len);
  }

  std::string_view text_;
  size_t i_ = 0;
  SourcePos pos_;
};

const char* sort_name(Sort s) { return s == Sort::Element ? "elem" : "set"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { shift(); }

  Formula parse_all() {
    Formula f = formula();
    expect(Token::Kind::End, "end of input");
    return f;
  }

 private:
  void shift() { tok_ = lex_.next(); }

  void expect(Token::Kind k, const std::string& what) {
    if (tok_.kind != k)
      throw ParseError(tok_.pos, "expected " + what + ", got '" +
                                     (tok_.kind == Token::Kind::End ? "<end>" : tok_.text) +
                                     "'");
  }

  bool at_ident(std::string_view s) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == s;
  }

  // formula := imp ( '<->' imp )?
  Formula formula() {
    Formula lhs = imp();
    if (tok_.kind == Token::Kind::DArrow) {
      SourcePos p = tok_.pos;
      shift();
      Formula rhs = formula();
      Formula f;
      f.kind = Formula::Kind::Iff;
      f.pos = p;
      f.kids.push_back(std::move(lhs));
      f.kids.push_back(std::move(rhs));
      return f;
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (tok_.kind == Token::Kind::Arrow) {
      SourcePos p = tok_.pos;
      shift();
      Formula rhs = imp();
      Formula f;
      f.kind = Formula::Kind::Implies;
      f.pos = p;
      f.kids.push_back(std::move(lhs));
      f.kids.push_back(std::move(rhs));
      return f;
    }
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (at_ident("or")) {
      SourcePos p = tok_.pos;
      shift();
      Formula rhs = conj();
      Formula f;
      f.kind = Formula::Kind::Or;
      f.pos = p;
      f.kids.push_back(std::move(lhs));
      f.kids.push_back(std::move(rhs));
      lhs = std::move(f);
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (at_ident("and")) {
      SourcePos p = tok_.pos;
      shift();
      Formula rhs = unary();
      Formula f;
      f.kind = Formula::Kind::And;
      f.pos = p;
      f.kids.push_back(std::move(lhs));
      f.kids.push_back(std::move(rhs));
      lhs = std::move(f);
    }
    return lhs;
  }

  Formula unary() {
    if (at_ident("not")) {
      SourcePos p = tok_.pos;
      shift();
      Formula f;
      f.kind = Formula::Kind::Not;
      f.pos = p;
      f.kids.push_back(unary());
      return f;
    }
    if (at_ident("forall_e") || at_ident("forall_s") || at_ident("exists_e") ||
        at_ident("exists_e_unguarded"))
      return quantifier();
    if (tok_.kind == Token::Kind::LParen) {
      shift();
      Formula f = formula();
      expect(Token::Kind::RParen, "')'");
      shift();
      return f;
    }
    return atom();
  }

  Formula quantifier() {
    SourcePos p = tok_.pos;
    std::string q = tok_.text;
    shift();
    expect(Token::Kind::Ident, "a variable name");
    std::string name = tok_.text;
    if (reserved(name))
      throw ParseError(tok_.pos, "'" + name + "' is reserved and cannot name a variable");
    SourcePos name_pos = tok_.pos;
    shift();

    Sort sort = q == "forall_s" ? Sort::Set : Sort::Element;
    int id = next_var_id_++;

    Term guard_term;
    bool guarded = false;
    if (q == "exists_e") {
      if (!at_ident("in"))
        throw ParseError(tok_.pos,
                         "exists_e requires a membership guard: exists_e x in <term>.");
      shift();
      guard_term = term();
      if (guard_term.sort != Sort::Set)
        throw ParseError(name_pos, "guard term must have sort set");
      guarded = true;
    }

    expect(Token::Kind::Dot, "'.' after the quantified variable");
    shift();

    scope_.push_back({name, id, sort});
    Formula body = formula();
    scope_.pop_back();

    Formula f;
    f.kind = q == "forall_e" || q == "forall_s" ? Formula::Kind::Forall
                                                : Formula::Kind::Exists;
    f.q_sort = sort;
    f.var_id = id;
    f.var_name = name;
    f.pos = p;
    if (guarded) {
      Formula g;
      g.kind = Formula::Kind::Atom;
      g.atom = Formula::Atom::In;
      g.pos = p;
      Term v;
      v.kind = Term::Kind::Var;
      v.sort = Sort::Element;
      v.var_id = id;
      v.var_name = name;
      g.terms.push_back(std::move(v));
      g.terms.push_back(std::move(guard_term));
      Formula conj;
      conj.kind = Formula::Kind::And;
      conj.pos = p;
      conj.kids.push_back(std::move(g));
      conj.kids.push_back(std::move(body));
      f.kids.push_back(std::move(conj));
    } else {
      f.kids.push_back(std::move(body));
    }
    return f;
  }

  static bool reserved(const std::string& s) {
    static const char* kWords[] = {
        "and",      "or",       "not",     "in",        "forall_e", "forall_s",
        "exists_e", "exists_e_unguarded",  "union",     "sing",     "replaceInBy",
        "subseteq", "disjoint", "evencard", "equalcard", "wpref",    "wstrict",
        "lpref",    "lstrict",  "eq"};
    for (const char* w : kWords)
      if (s == w) return true;
    return false;
  }

  Formula atom() {
    expect(Token::Kind::Ident, "an atom");
    std::string name = tok_.text;
    SourcePos p = tok_.pos;
    shift();
    expect(Token::Kind::LParen, "'(' after '" + name + "'");
    shift();
    std::vector<Term> args;
    if (tok_.kind != Token::Kind::RParen) {
      args.push_back(term());
      while (tok_.kind == Token::Kind::Comma) {
        shift();
        args.push_back(term());
      }
    }
    expect(Token::Kind::RParen, "')'");
    shift();
    return make_atom(name, std::move(args), p);
  }

  Formula make_atom(const std::string& name, std::vector<Term> args, SourcePos p) {
    auto check = [&](size_t arity, std::initializer_list<Sort> sorts) {
      if (args.size() != arity)
        throw ParseError(p, name + " expects " + std::to_string(arity) +
                                " argument(s), got " + std::to_string(args.size()));
      size_t i = 0;
      for (Sort s : sorts) {
        if (args[i].sort != s)
          throw ParseError(p, name + ": argument " + std::to_string(i + 1) +
                                  " must have sort " + sort_name(s) + ", got " +
                                  sort_name(args[i].sort));
        ++i;
      }
    };

    Formula f;
    f.kind = Formula::Kind::Atom;
    f.pos = p;
    if (name == "in") {
      check(2, {Sort::Element, Sort::Set});
      f.atom = Formula::Atom::In;
    } else if (name == "subseteq") {
      check(2, {Sort::Set, Sort::Set});
      f.atom = Formula::Atom::Subseteq;
    } else if (name == "disjoint") {
      check(2, {Sort::Set, Sort::Set});
      f.atom = Formula::Atom::Disjoint;
    } else if (name == "evencard") {
      check(1, {Sort::Set});
      f.atom = Formula::Atom::EvenCard;
    } else if (name == "equalcard") {
      check(2, {Sort::Set, Sort::Set});
      f.atom = Formula::Atom::EqualCard;
    } else if (name == "wpref") {
      check(2, {Sort::Set, Sort::Set});
      f.atom = Formula::Atom::WPref;
    } else if (name == "lpref") {
      check(2, {Sort::Element, Sort::Element});
      f.atom = Formula::Atom::LPref;
    } else if (name == "eq") {
      if (args.size() != 2)
        throw ParseError(p, "eq expects 2 arguments, got " + std::to_string(args.size()));
      if (args[0].sort != args[1].sort)
        throw ParseError(p, "eq: arguments must have the same sort");
      f.atom = Formula::Atom::Eq;
    } else if (name == "wstrict" || name == "lstrict") {
      // Sugar: strict(a, b) = pref(a, b) and not pref(b, a).
      Sort want = name == "wstrict" ? Sort::Set : Sort::Element;
      check(2, {want, want});
      Formula fwd;
      fwd.kind = Formula::Kind::Atom;
      fwd.atom = want == Sort::Set ? Formula::Atom::WPref : Formula::Atom::LPref;
      fwd.pos = p;
      fwd.terms = {args[0], args[1]};
      Formula bwd = fwd;
      bwd.terms = {args[1], args[0]};
      Formula neg;
      neg.kind = Formula::Kind::Not;
      neg.pos = p;
      neg.kids.push_back(std::move(bwd));
      Formula conj;
      conj.kind = Formula::Kind::And;
      conj.pos = p;
      conj.kids.push_back(std::move(fwd));
      conj.kids.push_back(std::move(neg));
      return conj;
    } else {
      throw ParseError(p, "unknown atom '" + name + "'");
    }
    f.terms = std::move(args);
    return f;
  }

  Term term() {
    expect(Token::Kind::Ident, "a term");
    std::string name = tok_.text;
    SourcePos p = tok_.pos;

    if (name == "union" || name == "sing" || name == "replaceInBy") {
      shift();
      expect(Token::Kind::LParen, "'(' after '" + name + "'");
      shift();
      std::vector<Term> args;
      args.push_back(term());
      while (tok_.kind == Token::Kind::Comma) {
        shift();
        args.push_back(term());
      }
      expect(Token::Kind::RParen, "')'");
      shift();

      Term t;
      t.sort = Sort::Set;
      auto need = [&](size_t arity, std::initializer_list<Sort> sorts) {
        if (args.size() != arity)
          throw ParseError(p, name + " expects " + std::to_string(arity) +
                                  " argument(s), got " + std::to_string(args.size()));
        size_t i = 0;
        for (Sort s : sorts) {
          if (args[i].sort != s)
            throw ParseError(p, name + ": argument " + std::to_string(i + 1) +
                                    " must have sort " + sort_name(s) + ", got " +
                                    sort_name(args[i].sort));
          ++i;
        }
      };
      if (name == "union") {
        need(2, {Sort::Set, Sort::Set});
        t.kind = Term::Kind::Union;
      } else if (name == "sing") {
        need(1, {Sort::Element});
        t.kind = Term::Kind::Sing;
      } else {
        need(3, {Sort::Element, Sort::Set, Sort::Element});
        t.kind = Term::Kind::ReplaceInBy;
      }
      t.args = std::move(args);
      return t;
    }

    if (reserved(name)) throw ParseError(p, "'" + name + "' cannot be used as a variable");
    shift();
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) {
        Term t;
        t.kind = Term::Kind::Var;
        t.sort = it->sort;
        t.var_id = it->id;
        t.var_name = name;
        return t;
      }
    }
    throw ParseError(p, "unbound variable '" + name + "'");
  }

  struct Binding {
    std::string name;
    int id;
    Sort sort;
  };

  Lexer lex_;
  Token tok_;
  std::vector<Binding> scope_;
  int next_var_id_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ranksets::mslsp
