#include <functional>

#include "ranksets/mslsp.hpp"

namespace ranksets::mslsp {

namespace {

const char* atom_name(Formula::Atom a) {
  switch (a) {
    case Formula::Atom::In: return "in";
    case Formula::Atom::Subseteq: return "subseteq";
    case Formula::Atom::Disjoint: return "disjoint";
    case Formula::Atom::EvenCard: return "evencard";
    case Formula::Atom::EqualCard: return "equalcard";
    case Formula::Atom::WPref: return "wpref";
    case Formula::Atom::LPref: return "lpref";
    case Formula::Atom::Eq: return "eq";
  }
  return "?";
}

Formula nnf(const Formula& f, bool positive) {
  Formula out;
  out.pos = f.pos;
  switch (f.kind) {
    case Formula::Kind::Atom:
      if (positive) return f;
      out.kind = Formula::Kind::Not;
      out.kids.push_back(f);
      return out;
    case Formula::Kind::Not:
      return nnf(f.kids[0], !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool keep = (f.kind == Formula::Kind::And) == positive;
      out.kind = keep ? Formula::Kind::And : Formula::Kind::Or;
      for (const Formula& k : f.kids) out.kids.push_back(nnf(k, positive));
      return out;
    }
    case Formula::Kind::Implies: {
      out.kind = positive ? Formula::Kind::Or : Formula::Kind::And;
      out.kids.push_back(nnf(f.kids[0], !positive));
      out.kids.push_back(nnf(f.kids[1], positive));
      return out;
    }
    case Formula::Kind::Iff: {
      // a <-> b  becomes  (~a or b) and (~b or a); negated:  (a or b) and (~a or ~b)
      Formula left, right;
      left.pos = right.pos = f.pos;
      left.kind = right.kind = Formula::Kind::Or;
      if (positive) {
        left.kids.push_back(nnf(f.kids[0], false));
        left.kids.push_back(nnf(f.kids[1], true));
        right.kids.push_back(nnf(f.kids[1], false));
        right.kids.push_back(nnf(f.kids[0], true));
      } else {
        left.kids.push_back(nnf(f.kids[0], true));
        left.kids.push_back(nnf(f.kids[1], true));
        right.kids.push_back(nnf(f.kids[0], false));
        right.kids.push_back(nnf(f.kids[1], false));
      }
      out.kind = Formula::Kind::And;
      out.kids.push_back(std::move(left));
      out.kids.push_back(std::move(right));
      return out;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool keep = (f.kind == Formula::Kind::Forall) == positive;
      out.kind = keep ? Formula::Kind::Forall : Formula::Kind::Exists;
      out.q_sort = f.q_sort;
      out.var_id = f.var_id;
      out.var_name = f.var_name;
      out.kids.push_back(nnf(f.kids[0], positive));
      return out;
    }
  }
  return out;
}

bool term_mentions(const Term& t, int var_id) {
  if (t.kind == Term::Kind::Var) return t.var_id == var_id;
  for (const Term& a : t.args)
    if (term_mentions(a, var_id)) return true;
  return false;
}

void collect_conjuncts(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const Formula& k : f.kids) collect_conjuncts(k, out);
  } else {
    out.push_back(&f);
  }
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind == Formula::Kind::Forall || f.kind == Formula::Kind::Exists) return false;
  for (const Formula& k : f.kids)
    if (!is_quantifier_free(k)) return false;
  return true;
}

// Definition-2 recursion over the normal form; fills `reason` with the first
// offending subformula.
bool esg_check(const Formula& f, std::string& reason) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Not:
      return true;  // NNF: negation wraps an atom only
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const Formula& k : f.kids)
        if (!esg_check(k, reason)) return false;
      return true;
    case Formula::Kind::Forall:
      return esg_check(f.kids[0], reason);
    case Formula::Kind::Exists: {
      if (f.q_sort == Sort::Set) {
        reason = "set-sort existential quantifier: " + to_string(f);
        return false;
      }
      std::vector<const Formula*> conjuncts;
      collect_conjuncts(f.kids[0], conjuncts);
      bool guarded = false;
      for (const Formula* c : conjuncts) {
        if (c->kind != Formula::Kind::Atom || c->atom != Formula::Atom::In) continue;
        const Term& lhs = c->terms[0];
        const Term& rhs = c->terms[1];
        if (lhs.kind == Term::Kind::Var && lhs.var_id == f.var_id &&
            !term_mentions(rhs, f.var_id)) {
          guarded = true;
          break;
        }
      }
      if (!guarded) {
        reason = "unguarded element existential: " + to_string(f);
        return false;
      }
      return esg_check(f.kids[0], reason);
    }
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      reason = "formula is not in negation normal form: " + to_string(f);
      return false;
  }
  return false;
}

struct EvalEnv {
  // var_id -> value (element code, or set mask)
  std::vector<std::pair<int, uint32_t>> vals;

  uint32_t lookup(int id) const {
    for (auto it = vals.rbegin(); it != vals.rend(); ++it)
      if (it->first == id) return it->second;
    throw std::invalid_argument("formula is not closed: unbound variable id " +
                                std::to_string(id));
  }
};

uint32_t eval_term(const Term& t, const EvalEnv& env) {
  switch (t.kind) {
    case Term::Kind::Var:
      return env.lookup(t.var_id);
    case Term::Kind::Union:
      return eval_term(t.args[0], env) | eval_term(t.args[1], env);
    case Term::Kind::Sing:
      return 1u << eval_term(t.args[0], env);
    case Term::Kind::ReplaceInBy: {
      uint32_t a = eval_term(t.args[0], env);
      uint32_t set = eval_term(t.args[1], env);
      uint32_t b = eval_term(t.args[2], env);
      return (set & ~(1u << a)) | (1u << b);
    }
  }
  return 0;
}

bool eval_rec(const Formula& f, const ElementOrder& ord, const SetRelation& rel,
              EvalEnv& env) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      switch (f.atom) {
        case Formula::Atom::In:
          return set_member(static_cast<int>(eval_term(f.terms[0], env)),
                            eval_term(f.terms[1], env));
        case Formula::Atom::Subseteq:
          return set_subseteq(eval_term(f.terms[0], env), eval_term(f.terms[1], env));
        case Formula::Atom::Disjoint:
          return set_disjoint(eval_term(f.terms[0], env), eval_term(f.terms[1], env));
        case Formula::Atom::EvenCard:
          return set_even_card(eval_term(f.terms[0], env));
        case Formula::Atom::EqualCard:
          return set_equal_card(eval_term(f.terms[0], env), eval_term(f.terms[1], env));
        case Formula::Atom::WPref:
          return rel.weak(eval_term(f.terms[0], env), eval_term(f.terms[1], env));
        case Formula::Atom::LPref:
          return ord.at(static_cast<int>(eval_term(f.terms[0], env)),
                        static_cast<int>(eval_term(f.terms[1], env)));
        case Formula::Atom::Eq:
          return eval_term(f.terms[0], env) == eval_term(f.terms[1], env);
      }
      return false;
    }
    case Formula::Kind::Not:
      return !eval_rec(f.kids[0], ord, rel, env);
    case Formula::Kind::And:
      for (const Formula& k : f.kids)
        if (!eval_rec(k, ord, rel, env)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& k : f.kids)
        if (eval_rec(k, ord, rel, env)) return true;
      return false;
    case Formula::Kind::Implies:
      return !eval_rec(f.kids[0], ord, rel, env) || eval_rec(f.kids[1], ord, rel, env);
    case Formula::Kind::Iff:
      return eval_rec(f.kids[0], ord, rel, env) == eval_rec(f.kids[1], ord, rel, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool forall = f.kind == Formula::Kind::Forall;
      int n = ord.size();
      uint32_t lo = f.q_sort == Sort::Element ? 0 : 1;
      uint32_t hi = f.q_sort == Sort::Element ? static_cast<uint32_t>(n - 1)
                                              : (1u << n) - 1;
      for (uint32_t v = lo; v <= hi; ++v) {
        env.vals.emplace_back(f.var_id, v);
        bool r = eval_rec(f.kids[0], ord, rel, env);
        env.vals.pop_back();
        if (forall && !r) return false;
        if (!forall && r) return true;
      }
      return forall;
    }
  }
  return false;
}

}  // namespace

Formula normalize(const Formula& f) { return nnf(f, true); }

EsgVerdict classify_esg(const Formula& f) {
  Formula n = normalize(f);
  EsgVerdict v;
  v.is_esg = esg_check(n, v.reason);
  return v;
}

bool eval_formula(const Formula& f, const ElementOrder& ord, const SetRelation& rel) {
  if (ord.size() != rel.domain_size())
    throw std::invalid_argument("structure sorts disagree on n");
  EvalEnv env;
  return eval_rec(f, ord, rel, env);
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var_name;
    case Term::Kind::Union:
      return "union(" + to_string(t.args[0]) + ", " + to_string(t.args[1]) + ")";
    case Term::Kind::Sing:
      return "sing(" + to_string(t.args[0]) + ")";
    case Term::Kind::ReplaceInBy:
      return "replaceInBy(" + to_string(t.args[0]) + ", " + to_string(t.args[1]) + ", " +
             to_string(t.args[2]) + ")";
  }
  return "?";
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::string out = atom_name(f.atom);
      out += '(';
      for (size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(f.terms[i]);
      }
      out += ')';
      return out;
    }
    case Formula::Kind::Not:
      return "not " + to_string(f.kids[0]);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string sep = f.kind == Formula::Kind::And ? " and " : " or ";
      std::string out = "(";
      for (size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += sep;
        out += to_string(f.kids[i]);
      }
      return out + ")";
    }
    case Formula::Kind::Implies:
      return "(" + to_string(f.kids[0]) + " -> " + to_string(f.kids[1]) + ")";
    case Formula::Kind::Iff:
      return "(" + to_string(f.kids[0]) + " <-> " + to_string(f.kids[1]) + ")";
    case Formula::Kind::Forall:
      return std::string(f.q_sort == Sort::Element ? "forall_e " : "forall_s ") +
             f.var_name + ". " + to_string(f.kids[0]);
    case Formula::Kind::Exists:
      return std::string(f.q_sort == Sort::Element ? "exists_e* " : "exists_s* ") +
             f.var_name + ". " + to_string(f.kids[0]);
  }
  return "?";
}

}  // namespace ranksets::mslsp
