#include <algorithm>
#include <cctype>

#include "ranksets/mslsp.hpp"

namespace ranksets::mslsp {

namespace {

struct PropNode {
  enum class Kind : uint8_t { True, False, Literal, And, Or };
  Kind kind = Kind::True;
  Lit lit = 0;
  std::vector<PropNode> kids;

  static PropNode constant(bool b) {
    PropNode n;
    n.kind = b ? Kind::True : Kind::False;
    return n;
  }
  static PropNode literal(Lit l) {
    PropNode n;
    n.kind = Kind::Literal;
    n.lit = l;
    return n;
  }
};

struct GroundEnv {
  std::vector<std::pair<int, uint32_t>> vals;
  uint32_t lookup(int id) const {
    for (auto it = vals.rbegin(); it != vals.rend(); ++it)
      if (it->first == id) return it->second;
    throw std::invalid_argument("cannot ground an open formula");
  }
};

uint32_t eval_ground_term(const Term& t, const GroundEnv& env) {
  switch (t.kind) {
    case Term::Kind::Var:
      return env.lookup(t.var_id);
    case Term::Kind::Union:
      return eval_ground_term(t.args[0], env) | eval_ground_term(t.args[1], env);
    case Term::Kind::Sing:
      return 1u << eval_ground_term(t.args[0], env);
    case Term::Kind::ReplaceInBy: {
      uint32_t a = eval_ground_term(t.args[0], env);
      uint32_t set = eval_ground_term(t.args[1], env);
      uint32_t b = eval_ground_term(t.args[2], env);
      return (set & ~(1u << a)) | (1u << b);
    }
  }
  return 0;
}

PropNode expand_atom(const Formula& f, const Domain& d, const GroundEnv& env,
                     bool positive) {
  auto arg = [&](size_t i) { return eval_ground_term(f.terms[i], env); };
  switch (f.atom) {
    case Formula::Atom::In:
      return PropNode::constant(set_member(static_cast<int>(arg(0)), arg(1)) == positive);
    case Formula::Atom::Subseteq:
      return PropNode::constant(set_subseteq(arg(0), arg(1)) == positive);
    case Formula::Atom::Disjoint:
      return PropNode::constant(set_disjoint(arg(0), arg(1)) == positive);
    case Formula::Atom::EvenCard:
      return PropNode::constant(set_even_card(arg(0)) == positive);
    case Formula::Atom::EqualCard:
      return PropNode::constant(set_equal_card(arg(0), arg(1)) == positive);
    case Formula::Atom::Eq:
      return PropNode::constant((arg(0) == arg(1)) == positive);
    case Formula::Atom::WPref: {
      int v = d.var_w(arg(0), arg(1));
      return PropNode::literal(positive ? v : -v);
    }
    case Formula::Atom::LPref: {
      int v = d.var_l(static_cast<int>(arg(0)), static_cast<int>(arg(1)));
      return PropNode::literal(positive ? v : -v);
    }
  }
  return PropNode::constant(false);
}

// Expands a normalized formula; constant folds as it goes.
PropNode expand(const Formula& f, const Domain& d, GroundEnv& env) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return expand_atom(f, d, env, true);
    case Formula::Kind::Not:
      return expand_atom(f.kids[0], d, env, false);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool conj = f.kind == Formula::Kind::And || f.kind == Formula::Kind::Forall;
      PropNode out;
      out.kind = conj ? PropNode::Kind::And : PropNode::Kind::Or;
      auto absorb = [&](PropNode&& kid) -> bool {
        // Returns true if the whole node collapsed to a constant.
        if (kid.kind == PropNode::Kind::True) return !conj;
        if (kid.kind == PropNode::Kind::False) return conj;
        if (kid.kind == out.kind) {
          for (PropNode& g : kid.kids) out.kids.push_back(std::move(g));
        } else {
          out.kids.push_back(std::move(kid));
        }
        return false;
      };
      bool collapsed = false;
      if (f.kind == Formula::Kind::And || f.kind == Formula::Kind::Or) {
        for (const Formula& k : f.kids) {
          if (absorb(expand(k, d, env))) {
            collapsed = true;
            break;
          }
        }
      } else {
        uint32_t lo = f.q_sort == Sort::Element ? 0 : 1;
        uint32_t hi = f.q_sort == Sort::Element ? static_cast<uint32_t>(d.size() - 1)
                                                : static_cast<uint32_t>(d.num_sets());
        for (uint32_t v = lo; v <= hi; ++v) {
          env.vals.emplace_back(f.var_id, v);
          PropNode kid = expand(f.kids[0], d, env);
          env.vals.pop_back();
          if (absorb(std::move(kid))) {
            collapsed = true;
            break;
          }
        }
      }
      if (collapsed) return PropNode::constant(!conj);
      if (out.kids.empty()) return PropNode::constant(conj);
      if (out.kids.size() == 1) return std::move(out.kids[0]);
      return out;
    }
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      throw std::logic_error("ground() expects a normalized formula");
  }
  return PropNode::constant(false);
}

// Exact distributed size; saturates at `cap`.
void distributed_size(const PropNode& n, double cap, double& clauses, double& literals) {
  switch (n.kind) {
    case PropNode::Kind::True:
      clauses = 0;
      literals = 0;
      return;
    case PropNode::Kind::False:
      clauses = 1;
      literals = 0;
      return;
    case PropNode::Kind::Literal:
      clauses = 1;
      literals = 1;
      return;
    case PropNode::Kind::And: {
      clauses = 0;
      literals = 0;
      for (const PropNode& k : n.kids) {
        double c = 0, l = 0;
        distributed_size(k, cap, c, l);
        clauses = std::min(cap, clauses + c);
        literals = std::min(cap, literals + l);
      }
      return;
    }
    case PropNode::Kind::Or: {
      clauses = 1;
      literals = 0;
      for (const PropNode& k : n.kids) {
        double c = 0, l = 0;
        distributed_size(k, cap, c, l);
        // Concatenating one clause from each kid: literal count distributes.
        literals = std::min(cap, literals * c + l * clauses);
        clauses = std::min(cap, clauses * c);
      }
      return;
    }
  }
}

void distribute(const PropNode& n, std::vector<std::vector<Lit>>& out) {
  switch (n.kind) {
    case PropNode::Kind::True:
      out.clear();
      return;
    case PropNode::Kind::False:
      out.assign(1, {});
      return;
    case PropNode::Kind::Literal:
      out.assign(1, {n.lit});
      return;
    case PropNode::Kind::And: {
      out.clear();
      for (const PropNode& k : n.kids) {
        std::vector<std::vector<Lit>> sub;
        distribute(k, sub);
        for (auto& c : sub) out.push_back(std::move(c));
      }
      return;
    }
    case PropNode::Kind::Or: {
      out.assign(1, {});
      for (const PropNode& k : n.kids) {
        std::vector<std::vector<Lit>> sub;
        distribute(k, sub);
        std::vector<std::vector<Lit>> next;
        next.reserve(out.size() * sub.size());
        for (const auto& a : out)
          for (const auto& b : sub) {
            std::vector<Lit> c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        out = std::move(next);
      }
      return;
    }
  }
}

// Polarity-aware definitional conversion: auxiliary variables occur
// positively only, so every model of the original extends to the auxiliaries
// and projections are preserved.
class Definitional {
 public:
  Definitional(CnfFormula& out, int first_aux) : out_(out), next_(first_aux) {}

  void assert_top(const PropNode& n) {
    switch (n.kind) {
      case PropNode::Kind::True:
        return;
      case PropNode::Kind::False:
        out_.add_clause({});
        return;
      case PropNode::Kind::Literal:
        out_.add_clause({n.lit});
        return;
      case PropNode::Kind::And:
        for (const PropNode& k : n.kids) assert_top(k);
        return;
      case PropNode::Kind::Or: {
        std::vector<Lit> clause;
        for (const PropNode& k : n.kids) clause.push_back(repr(k));
        out_.add_clause(clause);
        return;
      }
    }
  }

  int num_vars() const { return next_ - 1; }

 private:
  Lit repr(const PropNode& n) {
    switch (n.kind) {
      case PropNode::Kind::Literal:
        return n.lit;
      case PropNode::Kind::And: {
        Lit a = fresh();
        for (const PropNode& k : n.kids) out_.add_clause({-a, repr(k)});
        return a;
      }
      case PropNode::Kind::Or: {
        std::vector<Lit> clause{0};
        Lit a = fresh();
        clause[0] = -a;
        for (const PropNode& k : n.kids) clause.push_back(repr(k));
        out_.add_clause(clause);
        return a;
      }
      case PropNode::Kind::True:
      case PropNode::Kind::False:
        throw std::logic_error("constants are folded before conversion");
    }
    return 0;
  }

  Lit fresh() { return next_++; }

  CnfFormula& out_;
  Lit next_;
};

}  // namespace

CnfFormula ground(const Formula& f, const Domain& d, const GroundOptions& opts) {
  Formula norm = normalize(f);
  GroundEnv env;
  PropNode root = expand(norm, d, env);

  CnfFormula out(d.num_vars());
  double cap = static_cast<double>(opts.max_direct_literals) + 1.0;
  double clauses = 0, literals = 0;
  distributed_size(root, cap, clauses, literals);
  if (literals <= static_cast<double>(opts.max_direct_literals)) {
    std::vector<std::vector<Lit>> cnf;
    distribute(root, cnf);
    for (const auto& c : cnf) out.add_clause(c);
  } else {
    Definitional def(out, d.num_vars() + 1);
    def.assert_top(root);
    out.set_num_vars(std::max(out.num_vars(), def.num_vars()));
  }
  return out;
}

namespace {

struct BuiltinEntry {
  std::string_view name;
  std::string_view text;
};

#include "mslsp_builtin_sources.inc"

std::string stem_for(AxiomId a) {
  std::string s(axiom_name(a));
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string_view catalog_source(AxiomId a) {
  std::string stem = stem_for(a);
  for (const BuiltinEntry& e : kBuiltinSources)
    if (e.name == stem) return e.text;
  throw std::logic_error("missing built-in source for " + std::string(axiom_name(a)));
}

std::vector<NamedSource> builtin_sources() {
  std::vector<NamedSource> out;
  for (const BuiltinEntry& e : kBuiltinSources) out.push_back({e.name, e.text});
  return out;
}

AxiomSet esg_certified_axioms() {
  static const AxiomSet mask = [] {
    AxiomSet m = 0;
    for (int i = 0; i < kNumAxioms; ++i) {
      auto id = static_cast<AxiomId>(i);
      EsgVerdict v = classify_esg(parse(catalog_source(id)));
      if (v.is_esg) m |= axiom_bit(id);
    }
    return m;
  }();
  return mask;
}

}  // namespace ranksets::mslsp
