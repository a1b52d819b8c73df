#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ranksets/axioms.hpp"
#include "ranksets/core.hpp"

namespace ranksets::mslsp {

// Two-sorted language over elements and sets of elements.
enum class Sort : uint8_t { Element, Set };

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct ParseError : std::runtime_error {
  ParseError(SourcePos p, const std::string& msg)
      : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.col) +
                           ": " + msg),
        pos(p) {}
  SourcePos pos;
};

struct Term {
  enum class Kind : uint8_t { Var, Union, Sing, ReplaceInBy };
  Kind kind = Kind::Var;
  Sort sort = Sort::Element;
  int var_id = -1;       // unique binder id (Var only)
  std::string var_name;  // display name (Var only)
  std::vector<Term> args;
};

struct Formula {
  enum class Kind : uint8_t { Atom, Not, And, Or, Implies, Iff, Forall, Exists };
  enum class Atom : uint8_t {
    In,
    Subseteq,
    Disjoint,
    EvenCard,
    EqualCard,
    WPref,
    LPref,
    Eq,
  };

  Kind kind = Kind::Atom;
  Atom atom = Atom::In;
  std::vector<Term> terms;    // atom arguments
  std::vector<Formula> kids;  // connective / quantifier bodies
  Sort q_sort = Sort::Element;
  int var_id = -1;
  std::string var_name;
  SourcePos pos;
};

// Parses the textual rendering of the language.  Bound variables receive
// unique ids; wstrict/lstrict sugar is expanded.  Throws ParseError with
// line/column on lexical, arity, sort, or scoping problems.
Formula parse(std::string_view text);

// Negation normal form: ->/<-> eliminated, negation pushed onto atoms,
// quantifiers dualized.  Logically equivalent to the input and idempotent.
Formula normalize(const Formula& f);

struct EsgVerdict {
  bool is_esg = false;
  std::string reason;  // offending subformula when !is_esg
};

// Syntactic check on the normal form: every element-sort existential must be
// guarded by a membership conjunct on its own variable, and no set-sort
// existential may occur.  Sound for preservation in substructures, not
// complete for semantic ESG-equivalence.
EsgVerdict classify_esg(const Formula& f);

struct GroundOptions {
  // Direct distribution is used while the distributed size stays below this
  // many literals; beyond it the grounder switches to a polarity-aware
  // definitional transformation with fresh variables above the l/w range.
  size_t max_direct_literals = 1'000'000;
};

// Expands quantifiers over the finite domain, folds the ground predicates,
// maps surviving atoms to l/w variables and converts to CNF.  The models of
// the result, projected to the l/w variables, are exactly the structures
// satisfying the formula.  Throws std::invalid_argument on open formulas.
CnfFormula ground(const Formula& f, const Domain& d, const GroundOptions& opts = {});

// Direct evaluation of a closed formula over a finite structure.
bool eval_formula(const Formula& f, const ElementOrder& ord, const SetRelation& rel);

std::string to_string(const Formula& f);
std::string to_string(const Term& t);

// Built-in sources: the 20 catalog axioms plus sample formulas.
std::string_view catalog_source(AxiomId a);

struct NamedSource {
  std::string_view name;
  std::string_view text;
};
// All built-in sources by file stem (catalog + "pb" + "three_distinct").
std::vector<NamedSource> builtin_sources();

// Runs the classifier over every catalog source and returns the mask of
// axioms whose sources are ESG; used to gate cross-size pruning.
AxiomSet esg_certified_axioms();

}  // namespace ranksets::mslsp
