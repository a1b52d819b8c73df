#pragma once

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <vector>

namespace ranksets {

// A literal in DIMACS convention: +v for the variable v, -v for its negation.
// Variables are numbered from 1.
using Lit = int32_t;

inline int lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_sign(Lit l) { return l < 0; }

// CNF container: clauses stored back to back in a flat literal buffer.
// A clause is a set of literals; add_clause sorts and deduplicates, but a
// clause may still contain a variable in both polarities.  Quantifier
// expansion of the axioms produces such tautological clauses on degenerate
// index tuples and they are kept so that clause counts match the expansion
// formulas exactly; solvers discard them on load.
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(int num_vars) : num_vars_(num_vars) {}

  int num_vars() const { return num_vars_; }
  void set_num_vars(int n) { num_vars_ = n; }

  size_t num_clauses() const { return offsets_.size(); }
  size_t num_literals() const { return lits_.size(); }

  std::span<const Lit> clause(size_t i) const {
    uint32_t begin = offsets_[i];
    uint32_t end = i + 1 < offsets_.size() ? offsets_[i + 1]
                                           : static_cast<uint32_t>(lits_.size());
    return {lits_.data() + begin, lits_.data() + end};
  }

  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) {
    add_clause(std::span<const Lit>(lits.begin(), lits.end()));
  }

  // Appends all clauses of `other`; variable spaces must agree.
  void append(const CnfFormula& other);

  void reserve(size_t clauses, size_t literals) {
    offsets_.reserve(clauses);
    lits_.reserve(literals);
  }

  bool operator==(const CnfFormula& other) const = default;

 private:
  int num_vars_ = 0;
  std::vector<Lit> lits_;
  std::vector<uint32_t> offsets_;
};

inline bool clause_is_tautology(std::span<const Lit> c) {
  // Literals are sorted by variable, negative polarity first.
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] == -c[i - 1]) return true;
  return false;
}

// True iff the clause is satisfied under a total assignment
// (values[v] in {0,1}, indexed by variable).
inline bool clause_satisfied(std::span<const Lit> c, std::span<const int8_t> values) {
  for (Lit l : c) {
    int8_t v = values[static_cast<size_t>(lit_var(l))];
    if (l > 0 ? v == 1 : v == 0) return true;
  }
  return false;
}

}  // namespace ranksets
