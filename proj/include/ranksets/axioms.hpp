#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranksets/core.hpp"

namespace ranksets {

// The 20-axiom catalog, in report column order.  LIN_E constrains the element
// order; all others constrain the set relation (some conditionally on the
// element order).
enum class AxiomId : int {
  LIN_E = 0,
  REFL_S,
  COMPL_S,
  TRANS_S,
  EXT,
  SDOM,
  GF1,
  GF2,
  IND,
  STRICT_IND,
  SUA_V,
  SUA_P,
  S_TOP_MON,
  S_BOT_MON,
  TOP_IND,
  BOT_IND,
  DIS_IND,
  INT_IND,
  EVEN_EXT,
  MC,
};

inline constexpr int kNumAxioms = 20;

// Subset of the catalog as a bit mask in AxiomId order.
using AxiomSet = uint32_t;

inline constexpr AxiomSet kFullAxiomSet = (AxiomSet{1} << kNumAxioms) - 1;

inline constexpr AxiomSet axiom_bit(AxiomId a) { return AxiomSet{1} << static_cast<int>(a); }
inline constexpr bool axiom_in(AxiomSet s, AxiomId a) { return (s >> static_cast<int>(a)) & 1u; }

std::string_view axiom_name(AxiomId a);

// Report column spelling (e.g. "SUAv", "strictIND").
std::string_view axiom_column_name(AxiomId a);

// Accepts the canonical names above plus the report column spellings
// (e.g. "SUAv", "strictIND", "TRANSs"), case-insensitively and ignoring
// underscores.
std::optional<AxiomId> axiom_from_name(std::string_view name);

// Comma-separated list, or "all"; throws std::invalid_argument naming the
// unknown axiom otherwise.
AxiomSet parse_axiom_list(std::string_view text);

std::string axiom_set_to_string(AxiomSet s);
std::vector<AxiomId> axiom_set_members(AxiomSet s);

// Swaps each axiom for its mirror image under reversal of the element order
// (GF1<->GF2, SUA_V<->SUA_P, S_TOP_MON<->S_BOT_MON, TOP_IND<->BOT_IND).
// MC has no mirror in the catalog and is left in place.
AxiomSet dual_axiom_set(AxiomSet s);

struct ProblemInstance {
  AxiomSet axioms;
  int n;
};

// CNF over the variables of Domain(n) whose models, projected to the l/w
// variables, are exactly the relation pairs satisfying the axiom.  Clauses
// follow the plain quantifier-expansion scheme: universal quantifiers become
// conjunctions over codes, ground side conditions are evaluated away, strict
// preferences expand to w(A,B) & ~w(B,A), and conjunctive consequents are
// distributed without auxiliary variables.
CnfFormula clauses_for(AxiomId a, const Domain& d);

// Concatenation of clauses_for over all members, shared variable numbering.
CnfFormula instance_cnf(const ProblemInstance& p);

// Expected clause count of clauses_for(a, Domain(n)); the generators are
// tested against these closed forms.
size_t clause_count_formula(AxiomId a, int n);

// Direct evaluation of the axiom statement over decoded relations; the
// independent counterpart of clauses_for, no CNF involved.
bool holds(AxiomId a, const ElementOrder& ord, const SetRelation& rel);

// A >= B  iff  min(A) > min(B), or min(A) = min(B) and max(A) >= max(B).
// Requires ord linear.
SetRelation minmax_order(const Domain& d, const ElementOrder& ord);

// Named weak orders on a 4-element domain, each satisfying exactly three of
// {SDOM, IND, SUA_V, S_TOP_MON}; used as evaluator fixtures.
struct WitnessFixture {
  std::string name;
  ElementOrder ord;
  SetRelation rel;
};

std::array<WitnessFixture, 4> fixture_witnesses();

}  // namespace ranksets
