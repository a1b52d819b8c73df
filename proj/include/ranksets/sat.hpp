#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ranksets/core.hpp"

namespace ranksets::sat {

enum class Status : uint8_t { Sat, Unsat, Unknown };

enum class UnknownReason : uint8_t { None, ConflictBudget, TimeBudget, MemoryCap };

struct Verdict {
  Status status = Status::Unknown;
  UnknownReason reason = UnknownReason::None;
  // Total over [1, num_vars] iff status == Sat.
  Assignment model;
};

std::string_view status_name(Status s);

struct SolverConfig {
  // Deterministic budget; -1 = unlimited.
  int64_t conflict_budget = -1;
  // Wall-clock budget; -1 = unlimited.  An Unknown produced by this budget is
  // inherently timing-dependent, unlike the conflict budget.
  int64_t time_budget_ms = -1;
  // 0 = unlimited; checked against the clause arena.
  size_t memory_cap_bytes = 0;
  uint64_t seed = 1;
  double var_decay = 0.95;
  int restart_base = 128;  // Luby unit, in conflicts
};

// Text-format DRAT trace sink: one clause per line, "d" prefix for deletions.
class DratWriter {
 public:
  virtual ~DratWriter() = default;
  virtual void add(std::span<const Lit> clause) = 0;
  virtual void remove(std::span<const Lit> clause) = 0;
};

class StringDratWriter final : public DratWriter {
 public:
  void add(std::span<const Lit> clause) override;
  void remove(std::span<const Lit> clause) override;
  const std::string& text() const { return buf_; }

 private:
  std::string buf_;
};

// Decides a CNF with the built-in CDCL solver (two-watched-literal
// propagation, first-UIP learning, activity branching, Luby restarts).
// Sat models are verified against every clause before being returned.
Verdict solve(const CnfFormula& f, const SolverConfig& cfg = {},
              DratWriter* drat = nullptr);

// Same, over several formulas sharing one variable space, without
// concatenating them first.
Verdict solve_parts(std::span<const CnfFormula* const> parts, int num_vars,
                    const SolverConfig& cfg = {}, DratWriter* drat = nullptr);

// Reusable solver for families of instances over one clause database, decided
// under assumption literals (e.g. per-axiom selector variables).  Learned
// clauses persist across calls, which makes sweeps over many related
// instances far cheaper than one-shot solving.  Verdicts match one-shot
// solving of the clauses that the assumptions enable.
class IncrementalSolver {
 public:
  explicit IncrementalSolver(int num_vars);
  ~IncrementalSolver();
  IncrementalSolver(IncrementalSolver&&) noexcept;
  IncrementalSolver& operator=(IncrementalSolver&&) noexcept;

  void add_clause(std::span<const Lit> clause);
  void add_clause(std::initializer_list<Lit> clause) {
    add_clause(std::span<const Lit>(clause.begin(), clause.end()));
  }
  void add_formula(const CnfFormula& f, Lit selector = 0);  // -selector joins each clause

  // Sat models are total over [1, num_vars]; budgets apply per call.
  Verdict solve(std::span<const Lit> assumptions, const SolverConfig& cfg = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool model_satisfies(const CnfFormula& f, const Assignment& model);

// ---- DIMACS ----

struct DimacsError : std::runtime_error {
  DimacsError(int line, const std::string& msg)
      : std::runtime_error("dimacs:" + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

std::string export_dimacs(const CnfFormula& f);
void write_dimacs(const CnfFormula& f, std::ostream& os);
CnfFormula import_dimacs(std::string_view text);

// ---- external solver subprocess ----

// Writes the instance to a temp file, runs `command <file>`, and parses the
// SAT-competition style output (s-line or bare SATISFIABLE/UNSATISFIABLE plus
// v-lines).  Claimed models are verified; a Sat claim without a checkable
// model is an error.
Verdict run_external_solver(const CnfFormula& f, const std::string& command);

}  // namespace ranksets::sat
