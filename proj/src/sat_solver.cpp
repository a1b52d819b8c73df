#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <vector>

#include "ranksets/sat.hpp"

namespace ranksets::sat {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

void StringDratWriter::add(std::span<const Lit> clause) {
  for (Lit l : clause) {
    buf_ += std::to_string(l);
    buf_ += ' ';
  }
  buf_ += "0\n";
}

void StringDratWriter::remove(std::span<const Lit> clause) {
  buf_ += "d ";
  for (Lit l : clause) {
    buf_ += std::to_string(l);
    buf_ += ' ';
  }
  buf_ += "0\n";
}

namespace {

// Internal literal: variable v (0-based) as v*2, its negation as v*2+1.
using ILit = int32_t;
inline ILit make_ilit(int var0, bool neg) { return var0 * 2 + (neg ? 1 : 0); }
inline ILit ineg(ILit p) { return p ^ 1; }
inline int ivar(ILit p) { return p >> 1; }
inline ILit from_external(Lit l) { return make_ilit(lit_var(l) - 1, l < 0); }
inline Lit to_external(ILit p) { return (ivar(p) + 1) * (p & 1 ? -1 : 1); }

constexpr uint32_t kNoRef = UINT32_MAX;

// Clause arena: [size | learnt-bit][activity][lits...]
class Arena {
 public:
  uint32_t alloc(std::span<const ILit> lits, bool learnt) {
    uint32_t ref = static_cast<uint32_t>(data_.size());
    data_.push_back(static_cast<uint32_t>(lits.size()) << 1 | (learnt ? 1 : 0));
    data_.push_back(0);  // activity as float bits
    for (ILit l : lits) data_.push_back(static_cast<uint32_t>(l));
    return ref;
  }
  uint32_t size_of(uint32_t ref) const { return data_[ref] >> 1; }
  bool learnt(uint32_t ref) const { return data_[ref] & 1; }
  ILit* lits(uint32_t ref) { return reinterpret_cast<ILit*>(&data_[ref + 2]); }
  const ILit* lits(uint32_t ref) const {
    return reinterpret_cast<const ILit*>(&data_[ref + 2]);
  }
  float activity(uint32_t ref) const {
    float f;
    std::memcpy(&f, &data_[ref + 1], 4);
    return f;
  }
  void set_activity(uint32_t ref, float a) { std::memcpy(&data_[ref + 1], &a, 4); }
  size_t bytes() const { return data_.size() * 4; }

 private:
  std::vector<uint32_t> data_;
};

struct Watcher {
  uint32_t cref;
  ILit blocker;
};

// Max-activity heap over variables, ties broken by variable index so runs are
// reproducible.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  void grow(int nvars) { pos_.resize(nvars, -1); }
  bool contains(int v) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }
  int pop() {
    int v = heap_[0];
    heap_[0] = heap_.back();
    pos_[heap_[0]] = 0;
    heap_.pop_back();
    pos_[v] = -1;
    if (!heap_.empty()) down(0);
    return v;
  }
  void bumped(int v) {
    if (contains(v)) up(pos_[v]);
  }

 private:
  bool before(int a, int b) const {
    if (act_[a] != act_[b]) return act_[a] > act_[b];
    return a < b;
  }
  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int p = (i - 1) >> 1;
      if (!before(v, heap_[p])) break;
      heap_[i] = heap_[p];
      pos_[heap_[i]] = i;
      i = p;
    }
    heap_[i] = v;
    pos_[v] = i;
  }
  void down(int i) {
    int v = heap_[i];
    size_t n = heap_.size();
    while (true) {
      size_t l = 2 * static_cast<size_t>(i) + 1;
      if (l >= n) break;
      size_t c = l + 1 < n && before(heap_[l + 1], heap_[l]) ? l + 1 : l;
      if (!before(heap_[c], v)) break;
      heap_[i] = heap_[c];
      pos_[heap_[i]] = i;
      i = static_cast<int>(c);
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

int64_t luby(int64_t x) {
  // Luby sequence 1,1,2,1,1,2,4,...
  int64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x %= size;
  }
  return int64_t{1} << seq;
}

class Cdcl {
 public:
  Cdcl(int nvars, const SolverConfig& cfg, DratWriter* drat)
      : cfg_(cfg),
        drat_(drat),
        nvars_(nvars),
        value_(nvars, -1),
        level_(nvars, 0),
        reason_(nvars, kNoRef),
        phase_(nvars, 0),
        activity_(nvars, 0.0),
        seen_(nvars, 0),
        heap_(activity_),
        watches_(static_cast<size_t>(nvars) * 2) {
    heap_.grow(nvars);
    for (int v = 0; v < nvars; ++v) heap_.insert(v);
  }

  // Returns false on an immediate top-level contradiction.
  bool add_clause(std::span<const Lit> ext) {
    if (!ok_) return false;
    // Clauses may arrive between solve calls; simplification below is only
    // valid against top-level assignments.
    backtrack(0);
    if (clause_is_tautology(ext)) return true;
    tmp_.clear();
    for (Lit l : ext) {
      if (l == 0 || lit_var(l) > nvars_)
        throw std::invalid_argument("malformed CNF: literal " + std::to_string(l) +
                                    " outside the declared variable range");
      ILit p = from_external(l);
      if (value_of(p) == 1 && level_[ivar(p)] == 0) return true;  // already satisfied
      if (value_of(p) == 0 && level_[ivar(p)] == 0) continue;     // already false
      tmp_.push_back(p);
    }
    if (tmp_.empty()) {
      mark_unsat();
      return false;
    }
    if (tmp_.size() == 1) {
      if (value_of(tmp_[0]) == 0) {
        mark_unsat();
        return false;
      }
      if (value_of(tmp_[0]) == -1) enqueue(tmp_[0], kNoRef);
      if (propagate() != kNoRef) {
        mark_unsat();
        return false;
      }
      return true;
    }
    uint32_t cr = arena_.alloc(tmp_, false);
    attach(cr);
    ++num_original_;
    return true;
  }

  // Decides the clause database under the given assumption literals; state
  // other than learned clauses and activities is reset per call.  A conflict
  // at level zero marks the database itself unsatisfiable for good; a failed
  // assumption only fails this call.
  Status solve(Verdict& out, std::span<const ILit> assumps) {
    if (!ok_) return Status::Unsat;
    backtrack(0);
    const auto start = std::chrono::steady_clock::now();
    int64_t conflicts = 0;
    int64_t restart_no = 0;
    int64_t restart_limit = cfg_.restart_base * luby(restart_no);
    int64_t conflicts_at_restart = 0;
    // Cap the learned database well below huge original databases, or
    // propagation drowns long before the activity-based reduction kicks in.
    double max_learnts = std::max(
        4000.0, std::min(static_cast<double>(num_original_) / 3.0, 60000.0));

    while (true) {
      uint32_t confl = propagate();
      if (confl != kNoRef) {
        ++conflicts;
        if (decision_level() == 0) {
          ok_ = false;
          if (drat_) drat_->add({});
          return Status::Unsat;
        }
        learnt_.clear();
        int bt = analyze(confl);
        backtrack(bt);
        if (learnt_.size() == 1) {
          enqueue(learnt_[0], kNoRef);
        } else {
          uint32_t cr = arena_.alloc(learnt_, true);
          attach(cr);
          learnts_.push_back(cr);
          bump_clause(cr);
          enqueue(learnt_[0], cr);
        }
        if (drat_) {
          ext_tmp_.clear();
          for (ILit p : learnt_) ext_tmp_.push_back(to_external(p));
          drat_->add(ext_tmp_);
        }
        decay_activities();
        if (cfg_.conflict_budget >= 0 && conflicts >= cfg_.conflict_budget) {
          out.reason = UnknownReason::ConflictBudget;
          return Status::Unknown;
        }
        if (cfg_.time_budget_ms >= 0 && (conflicts & 255) == 0) {
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
          if (ms >= cfg_.time_budget_ms) {
            out.reason = UnknownReason::TimeBudget;
            return Status::Unknown;
          }
        }
        if (cfg_.memory_cap_bytes && arena_.bytes() > cfg_.memory_cap_bytes) {
          out.reason = UnknownReason::MemoryCap;
          return Status::Unknown;
        }
      } else {
        if (conflicts - conflicts_at_restart >= restart_limit) {
          conflicts_at_restart = conflicts;
          restart_limit = cfg_.restart_base * luby(++restart_no);
          // Voluntary restarts keep the assumption levels: re-propagating the
          // selectors would revisit their (large, migrating) watch lists on
          // every restart.
          int keep = std::min(decision_level(), static_cast<int>(assumps.size()));
          backtrack(keep);
          if (static_cast<double>(learnts_.size()) > max_learnts) {
            reduce_db();
            max_learnts *= 1.1;
          }
          continue;
        }
        if (static_cast<size_t>(decision_level()) < assumps.size()) {
          // Assumption literals fill the first decision levels so the level
          // index stays aligned with the assumption index across restarts.
          ILit p = assumps[static_cast<size_t>(decision_level())];
          int v = value_of(p);
          if (v == 0) return Status::Unsat;  // failed assumption: this call only
          trail_lim_.push_back(static_cast<int>(trail_.size()));
          if (v == -1) enqueue(p, kNoRef);
          continue;
        }
        ILit next = decide();
        if (next < 0) {
          extract_model(out);
          return Status::Sat;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, kNoRef);
      }
    }
  }

 private:
  int value_of(ILit p) const {
    int8_t v = value_[ivar(p)];
    if (v < 0) return -1;
    return (p & 1) ? 1 - v : v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void mark_unsat() {
    ok_ = false;
    if (drat_) drat_->add({});
  }

  void attach(uint32_t cr) {
    const ILit* ls = arena_.lits(cr);
    watches_[ineg(ls[0])].push_back({cr, ls[1]});
    watches_[ineg(ls[1])].push_back({cr, ls[0]});
  }

  void enqueue(ILit p, uint32_t from) {
    int v = ivar(p);
    value_[v] = (p & 1) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(p);
  }

  uint32_t propagate() {
    while (qhead_ < trail_.size()) {
      ILit p = trail_[qhead_++];
      auto& ws = watches_[p];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value_of(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        uint32_t cr = w.cref;
        ILit* ls = arena_.lits(cr);
        ILit false_lit = ineg(p);
        if (ls[0] == false_lit) std::swap(ls[0], ls[1]);
        // ls[1] == false_lit now
        if (value_of(ls[0]) == 1) {
          ws[j++] = {cr, ls[0]};
          ++i;
          continue;
        }
        uint32_t size = arena_.size_of(cr);
        uint32_t k = 2;
        for (; k < size; ++k)
          if (value_of(ls[k]) != 0) break;
        if (k < size) {
          std::swap(ls[1], ls[k]);
          watches_[ineg(ls[1])].push_back({cr, ls[0]});
          ++i;
          continue;
        }
        ws[j++] = {cr, ls[0]};
        ++i;
        if (value_of(ls[0]) == 0) {
          // Conflict: keep the remaining watchers and bail out.
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return cr;
        }
        enqueue(ls[0], cr);
      }
      ws.resize(j);
    }
    return kNoRef;
  }

  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.bumped(v);
  }

  void bump_clause(uint32_t cr) {
    float a = arena_.activity(cr) + static_cast<float>(cla_inc_);
    arena_.set_activity(cr, a);
    if (a > 1e20f) {
      for (uint32_t c : learnts_) arena_.set_activity(c, arena_.activity(c) * 1e-20f);
      cla_inc_ *= 1e-20;
    }
  }

  void decay_activities() {
    var_inc_ /= cfg_.var_decay;
    cla_inc_ /= 0.999;
  }

  // First-UIP conflict analysis; fills learnt_ (asserting literal first) and
  // returns the backtrack level.
  int analyze(uint32_t confl) {
    learnt_.push_back(0);  // slot for the asserting literal
    int pathc = 0;
    ILit p = -1;
    size_t index = trail_.size();
    do {
      const ILit* ls = arena_.lits(confl);
      uint32_t size = arena_.size_of(confl);
      if (arena_.learnt(confl)) bump_clause(confl);
      for (uint32_t k = (p == -1 ? 0 : 1); k < size; ++k) {
        ILit q = ls[k];
        int v = ivar(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] == decision_level())
          ++pathc;
        else
          learnt_.push_back(q);
      }
      while (!seen_[ivar(trail_[--index])]) {
      }
      p = trail_[index];
      confl = reason_[ivar(p)];
      seen_[ivar(p)] = 0;
      --pathc;
    } while (pathc > 0);
    learnt_[0] = ineg(p);

    to_clear_.clear();
    for (ILit q : learnt_) to_clear_.push_back(ivar(q));

    // Clause minimization: drop literals whose reason chains stay within the
    // clause (recursively).
    uint32_t levels = 0;
    for (size_t i = 1; i < learnt_.size(); ++i)
      levels |= 1u << (level_[ivar(learnt_[i])] & 31);
    size_t keep = 1;
    for (size_t i = 1; i < learnt_.size(); ++i) {
      int v = ivar(learnt_[i]);
      if (reason_[v] == kNoRef || !lit_redundant(learnt_[i], levels))
        learnt_[keep++] = learnt_[i];
    }
    learnt_.resize(keep);

    int bt = 0;
    if (learnt_.size() > 1) {
      size_t max_i = 1;
      for (size_t i = 2; i < learnt_.size(); ++i)
        if (level_[ivar(learnt_[i])] > level_[ivar(learnt_[max_i])]) max_i = i;
      std::swap(learnt_[1], learnt_[max_i]);
      bt = level_[ivar(learnt_[1])];
    }
    for (int v : to_clear_) seen_[v] = 0;
    return bt;
  }

  // A literal is redundant if every path through its reason chain ends in
  // literals already in the learnt clause or fixed at level 0.  `levels` is
  // the bit set of decision levels in the clause; a literal from any other
  // level can never be redundant, which prunes the walk early.
  bool lit_redundant(ILit q, uint32_t levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(q);
    size_t top = to_clear_.size();
    while (!analyze_stack_.empty()) {
      ILit p = analyze_stack_.back();
      analyze_stack_.pop_back();
      uint32_t r = reason_[ivar(p)];
      const ILit* ls = arena_.lits(r);
      uint32_t size = arena_.size_of(r);
      for (uint32_t k = 0; k < size; ++k) {
        int v = ivar(ls[k]);
        if (v == ivar(p) || seen_[v] || level_[v] == 0) continue;
        if (reason_[v] == kNoRef || !(levels >> (level_[v] & 31) & 1u)) {
          // Not removable: undo the marks made during this walk.
          for (size_t i = top; i < to_clear_.size(); ++i) seen_[to_clear_[i]] = 0;
          to_clear_.resize(top);
          return false;
        }
        seen_[v] = 1;
        to_clear_.push_back(v);
        analyze_stack_.push_back(ls[k]);
      }
    }
    return true;
  }

  void backtrack(int target) {
    if (decision_level() <= target) return;
    int limit = trail_lim_[target];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= limit; --i) {
      int v = ivar(trail_[static_cast<size_t>(i)]);
      phase_[v] = value_[v];
      value_[v] = -1;
      reason_[v] = kNoRef;
      heap_.insert(v);
    }
    trail_.resize(static_cast<size_t>(limit));
    trail_lim_.resize(static_cast<size_t>(target));
    qhead_ = trail_.size();
  }

  ILit decide() {
    while (!heap_.empty()) {
      int v = heap_.pop();
      if (value_[v] < 0) return make_ilit(v, phase_[v] == 0);
    }
    return -1;
  }

  void reduce_db() {
    // Called at decision level 0; unit reasons are all top-level, so no
    // learnt clause is locked.
    std::vector<uint32_t> keep;
    std::vector<uint32_t> sorted = learnts_;
    std::sort(sorted.begin(), sorted.end(), [&](uint32_t a, uint32_t b) {
      if (arena_.activity(a) != arena_.activity(b))
        return arena_.activity(a) > arena_.activity(b);
      return a < b;
    });
    size_t limit = sorted.size() / 2;
    for (size_t i = 0; i < sorted.size(); ++i) {
      uint32_t cr = sorted[i];
      if (arena_.size_of(cr) <= 2 || i < limit || locked(cr)) {
        keep.push_back(cr);
      } else {
        detach(cr);
        if (drat_) {
          ext_tmp_.clear();
          const ILit* ls = arena_.lits(cr);
          for (uint32_t k = 0; k < arena_.size_of(cr); ++k)
            ext_tmp_.push_back(to_external(ls[k]));
          drat_->remove(ext_tmp_);
        }
      }
    }
    std::sort(keep.begin(), keep.end());
    learnts_ = std::move(keep);
  }

  bool locked(uint32_t cr) const {
    const ILit* ls = arena_.lits(cr);
    return reason_[ivar(ls[0])] == cr && value_of(ls[0]) == 1;
  }

  void detach(uint32_t cr) {
    const ILit* ls = arena_.lits(cr);
    for (int k = 0; k < 2; ++k) {
      auto& ws = watches_[ineg(ls[k])];
      for (size_t i = 0; i < ws.size(); ++i)
        if (ws[i].cref == cr) {
          ws[i] = ws.back();
          ws.pop_back();
          break;
        }
    }
  }

  void extract_model(Verdict& out) {
    out.model.assign(static_cast<size_t>(nvars_) + 1, 0);
    for (int v = 0; v < nvars_; ++v)
      out.model[static_cast<size_t>(v) + 1] = value_[v] == 1 ? 1 : 0;
  }

 public:
  void set_config(const SolverConfig& cfg) { cfg_ = cfg; }
  int num_vars() const { return nvars_; }

 private:
  SolverConfig cfg_;
  DratWriter* drat_;
  int nvars_;
  bool ok_ = true;
  Arena arena_;
  size_t num_original_ = 0;
  std::vector<int8_t> value_;
  std::vector<int> level_;
  std::vector<uint32_t> reason_;
  std::vector<int8_t> phase_;
  std::vector<double> activity_;
  std::vector<int8_t> seen_;
  VarHeap heap_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<ILit> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<uint32_t> learnts_;
  std::vector<ILit> learnt_;
  std::vector<ILit> tmp_;
  std::vector<Lit> ext_tmp_;
  std::vector<int> to_clear_;
  std::vector<ILit> analyze_stack_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
};

}  // namespace

Verdict solve_parts(std::span<const CnfFormula* const> parts, int num_vars,
                    const SolverConfig& cfg, DratWriter* drat) {
  Verdict out;
  Cdcl solver(num_vars, cfg, drat);
  bool ok = true;
  for (const CnfFormula* f : parts) {
    if (f->num_vars() > num_vars)
      throw std::invalid_argument("formula exceeds declared variable count");
    for (size_t i = 0; i < f->num_clauses() && ok; ++i) ok = solver.add_clause(f->clause(i));
    if (!ok) break;
  }
  if (!ok) {
    out.status = Status::Unsat;
    return out;
  }
  out.status = solver.solve(out, {});
  if (out.status == Status::Sat) {
    for (const CnfFormula* f : parts)
      if (!model_satisfies(*f, out.model))
        throw std::logic_error("internal error: model fails verification");
  }
  return out;
}

struct IncrementalSolver::Impl {
  Cdcl solver;
  explicit Impl(int num_vars) : solver(num_vars, SolverConfig{}, nullptr) {}
};

IncrementalSolver::IncrementalSolver(int num_vars) : impl_(new Impl(num_vars)) {}
IncrementalSolver::~IncrementalSolver() = default;
IncrementalSolver::IncrementalSolver(IncrementalSolver&&) noexcept = default;
IncrementalSolver& IncrementalSolver::operator=(IncrementalSolver&&) noexcept = default;

void IncrementalSolver::add_clause(std::span<const Lit> clause) {
  impl_->solver.add_clause(clause);
}

void IncrementalSolver::add_formula(const CnfFormula& f, Lit selector) {
  if (f.num_vars() > impl_->solver.num_vars())
    throw std::invalid_argument("formula exceeds declared variable count");
  std::vector<Lit> buf;
  for (size_t i = 0; i < f.num_clauses(); ++i) {
    auto c = f.clause(i);
    if (selector == 0) {
      impl_->solver.add_clause(c);
    } else {
      buf.assign(c.begin(), c.end());
      buf.push_back(-selector);
      impl_->solver.add_clause(buf);
    }
  }
}

Verdict IncrementalSolver::solve(std::span<const Lit> assumptions,
                                 const SolverConfig& cfg) {
  impl_->solver.set_config(cfg);
  std::vector<ILit> assumps;
  assumps.reserve(assumptions.size());
  for (Lit l : assumptions) assumps.push_back(from_external(l));
  Verdict out;
  out.status = impl_->solver.solve(out, assumps);
  return out;
}

Verdict solve(const CnfFormula& f, const SolverConfig& cfg, DratWriter* drat) {
  const CnfFormula* parts[] = {&f};
  return solve_parts(parts, f.num_vars(), cfg, drat);
}

bool model_satisfies(const CnfFormula& f, const Assignment& model) {
  if (model.size() < static_cast<size_t>(f.num_vars()) + 1) return false;
  for (size_t i = 0; i < f.num_clauses(); ++i)
    if (!clause_satisfied(f.clause(i), model)) return false;
  return true;
}

}  // namespace ranksets::sat
