#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ranksets/axioms.hpp"
#include "ranksets/sat.hpp"

namespace ranksets::search {

enum class CellState : uint8_t { Unknown = 0, Possible, Impossible, Timeout };

enum class CellProv : uint8_t {
  None = 0,
  Solved,
  Rule1,  // impossibility carried from the previous domain size (needs ESG)
  Rule2,  // impossibility of a subset at the same size
  Rule3,  // possibility carried from a larger domain size
  Rule4,  // possibility of a superset at the same size
};

std::string_view cell_state_name(CellState s);

struct SearchConfig {
  AxiomSet universe = kFullAxiomSet;
  int min_n = 2;
  int max_n = 4;
  int workers = 1;
  uint64_t seed = 1;
  int64_t conflict_budget = -1;
  int64_t time_budget_ms = -1;
  // Sweep direction flips after this many freshly solved cells; 0 = only at
  // the end of a full sweep.
  uint64_t switch_interval = 4096;
  bool pruning = true;
  std::string checkpoint_path;  // empty = no checkpointing
  // Drop TIMEOUT records when loading a checkpoint so those cells are solved
  // again (e.g. with a larger budget).
  bool retry_timeouts = false;
  // Axioms certified ESG; only sets fully inside this mask propagate
  // impossibility to larger sizes (rule 1).
  AxiomSet esg_certified = 0;
};

// Status of every (axiom subset, size) cell.  Cells are addressed by a local
// mask over the universe axioms (bit i of a local mask = i-th member of the
// universe in AxiomId order).
class Lattice {
 public:
  Lattice(const SearchConfig& cfg);

  const SearchConfig& config() const { return cfg_; }
  int num_universe_axioms() const { return num_axioms_; }
  size_t cells_per_level() const { return size_t{1} << num_axioms_; }

  AxiomSet to_global(uint32_t local) const;
  uint32_t to_local(AxiomSet global) const;  // throws if not within universe

  CellState state(uint32_t local, int n) const { return level(n).state[local]; }
  CellProv provenance(uint32_t local, int n) const { return level(n).prov[local]; }
  // Root solved cell justifying a pruned cell (local mask; for rules 1/3 the
  // root lives at the originating size).
  uint32_t source(uint32_t local, int n) const { return level(n).source[local]; }

  bool level_complete(int n) const;
  size_t unresolved(int n) const;

  // Records a freshly solved cell and, when pruning is enabled, closes the
  // lattice under rules 1-4; newly pruned (mask, size) cells are appended to
  // `pruned` when given.  Throws std::logic_error if the verdict conflicts
  // with an already resolved cell (an encoding bug by invariant).
  void resolve(uint32_t local, int n, CellState verdict,
               std::vector<std::pair<uint32_t, int>>* pruned = nullptr);

  std::vector<std::pair<uint32_t, CellState>> solved_cells(int n) const;

 private:
  struct Level {
    std::vector<CellState> state;
    std::vector<CellProv> prov;
    std::vector<uint32_t> source;
    size_t resolved = 0;
  };

  using PrunedList = std::vector<std::pair<uint32_t, int>>;

  Level& level(int n) { return levels_.at(static_cast<size_t>(n - cfg_.min_n)); }
  const Level& level(int n) const {
    return levels_.at(static_cast<size_t>(n - cfg_.min_n));
  }

  bool set_cell(int n, uint32_t local, CellState st, CellProv prov, uint32_t src);
  void close_up(int n, uint32_t from, uint32_t root, PrunedList* pruned);
  void close_down(int n, uint32_t from, uint32_t root, PrunedList* pruned);

  SearchConfig cfg_;
  int num_axioms_;
  std::vector<int> axiom_of_bit_;  // local bit -> AxiomId index
  std::vector<Level> levels_;
  AxiomSet esg_local_;  // local mask of ESG-certified universe members
};

// Public pruning entry point per the module contract: applies rules 1-4 from
// one freshly solved cell and returns the newly pruned (mask, size) cells.
std::vector<std::pair<uint32_t, int>> apply_pruning(Lattice& lat, uint32_t local,
                                                    int n, CellState verdict);

struct ProgressSink {
  virtual ~ProgressSink() = default;
  virtual void on_level_start(int n, size_t unresolved) = 0;
  virtual void on_progress(int n, size_t solved, size_t unresolved) = 0;
};

// Level-by-level exhaustive search with alternating sweep direction and
// monotone pruning.  The final lattice is a deterministic function of the
// configuration, independent of the worker count.
Lattice run_search(const SearchConfig& cfg, ProgressSink* progress = nullptr);

struct MinimalImpossibility {
  AxiomSet axioms;  // global mask
  int size;

  bool operator==(const MinimalImpossibility&) const = default;
};

struct MinimalResult {
  std::vector<MinimalImpossibility> minimal;
  // Candidates excluded because a Timeout cell touches their minimality
  // check.
  std::vector<MinimalImpossibility> unconfirmed;
};

// Doubly minimal impossibilities: every proper subset possible at that size
// and the set itself possible at size-1.  Sorted by size, then axiom count,
// then canonical mask order.
MinimalResult minimal_impossibilities(const Lattice& lat);

// Number of axiom subsets impossible at some size <= max_n (supersets
// included).  Throws if the lattice is incomplete.
uint64_t count_inconsistent(const Lattice& lat);

// ---- checkpointing ----

void checkpoint_save(const Lattice& lat, const std::string& path);

// Loads solved cells from `path` into a fresh lattice for `cfg` (pruned cells
// are recomputed).  Missing or empty file yields a fresh lattice.  Throws on
// version mismatch or corrupt records.
Lattice checkpoint_load(const std::string& path, const SearchConfig& cfg);

// ---- reporting ----

enum class ReportFormat { Text, Csv, Json };

std::string render_report(const Lattice& lat, ReportFormat fmt);

// Parses the CSV report back into rows (for round-trip checks).
std::vector<MinimalImpossibility> parse_csv_report(const std::string& csv);

// ---- brute-force oracle at n = 3 ----

// Fubini / ordered Bell number: weak orders on a k-element set.
uint64_t fubini(int k);

// Exhaustive weak-order oracle over the 3-element domain: a set of axioms
// containing {REFL_S, COMPL_S, TRANS_S} is Possible iff some pair of an
// element relation and a weak order on the 7 nonempty subsets satisfies every
// member via holds().  When LIN_E is in the set only linear element orders
// qualify; without it all 2^9 element relations are covered, matching the
// unconstrained l variables on the solver side.
class WeakOrderOracle {
 public:
  WeakOrderOracle();
  CellState query(AxiomSet axioms) const;  // Possible or Impossible

 private:
  std::vector<uint8_t> possible_;  // indexed by 20-bit axiom mask
};

}  // namespace ranksets::search
