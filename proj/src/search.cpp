#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <filesystem>
#include <mutex>
#include <fstream>
#include <thread>

#include "ranksets/search.hpp"

namespace ranksets::search {

std::string_view cell_state_name(CellState s) {
  switch (s) {
    case CellState::Unknown: return "UNKNOWN";
    case CellState::Possible: return "POSSIBLE";
    case CellState::Impossible: return "IMPOSSIBLE";
    case CellState::Timeout: return "TIMEOUT";
  }
  return "?";
}

Lattice::Lattice(const SearchConfig& cfg) : cfg_(cfg) {
  if (cfg.universe == 0) throw std::invalid_argument("empty axiom universe");
  if (cfg.min_n < 2 || cfg.max_n < cfg.min_n || cfg.max_n > Domain::kMaxSize)
    throw std::invalid_argument("invalid domain size range");
  num_axioms_ = std::popcount(cfg.universe);
  for (int i = 0; i < kNumAxioms; ++i)
    if (cfg.universe >> i & 1u) axiom_of_bit_.push_back(i);
  size_t cells = size_t{1} << num_axioms_;
  levels_.resize(static_cast<size_t>(cfg.max_n - cfg.min_n + 1));
  for (Level& lv : levels_) {
    lv.state.assign(cells, CellState::Unknown);
    lv.prov.assign(cells, CellProv::None);
    lv.source.assign(cells, 0);
  }
  esg_local_ = to_local(cfg.esg_certified & cfg.universe);
}

AxiomSet Lattice::to_global(uint32_t local) const {
  AxiomSet g = 0;
  for (int b = 0; b < num_axioms_; ++b)
    if (local >> b & 1u) g |= AxiomSet{1} << axiom_of_bit_[static_cast<size_t>(b)];
  return g;
}

uint32_t Lattice::to_local(AxiomSet global) const {
  if ((global & ~cfg_.universe) != 0)
    throw std::invalid_argument("axiom set is not contained in the search universe");
  uint32_t local = 0;
  for (int b = 0; b < num_axioms_; ++b)
    if (global >> axiom_of_bit_[static_cast<size_t>(b)] & 1u) local |= uint32_t{1} << b;
  return local;
}

bool Lattice::level_complete(int n) const {
  return level(n).resolved == cells_per_level();
}

size_t Lattice::unresolved(int n) const { return cells_per_level() - level(n).resolved; }

bool Lattice::set_cell(int n, uint32_t local, CellState st, CellProv prov, uint32_t src) {
  Level& lv = level(n);
  CellState cur = lv.state[local];
  if (cur == st) return false;
  if (cur == CellState::Unknown) {
    lv.state[local] = st;
    lv.prov[local] = prov;
    lv.source[local] = src;
    ++lv.resolved;
    return true;
  }
  if (cur == CellState::Timeout &&
      (st == CellState::Possible || st == CellState::Impossible)) {
    // Monotone refinement of an unresolved verdict.
    lv.state[local] = st;
    lv.prov[local] = prov;
    lv.source[local] = src;
    return true;
  }
  if (st == CellState::Timeout) return false;  // keep the definite verdict
  throw std::logic_error(
      "lattice consistency violation at mask " + axiom_set_to_string(to_global(local)) +
      " size " + std::to_string(n) + ": " + std::string(cell_state_name(cur)) +
      " would be overwritten with " + std::string(cell_state_name(st)) +
      "; this indicates an encoding bug");
}

void Lattice::close_up(int n, uint32_t from, uint32_t root, PrunedList* pruned) {
  const uint32_t all = static_cast<uint32_t>(cells_per_level() - 1);
  std::deque<uint32_t> queue{from};
  while (!queue.empty()) {
    uint32_t m = queue.front();
    queue.pop_front();
    uint32_t rest = all & ~m;
    while (rest) {
      uint32_t bit = rest & (~rest + 1);
      rest &= rest - 1;
      uint32_t next = m | bit;
      CellState cur = level(n).state[next];
      if (cur == CellState::Impossible) continue;
      if (set_cell(n, next, CellState::Impossible, CellProv::Rule2, root)) {
        if (pruned) pruned->emplace_back(next, n);
        queue.push_back(next);
      }
    }
  }
}

void Lattice::close_down(int n, uint32_t from, uint32_t root, PrunedList* pruned) {
  std::deque<uint32_t> queue{from};
  while (!queue.empty()) {
    uint32_t m = queue.front();
    queue.pop_front();
    uint32_t rest = m;
    while (rest) {
      uint32_t bit = rest & (~rest + 1);
      rest &= rest - 1;
      uint32_t next = m & ~bit;
      CellState cur = level(n).state[next];
      if (cur == CellState::Possible) continue;
      if (set_cell(n, next, CellState::Possible, CellProv::Rule4, root)) {
        if (pruned) pruned->emplace_back(next, n);
        queue.push_back(next);
      }
    }
  }
}

void Lattice::resolve(uint32_t local, int n, CellState verdict, PrunedList* pruned) {
  if (verdict == CellState::Unknown)
    throw std::invalid_argument("cannot resolve a cell to Unknown");
  if (!set_cell(n, local, verdict, CellProv::Solved, local)) return;
  if (!cfg_.pruning || verdict == CellState::Timeout) return;

  if (verdict == CellState::Impossible) {
    close_up(n, local, local, pruned);
    // Rule 1: an impossible set of ESG axioms stays impossible on larger
    // domains.
    if ((local & ~esg_local_) == 0) {
      for (int m = n + 1; m <= cfg_.max_n; ++m) {
        if (level(m).state[local] == CellState::Impossible) break;
        if (set_cell(m, local, CellState::Impossible, CellProv::Rule1, local)) {
          if (pruned) pruned->emplace_back(local, m);
          close_up(m, local, local, pruned);
        }
      }
    }
  } else {
    close_down(n, local, local, pruned);
    // Rule 3: a possible set stays possible on smaller domains.
    for (int m = n - 1; m >= cfg_.min_n; --m) {
      if (level(m).state[local] == CellState::Possible) break;
      if (set_cell(m, local, CellState::Possible, CellProv::Rule3, local)) {
        if (pruned) pruned->emplace_back(local, m);
        close_down(m, local, local, pruned);
      }
    }
  }
}

std::vector<std::pair<uint32_t, CellState>> Lattice::solved_cells(int n) const {
  std::vector<std::pair<uint32_t, CellState>> out;
  const Level& lv = level(n);
  for (size_t m = 0; m < lv.state.size(); ++m)
    if (lv.prov[m] == CellProv::Solved)
      out.emplace_back(static_cast<uint32_t>(m), lv.state[m]);
  return out;
}

std::vector<std::pair<uint32_t, int>> apply_pruning(Lattice& lat, uint32_t local, int n,
                                                    CellState verdict) {
  std::vector<std::pair<uint32_t, int>> pruned;
  lat.resolve(local, n, verdict, &pruned);
  return pruned;
}

namespace {

// Clause database for one domain size: every axiom's clauses are loaded once
// per worker under a selector literal, and instances are decided under the
// matching assumptions, so learned clauses carry across the sweep.
struct LevelClauses {
  std::vector<CnfFormula> by_axiom;  // indexed by AxiomId
  int num_vars = 0;                  // l/w variables, selectors above

  explicit LevelClauses(int n) {
    Domain d(n);
    num_vars = d.num_vars();
    by_axiom.reserve(kNumAxioms);
    for (int i = 0; i < kNumAxioms; ++i)
      by_axiom.push_back(clauses_for(static_cast<AxiomId>(i), d));
  }

  Lit selector(int axiom) const { return num_vars + 1 + axiom; }

  sat::IncrementalSolver make_solver() const {
    sat::IncrementalSolver solver(num_vars + kNumAxioms);
    for (int i = 0; i < kNumAxioms; ++i)
      solver.add_formula(by_axiom[static_cast<size_t>(i)], selector(i));
    return solver;
  }

  sat::Verdict solve_set(AxiomSet axioms, sat::IncrementalSolver& solver,
                         const sat::SolverConfig& scfg) const {
    std::vector<Lit> assumps;
    for (int i = 0; i < kNumAxioms; ++i)
      if (axioms >> i & 1u) assumps.push_back(selector(i));
    sat::Verdict v = solver.solve(assumps, scfg);
    if (v.status == sat::Status::Sat) {
      for (int i = 0; i < kNumAxioms; ++i)
        if (axioms >> i & 1u)
          if (!sat::model_satisfies(by_axiom[static_cast<size_t>(i)], v.model))
            throw std::logic_error("internal error: model fails verification");
    }
    return v;
  }
};

CellState to_cell_state(sat::Status s) {
  switch (s) {
    case sat::Status::Sat: return CellState::Possible;
    case sat::Status::Unsat: return CellState::Impossible;
    case sat::Status::Unknown: return CellState::Timeout;
  }
  return CellState::Timeout;
}

const char* verdict_word(CellState s) {
  switch (s) {
    case CellState::Possible: return "SAT";
    case CellState::Impossible: return "UNSAT";
    case CellState::Timeout: return "TIMEOUT";
    case CellState::Unknown: break;
  }
  return "?";
}

}  // namespace

Lattice run_search(const SearchConfig& cfg, ProgressSink* progress) {
  Lattice lat = !cfg.checkpoint_path.empty() &&
                        std::filesystem::exists(cfg.checkpoint_path)
                    ? checkpoint_load(cfg.checkpoint_path, cfg)
                    : Lattice(cfg);

  std::ofstream ckpt;
  if (!cfg.checkpoint_path.empty()) {
    bool fresh = !std::filesystem::exists(cfg.checkpoint_path) ||
                 std::filesystem::file_size(cfg.checkpoint_path) == 0;
    ckpt.open(cfg.checkpoint_path, std::ios::app);
    if (!ckpt) throw std::runtime_error("cannot open checkpoint: " + cfg.checkpoint_path);
    if (fresh) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%05x", cfg.universe);
      ckpt << "# ranksets-checkpoint 1 universe=" << buf << " min=" << cfg.min_n
           << " max=" << cfg.max_n << "\n";
    }
  }

  sat::SolverConfig scfg;
  scfg.conflict_budget = cfg.conflict_budget;
  scfg.time_budget_ms = cfg.time_budget_ms;
  scfg.seed = cfg.seed;

  // Fixed batch width keeps the set of solved cells independent of the
  // worker count.
  constexpr size_t kBatch = 64;
  const size_t cells = lat.cells_per_level();
  const uint32_t top_mask = static_cast<uint32_t>(cells - 1);

  for (int n = cfg.min_n; n <= cfg.max_n; ++n) {
    if (lat.level_complete(n)) continue;
    LevelClauses clauses(n);
    int workers = std::max(1, cfg.workers);
    std::vector<sat::IncrementalSolver> solvers;
    solvers.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) solvers.push_back(clauses.make_solver());
    if (progress) progress->on_level_start(n, lat.unresolved(n));

    // Two cursors sweep toward each other; the active direction flips after
    // switch_interval freshly solved cells (large sets first, then small,
    // and so on).
    uint32_t cursor_desc = top_mask;
    uint32_t cursor_asc = 0;
    bool desc_done = false, asc_done = false;
    bool descending = true;
    uint64_t solved_in_chunk = 0;
    size_t solved_total = 0;
    std::vector<uint32_t> batch;
    std::vector<CellState> verdicts;

    while (!lat.level_complete(n)) {
      batch.clear();
      size_t want = kBatch;
      if (cfg.switch_interval > 0)
        want = std::min<size_t>(want, cfg.switch_interval - solved_in_chunk);
      if (descending && !desc_done) {
        while (batch.size() < want) {
          if (lat.state(cursor_desc, n) == CellState::Unknown)
            batch.push_back(cursor_desc);
          if (cursor_desc == 0) {
            desc_done = true;
            break;
          }
          --cursor_desc;
        }
      } else if (!descending && !asc_done) {
        while (batch.size() < want) {
          if (lat.state(cursor_asc, n) == CellState::Unknown) batch.push_back(cursor_asc);
          if (cursor_asc == top_mask) {
            asc_done = true;
            break;
          }
          ++cursor_asc;
        }
      }
      if (batch.empty()) {
        if (desc_done && asc_done) break;  // nothing left anywhere
        descending = !descending;
        solved_in_chunk = 0;
        continue;
      }

      verdicts.assign(batch.size(), CellState::Unknown);
      if (workers == 1 || batch.size() == 1) {
        for (size_t i = 0; i < batch.size(); ++i)
          verdicts[i] = to_cell_state(
              clauses.solve_set(lat.to_global(batch[i]), solvers[0], scfg).status);
      } else {
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&](int w) {
          try {
            while (true) {
              size_t i = next.fetch_add(1);
              if (i >= batch.size()) break;
              verdicts[i] = to_cell_state(
                  clauses
                      .solve_set(lat.to_global(batch[i]), solvers[static_cast<size_t>(w)],
                                 scfg)
                      .status);
            }
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(batch.size());
          }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
      }

      // Apply in scan order; members pruned by an earlier member of the same
      // batch keep their pruned provenance (resolve checks consistency).
      for (size_t i = 0; i < batch.size(); ++i) {
        lat.resolve(batch[i], n, verdicts[i]);
        if (ckpt.is_open()) {
          char buf[16];
          std::snprintf(buf, sizeof buf, "%05x", lat.to_global(batch[i]));
          ckpt << buf << ' ' << n << ' ' << verdict_word(verdicts[i]) << ' ' << cfg.seed
               << '\n';
        }
      }
      if (ckpt.is_open()) ckpt.flush();

      solved_total += batch.size();
      solved_in_chunk += batch.size();
      if (cfg.switch_interval > 0 && solved_in_chunk >= cfg.switch_interval) {
        descending = !descending;
        solved_in_chunk = 0;
      }
      if (progress) progress->on_progress(n, solved_total, lat.unresolved(n));
    }

    if (!lat.level_complete(n))
      throw std::logic_error("sweep finished with unresolved cells");
  }
  return lat;
}

MinimalResult minimal_impossibilities(const Lattice& lat) {
  MinimalResult out;
  const SearchConfig& cfg = lat.config();
  const size_t cells = lat.cells_per_level();
  for (int n = cfg.min_n; n <= cfg.max_n; ++n) {
    for (uint32_t m = 1; m < cells; ++m) {
      if (lat.state(m, n) != CellState::Impossible) continue;
      bool unconfirmed = false, minimal = true;
      if (n > cfg.min_n) {
        CellState below = lat.state(m, n - 1);
        if (below == CellState::Impossible)
          minimal = false;  // impossibility starts earlier
        else if (below != CellState::Possible)
          unconfirmed = true;
      }
      if (minimal) {
        uint32_t rest = m;
        while (rest) {
          uint32_t bit = rest & (~rest + 1);
          rest &= rest - 1;
          CellState sub = lat.state(m & ~bit, n);
          if (sub == CellState::Impossible) {
            minimal = false;
            break;
          }
          if (sub != CellState::Possible) unconfirmed = true;
        }
      }
      if (!minimal) continue;
      MinimalImpossibility mi{lat.to_global(m), n};
      if (unconfirmed)
        out.unconfirmed.push_back(mi);
      else
        out.minimal.push_back(mi);
    }
  }
  auto order = [](const MinimalImpossibility& a, const MinimalImpossibility& b) {
    if (a.size != b.size) return a.size < b.size;
    int ca = std::popcount(a.axioms), cb = std::popcount(b.axioms);
    if (ca != cb) return ca < cb;
    return a.axioms < b.axioms;
  };
  std::sort(out.minimal.begin(), out.minimal.end(), order);
  std::sort(out.unconfirmed.begin(), out.unconfirmed.end(), order);
  return out;
}

uint64_t count_inconsistent(const Lattice& lat) {
  const SearchConfig& cfg = lat.config();
  const size_t cells = lat.cells_per_level();
  std::vector<uint8_t> bad(cells, 0);
  for (int n = cfg.min_n; n <= cfg.max_n; ++n)
    for (uint32_t m = 0; m < cells; ++m) {
      CellState s = lat.state(m, n);
      if (s == CellState::Unknown || s == CellState::Timeout)
        throw std::invalid_argument("count_inconsistent requires a complete lattice");
      if (s == CellState::Impossible) bad[m] = 1;
    }
  uint64_t total = 0;
  for (uint8_t b : bad) total += b;
  return total;
}

}  // namespace ranksets::search
