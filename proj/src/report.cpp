#include <bit>
#include <sstream>

#include <json.hpp>

#include "ranksets/search.hpp"

namespace ranksets::search {

namespace {

// Shown on every report: the search certifies nothing beyond the sizes it
// actually covered.
std::string exhaustiveness_note(int max_n) {
  return "Exhaustive up to domain size " + std::to_string(max_n) +
         "; impossibilities first arising at larger sizes are not detected.";
}

struct LatticeStats {
  size_t unresolved = 0;
  size_t timeouts = 0;
  bool complete() const { return unresolved == 0 && timeouts == 0; }
};

LatticeStats stats_of(const Lattice& lat) {
  LatticeStats st;
  const SearchConfig& cfg = lat.config();
  for (int n = cfg.min_n; n <= cfg.max_n; ++n)
    for (uint32_t m = 0; m < lat.cells_per_level(); ++m) {
      CellState s = lat.state(m, n);
      if (s == CellState::Unknown) ++st.unresolved;
      if (s == CellState::Timeout) ++st.timeouts;
    }
  return st;
}

std::string render_text(const Lattice& lat, const MinimalResult& res,
                        const LatticeStats& st) {
  std::ostringstream os;
  os << "No.   Size";
  for (int i = 0; i < kNumAxioms; ++i) {
    os << "  " << axiom_column_name(static_cast<AxiomId>(i));
  }
  os << '\n';
  int no = 0;
  for (const MinimalImpossibility& mi : res.minimal) {
    ++no;
    char head[32];
    std::snprintf(head, sizeof head, "%-5d %-4d", no, mi.size);
    os << head;
    for (int i = 0; i < kNumAxioms; ++i) {
      size_t width = axiom_column_name(static_cast<AxiomId>(i)).size();
      bool in = axiom_in(mi.axioms, static_cast<AxiomId>(i));
      os << "  " << std::string(width > 0 ? width - 1 : 0, ' ') << (in ? "x" : ".");
    }
    os << '\n';
  }
  os << '\n';
  os << "minimal impossibilities: " << res.minimal.size() << '\n';
  if (!res.unconfirmed.empty())
    os << "unconfirmed candidates (blocked by timeouts): " << res.unconfirmed.size()
       << '\n';
  if (st.complete())
    os << "inconsistent axiom sets (supersets included): " << count_inconsistent(lat)
       << '\n';
  else
    os << "PARTIAL lattice: " << st.unresolved << " unresolved, " << st.timeouts
       << " timed out\n";
  os << exhaustiveness_note(lat.config().max_n) << '\n';
  return os.str();
}

std::string render_csv(const MinimalResult& res) {
  std::ostringstream os;
  os << "Size";
  for (int i = 0; i < kNumAxioms; ++i) os << ',' << axiom_name(static_cast<AxiomId>(i));
  os << '\n';
  for (const MinimalImpossibility& mi : res.minimal) {
    os << mi.size;
    for (int i = 0; i < kNumAxioms; ++i)
      os << ',' << (axiom_in(mi.axioms, static_cast<AxiomId>(i)) ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Lattice& lat, const MinimalResult& res,
                        const LatticeStats& st) {
  const SearchConfig& cfg = lat.config();
  nlohmann::json j;
  j["universe"] = nlohmann::json::array();
  for (AxiomId a : axiom_set_members(cfg.universe)) j["universe"].push_back(axiom_name(a));
  j["min_size"] = cfg.min_n;
  j["max_size"] = cfg.max_n;
  j["seed"] = cfg.seed;
  j["switch_interval"] = cfg.switch_interval;
  j["pruning"] = cfg.pruning;
  j["complete"] = st.complete();
  j["note"] = exhaustiveness_note(cfg.max_n);

  auto row = [](const MinimalImpossibility& mi) {
    nlohmann::json r;
    r["size"] = mi.size;
    r["mask"] = mi.axioms;
    r["axioms"] = nlohmann::json::array();
    for (AxiomId a : axiom_set_members(mi.axioms)) r["axioms"].push_back(axiom_name(a));
    return r;
  };
  j["minimal"] = nlohmann::json::array();
  for (const auto& mi : res.minimal) j["minimal"].push_back(row(mi));
  j["unconfirmed"] = nlohmann::json::array();
  for (const auto& mi : res.unconfirmed) j["unconfirmed"].push_back(row(mi));

  std::map<int, int> histogram;
  for (const auto& mi : res.minimal) histogram[mi.size]++;
  j["size_histogram"] = nlohmann::json::object();
  for (auto [size, count] : histogram) j["size_histogram"][std::to_string(size)] = count;

  if (st.complete()) j["inconsistent_sets"] = count_inconsistent(lat);

  // Solved-cell provenance; pruned cells are derivable from these plus the
  // pruning rules, exactly as on checkpoint load.
  j["solved_cells"] = nlohmann::json::array();
  for (int n = cfg.min_n; n <= cfg.max_n; ++n)
    for (auto [mask, state] : lat.solved_cells(n)) {
      nlohmann::json c;
      c["mask"] = lat.to_global(mask);
      c["size"] = n;
      c["state"] = std::string(cell_state_name(state));
      j["solved_cells"].push_back(c);
    }
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_report(const Lattice& lat, ReportFormat fmt) {
  MinimalResult res = minimal_impossibilities(lat);
  LatticeStats st = stats_of(lat);
  switch (fmt) {
    case ReportFormat::Text: return render_text(lat, res, st);
    case ReportFormat::Csv: return render_csv(res);
    case ReportFormat::Json: return render_json(lat, res, st);
  }
  return {};
}

std::vector<MinimalImpossibility> parse_csv_report(const std::string& csv) {
  std::vector<MinimalImpossibility> out;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) return out;  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    if (!std::getline(ls, field, ',')) continue;
    MinimalImpossibility mi{0, std::stoi(field)};
    for (int i = 0; i < kNumAxioms; ++i) {
      if (!std::getline(ls, field, ','))
        throw std::runtime_error("short CSV row: " + line);
      if (field == "1") mi.axioms |= axiom_bit(static_cast<AxiomId>(i));
    }
    out.push_back(mi);
  }
  return out;
}

}  // namespace ranksets::search
