#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ranksets/search.hpp"

namespace ranksets::search {

namespace {

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

void checkpoint_save(const Lattice& lat, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
  const SearchConfig& cfg = lat.config();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05x", cfg.universe);
  os << "# ranksets-checkpoint 1 universe=" << buf << " min=" << cfg.min_n
     << " max=" << cfg.max_n << "\n";
  for (int n = cfg.min_n; n <= cfg.max_n; ++n) {
    for (auto [mask, state] : lat.solved_cells(n)) {
      std::snprintf(buf, sizeof buf, "%05x", lat.to_global(mask));
      os << buf << ' ' << n << ' ' << verdict_word(state) << ' ' << cfg.seed << '\n';
    }
  }
  if (!os) throw std::runtime_error("error while writing checkpoint: " + path);
}

Lattice checkpoint_load(const std::string& path, const SearchConfig& cfg) {
  Lattice lat(cfg);
  if (!std::filesystem::exists(path)) return lat;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read checkpoint: " + path);

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string hash, name;
      int version = 0;
      hs >> hash >> name >> version;
      if (name == "ranksets-checkpoint" && version != 1)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": unsupported checkpoint version " +
                                 std::to_string(version));
      continue;
    }
    std::istringstream ls(line);
    std::string mask_hex, verdict;
    int size = 0;
    uint64_t seed = 0;
    if (!(ls >> mask_hex >> size >> verdict >> seed))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": corrupt checkpoint record '" + line + "'");
    AxiomSet mask = 0;
    try {
      mask = static_cast<AxiomSet>(std::stoul(mask_hex, nullptr, 16));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad axiom mask '" + mask_hex + "'");
    }
    if (size < cfg.min_n || size > cfg.max_n)
      continue;  // record outside the configured range; ignore
    CellState st;
    if (verdict == "SAT")
      st = CellState::Possible;
    else if (verdict == "UNSAT")
      st = CellState::Impossible;
    else if (verdict == "TIMEOUT")
      st = CellState::Timeout;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown verdict '" + verdict + "'");
    if (st == CellState::Timeout && cfg.retry_timeouts) continue;
    lat.resolve(lat.to_local(mask), size, st);
  }
  return lat;
}

}  // namespace ranksets::search
