#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ranksets/mslsp.hpp"
#include "ranksets/search.hpp"

using namespace ranksets;
namespace se = ranksets::search;

namespace {

se::SearchConfig small_config(const char* axioms, int max_n) {
  se::SearchConfig cfg;
  cfg.universe = parse_axiom_list(axioms);
  cfg.max_n = max_n;
  cfg.esg_certified = mslsp::esg_certified_axioms();
  return cfg;
}

std::vector<std::pair<int, AxiomSet>> rows_of(const se::MinimalResult& r) {
  std::vector<std::pair<int, AxiomSet>> out;
  for (const auto& mi : r.minimal) out.emplace_back(mi.size, mi.axioms);
  return out;
}

bool same_states(const se::Lattice& a, const se::Lattice& b) {
  if (a.cells_per_level() != b.cells_per_level()) return false;
  for (int n = a.config().min_n; n <= a.config().max_n; ++n)
    for (uint32_t m = 0; m < a.cells_per_level(); ++m)
      if (a.state(m, n) != b.state(m, n)) return false;
  return true;
}

}  // namespace

TEST_CASE("fubini numbers") {
  CHECK(se::fubini(0) == 1);
  CHECK(se::fubini(1) == 1);
  CHECK(se::fubini(2) == 3);
  CHECK(se::fubini(3) == 13);
  CHECK(se::fubini(4) == 75);
  CHECK(se::fubini(7) == 47293);
}

TEST_CASE("weak-order oracle spot checks") {
  static const se::WeakOrderOracle oracle;
  auto q = [&](const char* s) { return oracle.query(parse_axiom_list(s)); };
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E") == se::CellState::Possible);
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E,SUA_V,SUA_P") == se::CellState::Impossible);
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E,SUA_V") == se::CellState::Possible);
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E,SDOM,STRICT_IND") == se::CellState::Impossible);
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E,SDOM,IND") == se::CellState::Possible);
  CHECK(q("REFL_S,COMPL_S,TRANS_S,LIN_E,GF1,GF2,IND") == se::CellState::Possible);
  // Without LIN_E an all-indifferent element relation rescues EXT + the SUA
  // pair, which a linear order cannot.
  CHECK(q("REFL_S,COMPL_S,TRANS_S,EXT,SUA_V,SUA_P") == se::CellState::Possible);
  CHECK_THROWS_AS(oracle.query(parse_axiom_list("LIN_E")), std::invalid_argument);
}

TEST_CASE("pruning rules and provenance") {
  se::SearchConfig cfg = small_config("LIN_E,SUA_V,SUA_P,MC", 4);
  cfg.min_n = 2;
  se::Lattice lat(cfg);
  uint32_t cell = lat.to_local(parse_axiom_list("LIN_E,SUA_V,SUA_P"));

  auto pruned = se::apply_pruning(lat, cell, 3, se::CellState::Impossible);
  CHECK(lat.state(cell, 3) == se::CellState::Impossible);
  CHECK(lat.provenance(cell, 3) == se::CellProv::Solved);

  uint32_t full = lat.to_local(parse_axiom_list("LIN_E,SUA_V,SUA_P,MC"));
  CHECK(lat.state(full, 3) == se::CellState::Impossible);   // rule 2
  CHECK(lat.provenance(full, 3) == se::CellProv::Rule2);
  CHECK(lat.source(full, 3) == cell);
  CHECK(lat.state(cell, 4) == se::CellState::Impossible);   // rule 1
  CHECK(lat.provenance(cell, 4) == se::CellProv::Rule1);
  CHECK(lat.state(full, 4) == se::CellState::Impossible);
  CHECK(lat.state(cell, 2) == se::CellState::Unknown);      // nothing downward
  // 3 cells at size 3 (supersets), the same at size 4, plus the cell itself
  // at size 4: the pruned list covers exactly the newly resolved cells.
  CHECK(pruned.size() == 3);

  uint32_t sub = lat.to_local(parse_axiom_list("LIN_E,SUA_V"));
  se::apply_pruning(lat, sub, 4, se::CellState::Possible);
  CHECK(lat.state(sub, 4) == se::CellState::Possible);
  CHECK(lat.state(sub, 3) == se::CellState::Possible);      // rule 3
  CHECK(lat.provenance(sub, 3) == se::CellProv::Rule3);
  uint32_t lin = lat.to_local(parse_axiom_list("LIN_E"));
  CHECK(lat.state(lin, 4) == se::CellState::Possible);      // rule 4
  CHECK(lat.provenance(lin, 4) == se::CellProv::Rule4);
  CHECK(lat.source(lin, 4) == sub);

  // Conflicting overwrite must abort.
  CHECK_THROWS_AS(lat.resolve(cell, 3, se::CellState::Possible), std::logic_error);
  // ESG gating: a universe member without certification blocks rule 1.
  se::SearchConfig gated = small_config("LIN_E,SUA_V,SUA_P", 4);
  gated.esg_certified = parse_axiom_list("LIN_E,SUA_V");
  se::Lattice lat2(gated);
  uint32_t c2 = lat2.to_local(parse_axiom_list("LIN_E,SUA_V,SUA_P"));
  lat2.resolve(c2, 3, se::CellState::Impossible);
  CHECK(lat2.state(c2, 4) == se::CellState::Unknown);
}

TEST_CASE("search on tiny universes") {
  se::Lattice lat = se::run_search(small_config("LIN_E,SUA_V,SUA_P", 3));
  auto res = se::minimal_impossibilities(lat);
  REQUIRE(res.minimal.size() == 1);
  CHECK(res.minimal[0].axioms == parse_axiom_list("LIN_E,SUA_V,SUA_P"));
  CHECK(res.minimal[0].size == 3);
  CHECK(res.unconfirmed.empty());
  CHECK(se::count_inconsistent(lat) == 1);

  se::Lattice none = se::run_search(small_config("REFL_S,EVEN_EXT", 4));
  CHECK(se::minimal_impossibilities(none).minimal.empty());
  CHECK(se::count_inconsistent(none) == 0);
}

TEST_CASE("count_inconsistent requires a complete lattice") {
  se::SearchConfig cfg = small_config("LIN_E,SUA_V", 3);
  se::Lattice lat(cfg);
  CHECK_THROWS_AS(se::count_inconsistent(lat), std::invalid_argument);
}

TEST_CASE("checkpoint round trip and resume") {
  std::string path = "/tmp/ranksets_test_ckpt.txt";
  std::filesystem::remove(path);

  se::SearchConfig cfg = small_config("LIN_E,EXT,SDOM,SUA_V,SUA_P,MC", 3);
  cfg.checkpoint_path = path;
  se::Lattice lat = se::run_search(cfg);

  se::Lattice loaded = se::checkpoint_load(path, cfg);
  CHECK(same_states(lat, loaded));
  for (int n = cfg.min_n; n <= cfg.max_n; ++n)
    CHECK(lat.solved_cells(n) == loaded.solved_cells(n));

  // Resume from a truncated checkpoint: identical final states.
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  in.close();
  std::string partial = "/tmp/ranksets_test_ckpt_partial.txt";
  {
    std::ofstream out(partial, std::ios::trunc);
    for (size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << '\n';
  }
  se::SearchConfig resume = cfg;
  resume.checkpoint_path = partial;
  se::Lattice resumed = se::run_search(resume);
  CHECK(same_states(lat, resumed));
  auto a = se::minimal_impossibilities(lat), b = se::minimal_impossibilities(resumed);
  CHECK(rows_of(a) == rows_of(b));

  // Empty file loads as a fresh lattice.
  std::string empty = "/tmp/ranksets_test_ckpt_empty.txt";
  { std::ofstream out(empty, std::ios::trunc); }
  se::SearchConfig fresh_cfg = cfg;
  fresh_cfg.checkpoint_path.clear();
  se::Lattice fresh = se::checkpoint_load(empty, fresh_cfg);
  for (int n = cfg.min_n; n <= cfg.max_n; ++n) CHECK(fresh.unresolved(n) > 0);

  // Corrupt record and version mismatch are rejected.
  std::string corrupt = "/tmp/ranksets_test_ckpt_bad.txt";
  { std::ofstream out(corrupt, std::ios::trunc); out << "zzz\n"; }
  CHECK_THROWS_AS(se::checkpoint_load(corrupt, fresh_cfg), std::runtime_error);
  { std::ofstream out(corrupt, std::ios::trunc); out << "# ranksets-checkpoint 9\n"; }
  CHECK_THROWS_AS(se::checkpoint_load(corrupt, fresh_cfg), std::runtime_error);

  std::filesystem::remove(path);
  std::filesystem::remove(partial);
  std::filesystem::remove(empty);
  std::filesystem::remove(corrupt);
}

TEST_CASE("checkpoint_save rewrites losslessly") {
  se::SearchConfig cfg = small_config("LIN_E,GF1,GF2,STRICT_IND", 3);
  se::Lattice lat = se::run_search(cfg);
  std::string path = "/tmp/ranksets_test_save.txt";
  se::checkpoint_save(lat, path);
  se::Lattice loaded = se::checkpoint_load(path, cfg);
  CHECK(same_states(lat, loaded));
  for (int n = cfg.min_n; n <= cfg.max_n; ++n)
    CHECK(lat.solved_cells(n) == loaded.solved_cells(n));
  std::filesystem::remove(path);
}

TEST_CASE("results are insensitive to order, workers, and pruning") {
  const char* universe = "LIN_E,TRANS_S,SDOM,GF1,GF2,IND,STRICT_IND,SUA_V,SUA_P";
  se::SearchConfig base = small_config(universe, 3);
  se::Lattice reference = se::run_search(base);
  auto ref_rows = rows_of(se::minimal_impossibilities(reference));
  CHECK(!ref_rows.empty());

  se::SearchConfig tweaked = base;
  tweaked.switch_interval = 7;
  se::Lattice t1 = se::run_search(tweaked);
  CHECK(rows_of(se::minimal_impossibilities(t1)) == ref_rows);

  tweaked = base;
  tweaked.switch_interval = 0;  // full sweeps only
  CHECK(rows_of(se::minimal_impossibilities(se::run_search(tweaked))) == ref_rows);

  tweaked = base;
  tweaked.workers = 3;
  se::Lattice t2 = se::run_search(tweaked);
  CHECK(same_states(reference, t2));
  for (int n = base.min_n; n <= base.max_n; ++n)
    CHECK(reference.solved_cells(n) == t2.solved_cells(n));

  tweaked = base;
  tweaked.pruning = false;
  se::Lattice unpruned = se::run_search(tweaked);
  CHECK(rows_of(se::minimal_impossibilities(unpruned)) == ref_rows);
  for (int n = base.min_n; n <= base.max_n; ++n)
    for (uint32_t m = 0; m < reference.cells_per_level(); ++m)
      CHECK(reference.state(m, n) == unpruned.state(m, n));
}

TEST_CASE("report rendering and CSV round trip") {
  se::Lattice lat = se::run_search(small_config("LIN_E,SUA_V,SUA_P,SDOM,STRICT_IND", 3));
  auto res = se::minimal_impossibilities(lat);
  std::string text = se::render_report(lat, se::ReportFormat::Text);
  CHECK(text.find("SUAv") != std::string::npos);
  CHECK(text.find("minimal impossibilities: 2") != std::string::npos);

  std::string csv = se::render_report(lat, se::ReportFormat::Csv);
  auto parsed = se::parse_csv_report(csv);
  REQUIRE(parsed.size() == res.minimal.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].size == res.minimal[i].size);
    CHECK(parsed[i].axioms == res.minimal[i].axioms);
  }

  std::string json = se::render_report(lat, se::ReportFormat::Json);
  CHECK(json.find("\"complete\": true") != std::string::npos);
}
