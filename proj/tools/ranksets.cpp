#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ranksets/axioms.hpp"
#include "ranksets/mslsp.hpp"
#include "ranksets/sat.hpp"
#include "ranksets/search.hpp"

namespace {

using namespace ranksets;

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;
constexpr int kExitUsage = 64;
constexpr int kExitError = 1;

std::string element_name(int code) { return "x" + std::to_string(code + 1); }

std::string set_name(SetCode s, int n) {
  std::string out = "{";
  bool first = true;
  for (int x = 0; x < n; ++x) {
    if (!set_member(x, s)) continue;
    if (!first) out += ", ";
    out += element_name(x);
    first = false;
  }
  return out + "}";
}

// Chain rendering: classes ordered best to worst, "≻" between classes,
// "∼" inside a class.
std::string element_chain(const ElementOrder& ord) {
  int n = ord.size();
  std::vector<int> rank(static_cast<size_t>(n), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (ord.strict(y, x)) ++rank[static_cast<size_t>(x)];
  std::string out;
  for (int level = 0, printed = 0; printed < n && level < n; ++level) {
    bool first_in_class = true;
    for (int x = 0; x < n; ++x) {
      if (rank[static_cast<size_t>(x)] != level) continue;
      if (!out.empty()) out += first_in_class ? " ≻ " : " ∼ ";
      out += element_name(x);
      first_in_class = false;
      ++printed;
    }
  }
  return out;
}

std::string set_chain(const SetRelation& rel) {
  int n = rel.domain_size();
  int m = rel.num_sets();
  std::vector<int> rank(static_cast<size_t>(m) + 1, 0);
  for (int s = 1; s <= m; ++s)
    for (int t = 1; t <= m; ++t)
      if (rel.strict(static_cast<SetCode>(t), static_cast<SetCode>(s)))
        ++rank[static_cast<size_t>(s)];
  std::string out;
  for (int level = 0, printed = 0; printed < m && level <= m; ++level) {
    bool first_in_class = true;
    for (int s = 1; s <= m; ++s) {
      if (rank[static_cast<size_t>(s)] != level) continue;
      if (!out.empty()) out += first_in_class ? " ≻ " : " ∼ ";
      out += set_name(static_cast<SetCode>(s), n);
      first_in_class = false;
      ++printed;
    }
  }
  return out;
}

size_t estimated_bytes(AxiomSet axioms, int n) {
  size_t clauses = 0;
  for (AxiomId a : axiom_set_members(axioms)) clauses += clause_count_formula(a, n);
  return estimate_cnf_bytes(clauses, 2.0 * n + 3.0);
}

struct CommonSolveOpts {
  std::string axioms_arg = "all";
  int size = 3;
  int64_t conflicts = -1;
  int64_t time_budget_ms = -1;
  uint64_t seed = 1;
  std::string solver = "builtin";
  std::string external_cmd;
  size_t mem_limit_mb = 8192;
};

void add_solver_opts(CLI::App* cmd, CommonSolveOpts& o) {
  cmd->add_option("--conflicts", o.conflicts, "conflict budget per instance (-1 = none)");
  cmd->add_option("--time-budget", o.time_budget_ms,
                  "wall-clock budget per instance in ms (-1 = none)");
  cmd->add_option("--seed", o.seed, "solver seed echoed into outputs");
  cmd->add_option("--mem-limit", o.mem_limit_mb,
                  "refuse instances estimated above this (MiB)");
}

sat::SolverConfig solver_config(const CommonSolveOpts& o) {
  sat::SolverConfig c;
  c.conflict_budget = o.conflicts;
  c.time_budget_ms = o.time_budget_ms;
  c.seed = o.seed;
  return c;
}

std::string external_command(const CommonSolveOpts& o) {
  if (!o.external_cmd.empty()) return o.external_cmd;
  const char* env = std::getenv("RANKSETS_EXTERNAL_SOLVER");
  return env ? env : "";
}

void check_memory(const CommonSolveOpts& o, AxiomSet axioms, int size) {
  size_t est = estimated_bytes(axioms, size);
  if (est > o.mem_limit_mb * 1024 * 1024)
    throw std::runtime_error("instance at size " + std::to_string(size) +
                             " is estimated at " + std::to_string(est / (1024 * 1024)) +
                             " MiB, above the limit of " + std::to_string(o.mem_limit_mb) +
                             " MiB (raise --mem-limit to proceed)");
}

int exit_code_for(sat::Status s) {
  switch (s) {
    case sat::Status::Sat: return kExitSat;
    case sat::Status::Unsat: return kExitUnsat;
    case sat::Status::Unknown: return kExitUnknown;
  }
  return kExitError;
}

int run_check(const CommonSolveOpts& o, const std::string& proof_path) {
  AxiomSet axioms = parse_axiom_list(o.axioms_arg);
  check_memory(o, axioms, o.size);
  CnfFormula f = instance_cnf({axioms, o.size});
  std::cout << "axioms: " << axiom_set_to_string(axioms) << "\n"
            << "size: " << o.size << "\n"
            << "variables: " << f.num_vars() << "\n"
            << "clauses: " << f.num_clauses() << "\n";

  auto start = std::chrono::steady_clock::now();
  sat::Verdict v;
  sat::StringDratWriter drat;
  bool want_proof = !proof_path.empty();
  if (o.solver == "external") {
    std::string cmd = external_command(o);
    if (cmd.empty())
      throw std::runtime_error(
          "no external solver configured (--external-cmd or RANKSETS_EXTERNAL_SOLVER)");
    v = sat::run_external_solver(f, cmd);
  } else {
    v = sat::solve(f, solver_config(o), want_proof ? &drat : nullptr);
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << "verdict: " << sat::status_name(v.status) << "\n";
  std::fprintf(stderr, "time: %.3fs\n", secs);
  if (want_proof) {
    if (v.status == sat::Status::Unsat) {
      std::ofstream os(proof_path);
      os << drat.text();
      std::cout << "proof: " << proof_path << "\n";
    } else {
      std::cerr << "error: no proof trace: instance is not UNSAT\n";
    }
  }
  return exit_code_for(v.status);
}

int run_witness(const CommonSolveOpts& o) {
  AxiomSet axioms = parse_axiom_list(o.axioms_arg);
  check_memory(o, axioms, o.size);
  CnfFormula f = instance_cnf({axioms, o.size});
  sat::Verdict v = sat::solve(f, solver_config(o));
  if (v.status != sat::Status::Sat) {
    std::cout << "no witness: instance is " << sat::status_name(v.status) << "\n";
    return exit_code_for(v.status);
  }
  Domain d(o.size);
  auto [ord, rel] = decode_model(v.model, d);
  std::cout << element_chain(ord) << "\n" << set_chain(rel) << "\n";
  return kExitSat;
}

int run_dimacs(const CommonSolveOpts& o, const std::string& out_path) {
  AxiomSet axioms = parse_axiom_list(o.axioms_arg);
  check_memory(o, axioms, o.size);
  CnfFormula f = instance_cnf({axioms, o.size});
  if (out_path.empty() || out_path == "-") {
    sat::write_dimacs(f, std::cout);
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    sat::write_dimacs(f, os);
  }
  return 0;
}

int run_esg_check(const std::vector<std::string>& files) {
  bool all_esg = true;
  for (const std::string& path : files) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    try {
      mslsp::EsgVerdict v = mslsp::classify_esg(mslsp::parse(buf.str()));
      if (v.is_esg) {
        std::cout << path << ": ESG\n";
      } else {
        std::cout << path << ": NotESG (" << v.reason << ")\n";
        all_esg = false;
      }
    } catch (const mslsp::ParseError& e) {
      std::cout << path << ": parse error: " << e.what() << "\n";
      all_esg = false;
    }
  }
  return all_esg ? 0 : 1;
}

int run_ground(const std::string& file, int size, const std::string& out_path,
               size_t budget) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot read " + file);
  std::stringstream buf;
  buf << is.rdbuf();
  mslsp::Formula f = mslsp::parse(buf.str());
  mslsp::GroundOptions opts;
  opts.max_direct_literals = budget;
  CnfFormula cnf = mslsp::ground(f, Domain(size), opts);
  if (out_path.empty() || out_path == "-") {
    sat::write_dimacs(cnf, std::cout);
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    sat::write_dimacs(cnf, os);
  }
  return 0;
}

struct StderrProgress final : search::ProgressSink {
  void on_level_start(int n, size_t unresolved) override {
    std::fprintf(stderr, "level n=%d: %zu cells to resolve\n", n, unresolved);
  }
  void on_progress(int n, size_t solved, size_t unresolved) override {
    if (solved % 8192 != 0) return;
    std::fprintf(stderr, "level n=%d: %zu solved, %zu open\n", n, solved, unresolved);
  }
};

int run_search_cmd(const CommonSolveOpts& o, int max_size, const std::string& out_prefix,
                   const std::string& checkpoint, int workers, uint64_t switch_interval,
                   bool no_pruning, bool retry_timeouts, bool quiet) {
  search::SearchConfig cfg;
  cfg.universe = parse_axiom_list(o.axioms_arg);
  cfg.max_n = max_size;
  cfg.workers = workers;
  cfg.seed = o.seed;
  cfg.conflict_budget = o.conflicts;
  cfg.time_budget_ms = o.time_budget_ms;
  cfg.switch_interval = switch_interval;
  cfg.pruning = !no_pruning;
  cfg.checkpoint_path = checkpoint;
  cfg.retry_timeouts = retry_timeouts;
  cfg.esg_certified = mslsp::esg_certified_axioms();

  check_memory(o, cfg.universe, max_size);

  StderrProgress progress;
  search::Lattice lat = search::run_search(cfg, quiet ? nullptr : &progress);

  std::string text = search::render_report(lat, search::ReportFormat::Text);
  std::cout << text;
  if (!out_prefix.empty()) {
    auto write = [](const std::string& path, const std::string& data) {
      std::ofstream os(path);
      if (!os) throw std::runtime_error("cannot write " + path);
      os << data;
    };
    write(out_prefix + ".txt", text);
    write(out_prefix + ".csv", search::render_report(lat, search::ReportFormat::Csv));
    write(out_prefix + ".json", search::render_report(lat, search::ReportFormat::Json));
  }
  return 0;
}

// Rebuilds the lattice recorded in a checkpoint and renders it.
int run_report(const std::string& checkpoint, const std::string& format) {
  std::ifstream is(checkpoint);
  if (!is) throw std::runtime_error("cannot read " + checkpoint);
  std::string header;
  std::getline(is, header);
  search::SearchConfig cfg;
  unsigned universe = 0;
  int version = 0;
  if (std::sscanf(header.c_str(), "# ranksets-checkpoint %d universe=%x min=%d max=%d",
                  &version, &universe, &cfg.min_n, &cfg.max_n) != 4)
    throw std::runtime_error(checkpoint + ": missing or malformed checkpoint header");
  cfg.universe = universe;
  // A resumed run may have appended records beyond the original header range.
  std::string line;
  while (std::getline(is, line)) {
    unsigned mask;
    int size;
    if (std::sscanf(line.c_str(), "%x %d", &mask, &size) == 2 && size > cfg.max_n)
      cfg.max_n = size;
  }
  cfg.esg_certified = mslsp::esg_certified_axioms();
  search::Lattice lat = search::checkpoint_load(checkpoint, cfg);

  search::ReportFormat fmt = search::ReportFormat::Text;
  if (format == "csv")
    fmt = search::ReportFormat::Csv;
  else if (format == "json")
    fmt = search::ReportFormat::Json;
  std::cout << search::render_report(lat, fmt);
  return 0;
}

// SAT-competition style front end over the built-in solver, so that this
// binary can stand in as an external solver.
int run_solve_dimacs(const std::string& path, const std::string& proof_path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  CnfFormula f = sat::import_dimacs(buf.str());
  sat::StringDratWriter drat;
  sat::Verdict v = sat::solve(f, {}, proof_path.empty() ? nullptr : &drat);
  if (v.status == sat::Status::Sat) {
    std::cout << "s SATISFIABLE\n";
    std::string line = "v";
    for (int var = 1; var <= f.num_vars(); ++var) {
      line += v.model[static_cast<size_t>(var)] ? ' ' + std::to_string(var)
                                                : " -" + std::to_string(var);
      if (line.size() > 72) {
        std::cout << line << "\n";
        line = "v";
      }
    }
    std::cout << line << " 0\n";
    return 10;
  }
  if (v.status == sat::Status::Unsat) {
    if (!proof_path.empty()) {
      std::ofstream os(proof_path);
      os << drat.text();
    }
    std::cout << "s UNSATISFIABLE\n";
    return 20;
  }
  std::cout << "s UNKNOWN\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "SAT-based verification and discovery of impossibility theorems for "
      "ranking sets of objects"};
  app.require_subcommand(1);

  CommonSolveOpts check_opts, witness_opts, dimacs_opts, search_opts;
  std::string proof_path, dimacs_out;

  auto* check = app.add_subcommand("check", "decide one axiom set at one domain size");
  check->add_option("--axioms", check_opts.axioms_arg, "comma list of axioms, or 'all'")
      ->required();
  check->add_option("--size", check_opts.size, "domain size")->required();
  check->add_option("--solver", check_opts.solver, "builtin|external")
      ->check(CLI::IsMember({"builtin", "external"}));
  check->add_option("--external-cmd", check_opts.external_cmd,
                    "external solver command (overrides RANKSETS_EXTERNAL_SOLVER)");
  check->add_option("--proof", proof_path, "write a DRAT trace here on UNSAT");
  add_solver_opts(check, check_opts);

  auto* witness = app.add_subcommand("witness", "print a satisfying pair of orders");
  witness->add_option("--axioms", witness_opts.axioms_arg, "comma list of axioms")
      ->required();
  witness->add_option("--size", witness_opts.size, "domain size")->required();
  add_solver_opts(witness, witness_opts);

  auto* dimacs = app.add_subcommand("dimacs", "write the instance CNF in DIMACS format");
  dimacs->add_option("--axioms", dimacs_opts.axioms_arg, "comma list of axioms")
      ->required();
  dimacs->add_option("--size", dimacs_opts.size, "domain size")->required();
  dimacs->add_option("-o,--out", dimacs_out, "output path (default stdout)");
  add_solver_opts(dimacs, dimacs_opts);

  std::vector<std::string> esg_files;
  auto* esg = app.add_subcommand("esg-check", "classify MSLSP files as ESG or not");
  esg->add_option("files", esg_files, "MSLSP files")->required();

  std::string ground_file, ground_out;
  int ground_size = 3;
  size_t ground_budget = 1'000'000;
  auto* ground = app.add_subcommand("ground", "ground an MSLSP file to DIMACS CNF");
  ground->add_option("file", ground_file, "MSLSP file")->required();
  ground->add_option("--size", ground_size, "domain size")->required();
  ground->add_option("-o,--out", ground_out, "output path (default stdout)");
  ground->add_option("--budget", ground_budget,
                     "max literals for direct distribution before switching to "
                     "definitional conversion");

  int search_max = 4, search_workers = 1;
  uint64_t switch_interval = 4096;
  std::string search_out, search_ckpt;
  bool no_pruning = false, retry_timeouts = false, quiet = false;
  auto* searchc = app.add_subcommand("search", "exhaustive lattice search");
  searchc->add_option("--axioms", search_opts.axioms_arg, "axiom universe, or 'all'")
      ->required();
  searchc->add_option("--max-size", search_max, "largest domain size")->required();
  searchc->add_option("--out", search_out, "output prefix (.txt/.csv/.json written)");
  searchc->add_option("--checkpoint", search_ckpt, "append-only checkpoint file");
  searchc->add_option("--workers", search_workers, "parallel solver workers");
  searchc->add_option("--switch-interval", switch_interval,
                      "solved cells between sweep direction flips (0 = full sweep)");
  searchc->add_flag("--no-pruning", no_pruning, "solve every cell directly");
  searchc->add_flag("--retry-timeouts", retry_timeouts,
                    "re-solve TIMEOUT cells from the checkpoint");
  searchc->add_flag("--quiet", quiet, "suppress progress output");
  add_solver_opts(searchc, search_opts);

  std::string report_ckpt, report_format = "text";
  auto* report = app.add_subcommand("report", "render a report from a checkpoint");
  report->add_option("--checkpoint", report_ckpt, "checkpoint file")->required();
  report->add_option("--format", report_format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::string sd_file, sd_proof;
  auto* solve_dimacs =
      app.add_subcommand("solve-dimacs", "solve a DIMACS file (SAT-competition output)");
  solve_dimacs->add_option("file", sd_file, "DIMACS CNF file")->required();
  solve_dimacs->add_option("--proof", sd_proof, "write a DRAT trace here on UNSAT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(check_opts, proof_path);
    if (witness->parsed()) return run_witness(witness_opts);
    if (dimacs->parsed()) return run_dimacs(dimacs_opts, dimacs_out);
    if (esg->parsed()) return run_esg_check(esg_files);
    if (ground->parsed())
      return run_ground(ground_file, ground_size, ground_out, ground_budget);
    if (searchc->parsed())
      return run_search_cmd(search_opts, search_max, search_out, search_ckpt,
                            search_workers, switch_interval, no_pruning, retry_timeouts,
                            quiet);
    if (report->parsed()) return run_report(report_ckpt, report_format);
    if (solve_dimacs->parsed()) return run_solve_dimacs(sd_file, sd_proof);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
