#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ranksets/axioms.hpp"
#include "ranksets/sat.hpp"
#include "support/drat_check.hpp"

using namespace ranksets;

TEST_CASE("trivial formulas") {
  CnfFormula empty(0);
  CHECK(sat::solve(empty).status == sat::Status::Sat);

  CnfFormula contradiction(1);
  contradiction.add_clause({1});
  contradiction.add_clause({-1});
  CHECK(sat::solve(contradiction).status == sat::Status::Unsat);

  CnfFormula taut(1);
  taut.add_clause({1, -1});
  CHECK(sat::solve(taut).status == sat::Status::Sat);

  CnfFormula empty_clause(2);
  empty_clause.add_clause({});
  CHECK(sat::solve(empty_clause).status == sat::Status::Unsat);
}

TEST_CASE("malformed CNF is rejected") {
  CnfFormula f(2);
  f.add_clause({1, 3});  // literal beyond the declared count
  CHECK_THROWS_AS(sat::solve(f), std::invalid_argument);
}

TEST_CASE("solving the element-order axioms yields a linear order") {
  CnfFormula f = instance_cnf({axiom_bit(AxiomId::LIN_E), 3});
  sat::Verdict v = sat::solve(f);
  REQUIRE(v.status == sat::Status::Sat);
  auto [ord, rel] = decode_model(v.model, Domain(3));
  CHECK(ord.is_linear());
  (void)rel;
}

TEST_CASE("models are total and verified") {
  CnfFormula f(4);
  f.add_clause({1, 2});
  f.add_clause({-1, 3});
  f.add_clause({-3, -2, 4});
  sat::Verdict v = sat::solve(f);
  REQUIRE(v.status == sat::Status::Sat);
  REQUIRE(v.model.size() == 5);
  for (int var = 1; var <= 4; ++var) CHECK((v.model[var] == 0 || v.model[var] == 1));
  CHECK(sat::model_satisfies(f, v.model));
}

TEST_CASE("pigeonhole instances") {
  // PHP(h+1, h): pigeon i gets variable (i*h + j + 1) for hole j.
  auto php = [](int holes) {
    int pigeons = holes + 1;
    CnfFormula f(pigeons * holes);
    std::vector<Lit> c;
    for (int i = 0; i < pigeons; ++i) {
      c.clear();
      for (int j = 0; j < holes; ++j) c.push_back(i * holes + j + 1);
      f.add_clause(c);
    }
    for (int j = 0; j < holes; ++j)
      for (int i = 0; i < pigeons; ++i)
        for (int k = i + 1; k < pigeons; ++k)
          f.add_clause({-(i * holes + j + 1), -(k * holes + j + 1)});
    return f;
  };
  for (int holes : {2, 3, 4, 5}) {
    CHECK(sat::solve(php(holes)).status == sat::Status::Unsat);
  }
}

TEST_CASE("determinism") {
  CnfFormula f = instance_cnf({parse_axiom_list("LIN_E,REFL_S,COMPL_S,TRANS_S,GF1,GF2"), 4});
  sat::SolverConfig cfg;
  cfg.seed = 42;
  sat::Verdict a = sat::solve(f, cfg);
  sat::Verdict b = sat::solve(f, cfg);
  REQUIRE(a.status == sat::Status::Sat);
  CHECK(a.model == b.model);
}

TEST_CASE("conflict budget yields Unknown") {
  // A hard instance with a tiny budget.
  CnfFormula f = instance_cnf({parse_axiom_list("LIN_E,COMPL_S,TRANS_S,GF1,GF2,IND"), 6});
  sat::SolverConfig cfg;
  cfg.conflict_budget = 5;
  sat::Verdict v = sat::solve(f, cfg);
  CHECK(v.status == sat::Status::Unknown);
  CHECK(v.reason == sat::UnknownReason::ConflictBudget);
}

TEST_CASE("verdicts are invariant under variable renaming") {
  std::mt19937 rng(5);
  for (AxiomSet extra : {parse_axiom_list("GF1,GF2,IND"), parse_axiom_list("SUA_V,SUA_P"),
                         parse_axiom_list("SDOM,STRICT_IND")}) {
    AxiomSet axioms = parse_axiom_list("LIN_E,REFL_S,COMPL_S,TRANS_S") | extra;
    CnfFormula f = instance_cnf({axioms, 3});
    std::vector<int> perm(static_cast<size_t>(f.num_vars()) + 1);
    for (int v = 1; v <= f.num_vars(); ++v) perm[static_cast<size_t>(v)] = v;
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    CnfFormula g(f.num_vars());
    std::vector<Lit> c;
    for (size_t i = 0; i < f.num_clauses(); ++i) {
      c.clear();
      for (Lit l : f.clause(i))
        c.push_back(l > 0 ? perm[static_cast<size_t>(l)] : -perm[static_cast<size_t>(-l)]);
      g.add_clause(c);
    }
    CHECK(sat::solve(f).status == sat::solve(g).status);
  }
}

TEST_CASE("dimacs round trip and format") {
  CnfFormula f(2);
  f.add_clause({1, -2});
  CHECK(sat::export_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
  CnfFormula back = sat::import_dimacs(sat::export_dimacs(f));
  CHECK(back == f);

  CHECK(sat::import_dimacs("p cnf 0 0\n").num_clauses() == 0);
  CnfFormula unit = sat::import_dimacs("c comment\np cnf 1 1\n1 0\n");
  CHECK(unit.num_clauses() == 1);
  CHECK(unit.num_vars() == 1);

  CHECK_THROWS_AS(sat::import_dimacs("nonsense\n"), sat::DimacsError);
  CHECK_THROWS_AS(sat::import_dimacs("p cnf x y\n"), sat::DimacsError);
  CHECK_THROWS_AS(sat::import_dimacs("p cnf 1 1\n2 0\n"), sat::DimacsError);
  CHECK_THROWS_AS(sat::import_dimacs("p cnf 2 1\n1 -2\n"), sat::DimacsError);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    CnfFormula r(10);
    std::vector<Lit> c;
    for (int i = 0; i < 15; ++i) {
      c.clear();
      int len = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < len; ++j) {
        int v = 1 + static_cast<int>(rng() % 10);
        c.push_back(rng() & 1 ? v : -v);
      }
      r.add_clause(c);
    }
    CHECK(sat::import_dimacs(sat::export_dimacs(r)) == r);
  }
}

TEST_CASE("drat traces check out on small unsat cores") {
  CnfFormula f(1);
  f.add_clause({1});
  f.add_clause({-1});
  sat::StringDratWriter drat;
  CHECK(sat::solve(f, {}, &drat).status == sat::Status::Unsat);
  std::string err;
  CHECK(dratcheck::check_refutation(f, drat.text(), &err));

  // Impossibility of uncertainty aversion plus appeal at n = 3.
  CnfFormula no2 = instance_cnf({parse_axiom_list("LIN_E,SUA_V,SUA_P"), 3});
  sat::StringDratWriter drat2;
  REQUIRE(sat::solve(no2, {}, &drat2).status == sat::Status::Unsat);
  CHECK(dratcheck::check_refutation(no2, drat2.text(), &err));
}

TEST_CASE("the checker rejects bogus traces") {
  CnfFormula f(2);
  f.add_clause({1, 2});
  std::string err;
  // Claims the empty clause without support.
  CHECK(!dratcheck::check_refutation(f, "0\n", &err));
  // Adds a non-RUP clause and then the empty clause.
  CHECK(!dratcheck::check_refutation(f, "-1 0\n-2 0\n1 0\n0\n", &err));
  // A trace that never derives the empty clause is no refutation.
  CnfFormula g(1);
  g.add_clause({1});
  g.add_clause({-1});
  CHECK(!dratcheck::check_refutation(g, "", &err));
}

TEST_CASE("incremental solving under selector assumptions matches one-shot") {
  std::mt19937 rng(29);
  for (int n : {2, 3, 4}) {
    Domain d(n);
    std::vector<CnfFormula> by_axiom;
    for (int i = 0; i < kNumAxioms; ++i)
      by_axiom.push_back(clauses_for(static_cast<AxiomId>(i), d));
    sat::IncrementalSolver inc(d.num_vars() + kNumAxioms);
    for (int i = 0; i < kNumAxioms; ++i)
      inc.add_formula(by_axiom[static_cast<size_t>(i)], d.num_vars() + 1 + i);

    for (int trial = 0; trial < 120; ++trial) {
      AxiomSet axioms = rng() & kFullAxiomSet;
      std::vector<Lit> assumps;
      std::vector<const CnfFormula*> parts;
      for (int i = 0; i < kNumAxioms; ++i)
        if (axioms >> i & 1u) {
          assumps.push_back(d.num_vars() + 1 + i);
          parts.push_back(&by_axiom[static_cast<size_t>(i)]);
        }
      sat::Verdict incremental = inc.solve(assumps);
      sat::Verdict oneshot = sat::solve_parts(parts, d.num_vars());
      CAPTURE(n);
      CAPTURE(axioms);
      REQUIRE(incremental.status == oneshot.status);
      if (incremental.status == sat::Status::Sat)
        for (const CnfFormula* f : parts)
          CHECK(sat::model_satisfies(*f, incremental.model));
    }
  }
}

TEST_CASE("incremental solver reports database-level unsat permanently") {
  sat::IncrementalSolver inc(3);
  inc.add_clause({1});
  CHECK(inc.solve(std::vector<Lit>{2}).status == sat::Status::Sat);
  inc.add_clause({-1});
  CHECK(inc.solve(std::vector<Lit>{}).status == sat::Status::Unsat);
  CHECK(inc.solve(std::vector<Lit>{3}).status == sat::Status::Unsat);

  // A failed assumption is relative, not permanent.
  sat::IncrementalSolver inc2(2);
  inc2.add_clause({1});
  CHECK(inc2.solve(std::vector<Lit>{-1}).status == sat::Status::Unsat);
  CHECK(inc2.solve(std::vector<Lit>{1, 2}).status == sat::Status::Sat);

  // Clauses added after a SAT call must not be simplified against the stale
  // deep-level assignment left by that call.
  sat::IncrementalSolver inc3(4);
  inc3.add_clause({1, 2});
  CHECK(inc3.solve(std::vector<Lit>{}).status == sat::Status::Sat);
  inc3.add_clause({3});
  inc3.add_clause({-3, 4});
  sat::Verdict v3 = inc3.solve(std::vector<Lit>{});
  REQUIRE(v3.status == sat::Status::Sat);
  CHECK(v3.model[3] == 1);
  CHECK(v3.model[4] == 1);
  CHECK(inc3.solve(std::vector<Lit>{-4}).status == sat::Status::Unsat);
}

TEST_CASE("solver agrees with brute force on random small formulas") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    int nvars = 4 + static_cast<int>(rng() % 5);
    int nclauses = 3 + static_cast<int>(rng() % 30);
    CnfFormula f(nvars);
    std::vector<Lit> c;
    for (int i = 0; i < nclauses; ++i) {
      c.clear();
      int len = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < len; ++j) {
        int v = 1 + static_cast<int>(rng() % nvars);
        c.push_back(rng() & 1 ? v : -v);
      }
      f.add_clause(c);
    }
    bool brute_sat = false;
    for (uint32_t bits = 0; bits < (1u << nvars) && !brute_sat; ++bits) {
      Assignment a(static_cast<size_t>(nvars) + 1, 0);
      for (int v = 1; v <= nvars; ++v) a[static_cast<size_t>(v)] = (bits >> (v - 1)) & 1;
      brute_sat = sat::model_satisfies(f, a);
    }
    sat::StringDratWriter drat;
    sat::Verdict v = sat::solve(f, {}, &drat);
    CAPTURE(trial);
    CHECK(v.status == (brute_sat ? sat::Status::Sat : sat::Status::Unsat));
    if (v.status == sat::Status::Unsat) {
      std::string err;
      CHECK(dratcheck::check_refutation(f, drat.text(), &err));
    }
  }
}
