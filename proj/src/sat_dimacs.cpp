#include <sys/wait.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "ranksets/sat.hpp"

namespace ranksets::sat {

void write_dimacs(const CnfFormula& f, std::ostream& os) {
  os << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (size_t i = 0; i < f.num_clauses(); ++i) {
    for (Lit l : f.clause(i)) os << l << ' ';
    os << "0\n";
  }
}

std::string export_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars()) + ' ' +
                    std::to_string(f.num_clauses()) + '\n';
  char buf[16];
  for (size_t i = 0; i < f.num_clauses(); ++i) {
    for (Lit l : f.clause(i)) {
      int len = std::snprintf(buf, sizeof buf, "%d ", l);
      out.append(buf, static_cast<size_t>(len));
    }
    out += "0\n";
  }
  return out;
}

CnfFormula import_dimacs(std::string_view text) {
  CnfFormula f;
  int line = 1;
  size_t pos = 0;
  bool have_header = false;
  std::vector<Lit> clause;
  bool in_clause = false;

  auto skip_ws = [&] {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == 'c' && !in_clause) {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };

  skip_ws();
  if (pos >= text.size() || text[pos] != 'p')
    throw DimacsError(line, "missing 'p cnf' header");
  {
    size_t eol = text.find('\n', pos);
    std::string header(text.substr(pos, eol == std::string_view::npos
                                            ? std::string_view::npos
                                            : eol - pos));
    int vars = 0, clauses = 0;
    if (std::sscanf(header.c_str(), "p cnf %d %d", &vars, &clauses) != 2 || vars < 0 ||
        clauses < 0)
      throw DimacsError(line, "malformed header: '" + header + "'");
    f.set_num_vars(vars);
    have_header = true;
    pos = eol == std::string_view::npos ? text.size() : eol;
  }

  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    char c = text[pos];
    bool neg = false;
    if (c == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw DimacsError(line, "expected a literal");
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > INT32_MAX) throw DimacsError(line, "literal out of range");
      ++pos;
    }
    if (v == 0) {
      f.add_clause(clause);
      clause.clear();
      in_clause = false;
    } else {
      if (v > f.num_vars())
        throw DimacsError(line, "literal " + std::to_string(v) +
                                    " beyond declared variable count " +
                                    std::to_string(f.num_vars()));
      clause.push_back(neg ? -static_cast<Lit>(v) : static_cast<Lit>(v));
      in_clause = true;
    }
  }
  if (in_clause) throw DimacsError(line, "missing clause terminator before end of input");
  (void)have_header;
  return f;
}

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    char tmpl[] = "/tmp/ranksets_XXXXXX";
    int fd = mkstemp(tmpl);
    if (fd < 0) throw std::runtime_error("cannot create temp file");
    path = tmpl;
    FILE* fp = fdopen(fd, "w");
    fwrite(contents.data(), 1, contents.size(), fp);
    fclose(fp);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

Verdict run_external_solver(const CnfFormula& f, const std::string& command) {
  TempFile tmp(export_dimacs(f));
  std::string cmd = command + " " + tmp.path + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run external solver: " + command);
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int rc = pclose(pipe);

  Verdict v;
  bool claimed_sat = false, claimed_unsat = false;
  std::vector<Lit> vlits;
  std::istringstream is(output);
  std::string word_line;
  while (std::getline(is, word_line)) {
    std::istringstream ls(word_line);
    std::string tok;
    ls >> tok;
    if (tok == "s") ls >> tok;
    if (tok == "UNSATISFIABLE")
      claimed_unsat = true;
    else if (tok == "SATISFIABLE")
      claimed_sat = true;
    else if (tok == "v") {
      long x;
      while (ls >> x)
        if (x != 0) vlits.push_back(static_cast<Lit>(x));
    }
  }
  if (!claimed_sat && !claimed_unsat) {
    // Fall back to the SAT-competition exit codes.
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (code == 10)
      claimed_sat = true;
    else if (code == 20)
      claimed_unsat = true;
    else {
      v.status = Status::Unknown;
      return v;
    }
  }
  if (claimed_unsat) {
    v.status = Status::Unsat;
    return v;
  }
  v.model.assign(static_cast<size_t>(f.num_vars()) + 1, 0);
  for (Lit l : vlits) {
    int var = lit_var(l);
    if (var <= f.num_vars()) v.model[static_cast<size_t>(var)] = l > 0 ? 1 : 0;
  }
  if (!model_satisfies(f, v.model))
    throw std::runtime_error("external solver claimed SAT but its model fails verification");
  v.status = Status::Sat;
  return v;
}

}  // namespace ranksets::sat
