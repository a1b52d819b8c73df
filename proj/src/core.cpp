#include "ranksets/core.hpp"

#include <algorithm>

namespace ranksets {

void CnfFormula::add_clause(std::span<const Lit> lits) {
  offsets_.push_back(static_cast<uint32_t>(lits_.size()));
  size_t begin = lits_.size();
  lits_.insert(lits_.end(), lits.begin(), lits.end());
  auto first = lits_.begin() + static_cast<ptrdiff_t>(begin);
  // Sort by variable, negative literal first on ties, then drop duplicates.
  std::sort(first, lits_.end(), [](Lit a, Lit b) {
    int va = lit_var(a), vb = lit_var(b);
    if (va != vb) return va < vb;
    return a < b;
  });
  lits_.erase(std::unique(first, lits_.end()), lits_.end());
}

void CnfFormula::append(const CnfFormula& other) {
  if (other.num_vars_ != num_vars_)
    throw std::invalid_argument("appending CNF over a different variable space");
  uint32_t base = static_cast<uint32_t>(lits_.size());
  lits_.insert(lits_.end(), other.lits_.begin(), other.lits_.end());
  offsets_.reserve(offsets_.size() + other.offsets_.size());
  for (uint32_t off : other.offsets_) offsets_.push_back(base + off);
}

bool ElementOrder::is_linear() const {
  for (int x = 0; x < n_; ++x)
    if (!at(x, x)) return false;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) {
      if (x != y && !at(x, y) && !at(y, x)) return false;
      if (x != y && at(x, y) && at(y, x)) return false;
    }
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      for (int z = 0; z < n_; ++z)
        if (at(x, y) && at(y, z) && !at(x, z)) return false;
  return true;
}

ElementOrder canonical_linear_order(const Domain& d) {
  ElementOrder ord(d.size());
  for (int x = 0; x < d.size(); ++x)
    for (int y = x; y < d.size(); ++y) ord.set(x, y, true);
  return ord;
}

bool SetRelation::is_weak_order() const {
  int m = num_sets_;
  for (int a = 1; a <= m; ++a)
    if (!weak(a, a)) return false;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      if (a != b && !weak(a, b) && !weak(b, a)) return false;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      if (!weak(a, b)) continue;
      for (int c = 1; c <= m; ++c)
        if (weak(b, c) && !weak(a, c)) return false;
    }
  return true;
}

std::pair<ElementOrder, SetRelation> decode_model(const Assignment& a, const Domain& d) {
  int nv = d.num_vars();
  if (static_cast<int>(a.size()) <= nv)
    throw std::invalid_argument("assignment shorter than the variable range");
  for (int v = 1; v <= nv; ++v)
    if (a[static_cast<size_t>(v)] != 0 && a[static_cast<size_t>(v)] != 1)
      throw std::invalid_argument("partial assignment: variable " + std::to_string(v) +
                                  " unassigned");
  ElementOrder ord(d.size());
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y)
      ord.set(x, y, a[static_cast<size_t>(d.var_l(x, y))] == 1);
  SetRelation rel(d.size());
  int m = d.num_sets();
  for (int s = 1; s <= m; ++s)
    for (int t = 1; t <= m; ++t)
      rel.set(static_cast<SetCode>(s), static_cast<SetCode>(t),
              a[static_cast<size_t>(d.var_w(static_cast<SetCode>(s),
                                            static_cast<SetCode>(t)))] == 1);
  return {ord, rel};
}

Assignment encode_model(const ElementOrder& ord, const SetRelation& rel, const Domain& d) {
  Assignment a(static_cast<size_t>(d.num_vars()) + 1, 0);
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y)
      a[static_cast<size_t>(d.var_l(x, y))] = ord.at(x, y) ? 1 : 0;
  int m = d.num_sets();
  for (int s = 1; s <= m; ++s)
    for (int t = 1; t <= m; ++t)
      a[static_cast<size_t>(d.var_w(static_cast<SetCode>(s), static_cast<SetCode>(t)))] =
          rel.weak(static_cast<SetCode>(s), static_cast<SetCode>(t)) ? 1 : 0;
  return a;
}

namespace {

ElementCode extreme_of(SetCode a, const ElementOrder& ord, bool want_max) {
  if (a == 0) throw std::invalid_argument("empty set has no extremum");
  if (!ord.is_linear()) throw std::invalid_argument("element order is not linear");
  ElementCode best = -1;
  for (ElementCode x = 0; x < ord.size(); ++x) {
    if (!set_member(x, a)) continue;
    if (best < 0) {
      best = x;
    } else if (want_max ? ord.strict(x, best) : ord.strict(best, x)) {
      best = x;
    }
  }
  return best;
}

}  // namespace

ElementCode max_of(SetCode a, const ElementOrder& ord) { return extreme_of(a, ord, true); }
ElementCode min_of(SetCode a, const ElementOrder& ord) { return extreme_of(a, ord, false); }

size_t estimate_cnf_bytes(size_t clauses, double avg_len) {
  // Flat literal buffer plus offsets plus solver-side watches/metadata.
  double lits = static_cast<double>(clauses) * avg_len;
  return static_cast<size_t>(lits * 4.0 * 2.5 + static_cast<double>(clauses) * 8.0);
}

}  // namespace ranksets
