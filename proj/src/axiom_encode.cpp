#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "ranksets/axioms.hpp"

namespace ranksets {

namespace {

constexpr std::string_view kNames[kNumAxioms] = {
    "LIN_E",  "REFL_S",    "COMPL_S", "TRANS_S",   "EXT",     "SDOM",    "GF1",
    "GF2",    "IND",       "STRICT_IND", "SUA_V",  "SUA_P",   "S_TOP_MON",
    "S_BOT_MON", "TOP_IND", "BOT_IND", "DIS_IND",  "INT_IND", "EVEN_EXT", "MC"};

// Report column spellings, accepted as aliases.
constexpr std::string_view kColumnNames[kNumAxioms] = {
    "LINe",   "REFLs",     "COMPLs",  "TRANSs",    "EXT",     "SDom",    "GF1",
    "GF2",    "IND",       "strictIND", "SUAv",    "SUAp",    "STopMon",
    "SBotMon", "topIND",   "botIND",  "disIND",    "intIND",  "evenExt", "MC"};

std::string normalize_key(std::string_view s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

const std::unordered_map<std::string, AxiomId>& alias_map() {
  static const auto* map = [] {
    auto* m = new std::unordered_map<std::string, AxiomId>;
    for (int i = 0; i < kNumAxioms; ++i) {
      m->emplace(normalize_key(kNames[i]), static_cast<AxiomId>(i));
      m->emplace(normalize_key(kColumnNames[i]), static_cast<AxiomId>(i));
    }
    return m;
  }();
  return *map;
}

// Appends the negation of x > y (strict) as clause literals.
void neg_lstrict(const Domain& d, ElementCode x, ElementCode y, std::vector<Lit>& out) {
  out.push_back(-d.var_l(x, y));
  out.push_back(d.var_l(y, x));
}

void neg_wstrict(const Domain& d, SetCode a, SetCode b, std::vector<Lit>& out) {
  out.push_back(-d.var_w(a, b));
  out.push_back(d.var_w(b, a));
}

}  // namespace

std::string_view axiom_name(AxiomId a) { return kNames[static_cast<int>(a)]; }

std::string_view axiom_column_name(AxiomId a) { return kColumnNames[static_cast<int>(a)]; }

std::optional<AxiomId> axiom_from_name(std::string_view name) {
  auto it = alias_map().find(normalize_key(name));
  if (it == alias_map().end()) return std::nullopt;
  return it->second;
}

AxiomSet parse_axiom_list(std::string_view text) {
  if (normalize_key(text) == "all") return kFullAxiomSet;
  AxiomSet s = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b != std::string_view::npos) {
      item = item.substr(b, e - b + 1);
      auto id = axiom_from_name(item);
      if (!id) throw std::invalid_argument("unknown axiom name: '" + std::string(item) + "'");
      s |= axiom_bit(*id);
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return s;
}

std::string axiom_set_to_string(AxiomSet s) {
  std::string out;
  for (int i = 0; i < kNumAxioms; ++i) {
    if (!(s >> i & 1u)) continue;
    if (!out.empty()) out += ",";
    out += kNames[i];
  }
  return out;
}

std::vector<AxiomId> axiom_set_members(AxiomSet s) {
  std::vector<AxiomId> out;
  for (int i = 0; i < kNumAxioms; ++i)
    if (s >> i & 1u) out.push_back(static_cast<AxiomId>(i));
  return out;
}

AxiomSet dual_axiom_set(AxiomSet s) {
  static constexpr std::pair<AxiomId, AxiomId> kPairs[] = {
      {AxiomId::GF1, AxiomId::GF2},
      {AxiomId::SUA_V, AxiomId::SUA_P},
      {AxiomId::S_TOP_MON, AxiomId::S_BOT_MON},
      {AxiomId::TOP_IND, AxiomId::BOT_IND},
  };
  AxiomSet out = s;
  for (auto [a, b] : kPairs) {
    bool ina = axiom_in(s, a), inb = axiom_in(s, b);
    out &= ~(axiom_bit(a) | axiom_bit(b));
    if (ina) out |= axiom_bit(b);
    if (inb) out |= axiom_bit(a);
  }
  return out;
}

CnfFormula clauses_for(AxiomId a, const Domain& d) {
  const int n = d.size();
  const SetCode top = d.universe();
  CnfFormula f(d.num_vars());
  std::vector<Lit> c;

  auto emit = [&](std::initializer_list<Lit> extra) {
    size_t mark = c.size();
    c.insert(c.end(), extra.begin(), extra.end());
    f.add_clause(c);
    c.resize(mark);
  };

  switch (a) {
    case AxiomId::LIN_E: {
      for (int x = 0; x < n; ++x) f.add_clause({d.var_l(x, x)});
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y) f.add_clause({d.var_l(x, y), d.var_l(y, x)});
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            f.add_clause({-d.var_l(x, y), -d.var_l(y, z), d.var_l(x, z)});
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y) f.add_clause({-d.var_l(x, y), -d.var_l(y, x)});
      break;
    }
    case AxiomId::REFL_S: {
      for (SetCode s = 1; s <= top; ++s) f.add_clause({d.var_w(s, s)});
      break;
    }
    case AxiomId::COMPL_S: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t)
          if (s != t) f.add_clause({d.var_w(s, t), d.var_w(t, s)});
      break;
    }
    case AxiomId::TRANS_S: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t)
          for (SetCode u = 1; u <= top; ++u)
            f.add_clause({-d.var_w(s, t), -d.var_w(t, u), d.var_w(s, u)});
      break;
    }
    case AxiomId::EXT: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int w = d.var_w(d.singleton(x), d.singleton(y));
          f.add_clause({-d.var_l(x, y), w});
          f.add_clause({d.var_l(x, y), -w});
        }
      break;
    }
    case AxiomId::SDOM: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          c.clear();
          neg_lstrict(d, x, y, c);
          SetCode sx = d.singleton(x), sy = d.singleton(y), sxy = sx | sy;
          emit({d.var_w(sx, sxy)});
          emit({-d.var_w(sxy, sx)});
          emit({d.var_w(sxy, sy)});
          emit({-d.var_w(sy, sxy)});
        }
      break;
    }
    case AxiomId::GF1:
    case AxiomId::GF2: {
      bool better = a == AxiomId::GF1;
      for (SetCode s = 1; s <= top; ++s)
        for (int x = 0; x < n; ++x) {
          c.clear();
          for (int e = 0; e < n; ++e) {
            if (!set_member(e, s)) continue;
            if (better)
              neg_lstrict(d, x, e, c);  // not (x > e)
            else
              neg_lstrict(d, e, x, c);  // not (e > x)
          }
          SetCode sx = s | d.singleton(x);
          if (better) {
            emit({d.var_w(sx, s)});
            emit({-d.var_w(s, sx)});
          } else {
            emit({d.var_w(s, sx)});
            emit({-d.var_w(sx, s)});
          }
        }
      break;
    }
    case AxiomId::IND:
    case AxiomId::STRICT_IND:
    case AxiomId::TOP_IND:
    case AxiomId::BOT_IND:
    case AxiomId::DIS_IND: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t) {
          if (a == AxiomId::DIS_IND && !set_disjoint(s, t)) continue;
          SetCode both = s | t;
          for (int x = 0; x < n; ++x) {
            if (set_member(x, both)) continue;
            c.clear();
            if (a == AxiomId::TOP_IND) {
              for (int y = 0; y < n; ++y)
                if (set_member(y, both)) neg_lstrict(d, x, y, c);
            } else if (a == AxiomId::BOT_IND) {
              for (int y = 0; y < n; ++y)
                if (set_member(y, both)) neg_lstrict(d, y, x, c);
            }
            neg_wstrict(d, s, t, c);
            SetCode sx = s | d.singleton(x), tx = t | d.singleton(x);
            if (a == AxiomId::STRICT_IND) {
              emit({d.var_w(sx, tx)});
              emit({-d.var_w(tx, sx)});
            } else {
              emit({d.var_w(sx, tx)});
            }
          }
        }
      break;
    }
    case AxiomId::SUA_V:
    case AxiomId::SUA_P: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            c.clear();
            neg_lstrict(d, x, y, c);
            neg_lstrict(d, y, z, c);
            SetCode mid = d.singleton(y);
            SetCode pair = d.singleton(x) | d.singleton(z);
            SetCode lhs = a == AxiomId::SUA_V ? mid : pair;
            SetCode rhs = a == AxiomId::SUA_V ? pair : mid;
            emit({d.var_w(lhs, rhs)});
            emit({-d.var_w(rhs, lhs)});
          }
      break;
    }
    case AxiomId::S_TOP_MON: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            c.clear();
            neg_lstrict(d, x, z, c);
            neg_lstrict(d, y, z, c);
            neg_lstrict(d, x, y, c);
            SetCode xz = d.singleton(x) | d.singleton(z);
            SetCode yz = d.singleton(y) | d.singleton(z);
            emit({d.var_w(xz, yz)});
            emit({-d.var_w(yz, xz)});
          }
      break;
    }
    case AxiomId::S_BOT_MON: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            c.clear();
            neg_lstrict(d, x, y, c);
            neg_lstrict(d, x, z, c);
            neg_lstrict(d, y, z, c);
            SetCode xy = d.singleton(x) | d.singleton(y);
            SetCode xz = d.singleton(x) | d.singleton(z);
            emit({d.var_w(xy, xz)});
            emit({-d.var_w(xz, xy)});
          }
      break;
    }
    case AxiomId::INT_IND: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t) {
          SetCode both = s | t;
          for (int x = 0; x < n; ++x) {
            if (set_member(x, both)) continue;
            for (int y = 0; y < n; ++y) {
              if (set_member(y, both)) continue;
              c.clear();
              for (int z = 0; z < n; ++z) {
                if (!set_member(z, both)) continue;
                neg_lstrict(d, x, z, c);
                neg_lstrict(d, z, y, c);
              }
              neg_wstrict(d, s, t, c);
              SetCode add = d.singleton(x) | d.singleton(y);
              emit({d.var_w(s | add, t | add)});
            }
          }
        }
      break;
    }
    case AxiomId::EVEN_EXT: {
      for (SetCode s = 1; s <= top; ++s) {
        if (!set_even_card(s)) continue;
        for (int x = 0; x < n; ++x) {
          if (set_member(x, s)) continue;
          for (int y = 0; y < n; ++y) {
            if (set_member(y, s)) continue;
            SetCode sx = s | d.singleton(x), sy = s | d.singleton(y);
            SetCode xy = d.singleton(x) | d.singleton(y);
            c.clear();
            c.push_back(-d.var_w(sx, d.singleton(x)));
            c.push_back(-d.var_w(d.singleton(x), sx));
            c.push_back(-d.var_w(sy, d.singleton(y)));
            c.push_back(-d.var_w(d.singleton(y), sy));
            emit({d.var_w(s | xy, xy)});
            emit({d.var_w(xy, s | xy)});
          }
        }
      }
      break;
    }
    case AxiomId::MC: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t)
          f.add_clause({-d.var_w(s, t), d.var_w(s | t, t)});
      break;
    }
  }
  return f;
}

CnfFormula instance_cnf(const ProblemInstance& p) {
  Domain d(p.n);
  CnfFormula f(d.num_vars());
  for (AxiomId a : axiom_set_members(p.axioms)) f.append(clauses_for(a, d));
  return f;
}

size_t clause_count_formula(AxiomId a, int n) {
  auto m = static_cast<size_t>((1 << n) - 1);  // |X̄| nonempty subsets
  auto nn = static_cast<size_t>(n);
  switch (a) {
    case AxiomId::LIN_E:
      return nn + 2 * nn * (nn - 1) + nn * nn * nn;
    case AxiomId::REFL_S:
      return m;
    case AxiomId::COMPL_S:
      return m * (m - 1);
    case AxiomId::TRANS_S:
      return m * m * m;
    case AxiomId::EXT:
      return 2 * nn * nn;
    case AxiomId::SDOM:
      return 4 * nn * nn;
    case AxiomId::GF1:
    case AxiomId::GF2:
      return 2 * nn * m;
    case AxiomId::IND:
    case AxiomId::TOP_IND:
    case AxiomId::BOT_IND: {
      size_t half = static_cast<size_t>((1 << (n - 1)) - 1);
      return nn * half * half;
    }
    case AxiomId::STRICT_IND: {
      size_t half = static_cast<size_t>((1 << (n - 1)) - 1);
      return 2 * nn * half * half;
    }
    case AxiomId::DIS_IND: {
      // Ordered disjoint pairs of nonempty subsets of an (n-1)-element set,
      // one free element as x.
      size_t k = static_cast<size_t>(n - 1);
      size_t pairs = 1;
      for (size_t i = 0; i < k; ++i) pairs *= 3;  // 3^(n-1)
      pairs = pairs - 2 * (static_cast<size_t>(1) << k) + 1;
      return nn * pairs;
    }
    case AxiomId::SUA_V:
    case AxiomId::SUA_P:
    case AxiomId::S_TOP_MON:
    case AxiomId::S_BOT_MON:
      return 2 * nn * nn * nn;
    case AxiomId::INT_IND: {
      size_t half = static_cast<size_t>((1 << (n - 1)) - 1);
      size_t quarter = n >= 2 ? static_cast<size_t>((1 << (n - 2)) - 1) : 0;
      return nn * half * half + nn * (nn - 1) * quarter * quarter;
    }
    case AxiomId::EVEN_EXT: {
      size_t total = 0;
      for (SetCode s = 1; s <= static_cast<SetCode>(m); ++s)
        if (set_even_card(s)) {
          size_t free_elems = static_cast<size_t>(n - set_card(s));
          total += free_elems * free_elems;
        }
      return 2 * total;
    }
    case AxiomId::MC:
      return m * m;
  }
  return 0;
}

}  // namespace ranksets
