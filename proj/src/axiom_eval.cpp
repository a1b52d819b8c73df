#include <stdexcept>

#include "ranksets/axioms.hpp"

namespace ranksets {

namespace {

bool lstrict(const ElementOrder& o, ElementCode x, ElementCode y) { return o.strict(x, y); }

SetCode sing(ElementCode x) { return SetCode{1} << x; }

}  // namespace

bool holds(AxiomId a, const ElementOrder& ord, const SetRelation& rel) {
  const int n = ord.size();
  if (rel.domain_size() != n)
    throw std::invalid_argument("element order and set relation disagree on n");
  const SetCode top = static_cast<SetCode>((1u << n) - 1);

  switch (a) {
    case AxiomId::LIN_E:
      return ord.is_linear();
    case AxiomId::REFL_S: {
      for (SetCode s = 1; s <= top; ++s)
        if (!rel.weak(s, s)) return false;
      return true;
    }
    case AxiomId::COMPL_S: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t)
          if (s != t && !rel.weak(s, t) && !rel.weak(t, s)) return false;
      return true;
    }
    case AxiomId::TRANS_S: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t) {
          if (!rel.weak(s, t)) continue;
          for (SetCode u = 1; u <= top; ++u)
            if (rel.weak(t, u) && !rel.weak(s, u)) return false;
        }
      return true;
    }
    case AxiomId::EXT: {
      for (ElementCode x = 0; x < n; ++x)
        for (ElementCode y = 0; y < n; ++y)
          if (ord.at(x, y) != rel.weak(sing(x), sing(y))) return false;
      return true;
    }
    case AxiomId::SDOM: {
      for (ElementCode x = 0; x < n; ++x)
        for (ElementCode y = 0; y < n; ++y) {
          if (!lstrict(ord, x, y)) continue;
          SetCode xy = sing(x) | sing(y);
          if (!rel.strict(sing(x), xy) || !rel.strict(xy, sing(y))) return false;
        }
      return true;
    }
    case AxiomId::GF1:
    case AxiomId::GF2: {
      bool better = a == AxiomId::GF1;
      for (SetCode s = 1; s <= top; ++s)
        for (ElementCode x = 0; x < n; ++x) {
          bool dominates = true;
          for (ElementCode e = 0; e < n && dominates; ++e) {
            if (!set_member(e, s)) continue;
            dominates = better ? lstrict(ord, x, e) : lstrict(ord, e, x);
          }
          if (!dominates) continue;
          SetCode sx = s | sing(x);
          if (better ? !rel.strict(sx, s) : !rel.strict(s, sx)) return false;
        }
      return true;
    }
    case AxiomId::IND:
    case AxiomId::STRICT_IND:
    case AxiomId::TOP_IND:
    case AxiomId::BOT_IND:
    case AxiomId::DIS_IND: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t) {
          if (a == AxiomId::DIS_IND && !set_disjoint(s, t)) continue;
          if (!rel.strict(s, t)) continue;
          SetCode both = s | t;
          for (ElementCode x = 0; x < n; ++x) {
            if (set_member(x, both)) continue;
            if (a == AxiomId::TOP_IND || a == AxiomId::BOT_IND) {
              bool side = true;
              for (ElementCode y = 0; y < n && side; ++y) {
                if (!set_member(y, both)) continue;
                side = a == AxiomId::TOP_IND ? lstrict(ord, x, y) : lstrict(ord, y, x);
              }
              if (!side) continue;
            }
            SetCode sx = s | sing(x), tx = t | sing(x);
            if (a == AxiomId::STRICT_IND ? !rel.strict(sx, tx) : !rel.weak(sx, tx))
              return false;
          }
        }
      return true;
    }
    case AxiomId::SUA_V:
    case AxiomId::SUA_P: {
      for (ElementCode x = 0; x < n; ++x)
        for (ElementCode y = 0; y < n; ++y) {
          if (!lstrict(ord, x, y)) continue;
          for (ElementCode z = 0; z < n; ++z) {
            if (!lstrict(ord, y, z)) continue;
            SetCode xz = sing(x) | sing(z);
            bool ok = a == AxiomId::SUA_V ? rel.strict(sing(y), xz)
                                          : rel.strict(xz, sing(y));
            if (!ok) return false;
          }
        }
      return true;
    }
    case AxiomId::S_TOP_MON: {
      for (ElementCode x = 0; x < n; ++x)
        for (ElementCode y = 0; y < n; ++y)
          for (ElementCode z = 0; z < n; ++z) {
            if (!lstrict(ord, x, z) || !lstrict(ord, y, z) || !lstrict(ord, x, y))
              continue;
            if (!rel.strict(sing(x) | sing(z), sing(y) | sing(z))) return false;
          }
      return true;
    }
    case AxiomId::S_BOT_MON: {
      for (ElementCode x = 0; x < n; ++x)
        for (ElementCode y = 0; y < n; ++y)
          for (ElementCode z = 0; z < n; ++z) {
            if (!lstrict(ord, x, y) || !lstrict(ord, x, z) || !lstrict(ord, y, z))
              continue;
            if (!rel.strict(sing(x) | sing(y), sing(x) | sing(z))) return false;
          }
      return true;
    }
    case AxiomId::INT_IND: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t) {
          if (!rel.strict(s, t)) continue;
          SetCode both = s | t;
          for (ElementCode x = 0; x < n; ++x) {
            if (set_member(x, both)) continue;
            for (ElementCode y = 0; y < n; ++y) {
              if (set_member(y, both)) continue;
              bool side = true;
              for (ElementCode z = 0; z < n && side; ++z) {
                if (!set_member(z, both)) continue;
                side = lstrict(ord, x, z) && lstrict(ord, z, y);
              }
              if (!side) continue;
              SetCode add = sing(x) | sing(y);
              if (!rel.weak(s | add, t | add)) return false;
            }
          }
        }
      return true;
    }
    case AxiomId::EVEN_EXT: {
      for (SetCode s = 1; s <= top; ++s) {
        if (!set_even_card(s)) continue;
        for (ElementCode x = 0; x < n; ++x) {
          if (set_member(x, s)) continue;
          if (!rel.indifferent(s | sing(x), sing(x))) continue;
          for (ElementCode y = 0; y < n; ++y) {
            if (set_member(y, s)) continue;
            if (!rel.indifferent(s | sing(y), sing(y))) continue;
            SetCode xy = sing(x) | sing(y);
            if (!rel.indifferent(s | xy, xy)) return false;
          }
        }
      }
      return true;
    }
    case AxiomId::MC: {
      for (SetCode s = 1; s <= top; ++s)
        for (SetCode t = 1; t <= top; ++t)
          if (rel.weak(s, t) && !rel.weak(s | t, t)) return false;
      return true;
    }
  }
  return false;
}

SetRelation minmax_order(const Domain& d, const ElementOrder& ord) {
  if (!ord.is_linear()) throw std::invalid_argument("minmax_order requires a linear order");
  SetRelation rel(d.size());
  SetCode top = d.universe();
  for (SetCode a = 1; a <= top; ++a)
    for (SetCode b = 1; b <= top; ++b) {
      ElementCode mina = min_of(a, ord), minb = min_of(b, ord);
      bool ge;
      if (mina != minb)
        ge = ord.strict(mina, minb);
      else
        ge = ord.at(max_of(a, ord), max_of(b, ord));
      rel.set(a, b, ge);
    }
  return rel;
}

namespace {

// Chain of indifference classes, best first; members of one class are
// mutually indifferent.
SetRelation relation_from_chain(int n, const std::vector<std::vector<SetCode>>& classes) {
  SetRelation rel(n);
  int m = (1 << n) - 1;
  std::vector<int> level(static_cast<size_t>(m) + 1, -1);
  for (size_t i = 0; i < classes.size(); ++i)
    for (SetCode s : classes[i]) level[s] = static_cast<int>(i);
  for (SetCode a = 1; a <= static_cast<SetCode>(m); ++a)
    for (SetCode b = 1; b <= static_cast<SetCode>(m); ++b) {
      if (level[a] < 0 || level[b] < 0)
        throw std::logic_error("fixture chain does not cover all sets");
      rel.set(a, b, level[a] <= level[b]);
    }
  return rel;
}

}  // namespace

std::array<WitnessFixture, 4> fixture_witnesses() {
  // Element codes: xi has code i-1, so x1 > x2 > x3 > x4 is the canonical
  // order; set codes are masks over these.
  Domain d(4);
  ElementOrder ord = canonical_linear_order(d);
  using C = std::vector<std::vector<SetCode>>;
  C f1 = {{1}, {2}, {4}, {8}, {3}, {5}, {6}, {9}, {10}, {12}, {7}, {11}, {13}, {14}, {15}};
  C f2 = {{1}, {3}, {2}, {5}, {6}, {4}, {7}, {9}, {10}, {11}, {12}, {8}, {13}, {14}, {15}};
  C f3 = {{1}, {3}, {5, 7}, {2}, {6}, {4}, {9, 11, 13, 15}, {10, 14}, {12}, {8}};
  C f4 = {{1}, {3}, {2}, {5, 7}, {6}, {4}, {9, 13, 10, 11, 14, 15}, {12}, {8}};
  return {
      WitnessFixture{"witness-1", ord, relation_from_chain(4, f1)},
      WitnessFixture{"witness-2", ord, relation_from_chain(4, f2)},
      WitnessFixture{"witness-3", ord, relation_from_chain(4, f3)},
      WitnessFixture{"witness-4", ord, relation_from_chain(4, f4)},
  };
}

}  // namespace ranksets
