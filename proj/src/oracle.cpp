#include <array>

#include "ranksets/search.hpp"

namespace ranksets::search {

uint64_t fubini(int k) {
  if (k < 0) throw std::invalid_argument("fubini of a negative count");
  // a(n) = sum_{j=1..n} C(n,j) a(n-j)
  std::vector<uint64_t> a(static_cast<size_t>(k) + 1, 0);
  a[0] = 1;
  for (int n = 1; n <= k; ++n) {
    uint64_t total = 0;
    uint64_t binom = 1;
    for (int j = 1; j <= n; ++j) {
      binom = binom * static_cast<uint64_t>(n - j + 1) / static_cast<uint64_t>(j);
      total += binom * a[static_cast<size_t>(n - j)];
    }
    a[static_cast<size_t>(n)] = total;
  }
  return a[static_cast<size_t>(k)];
}

namespace {

constexpr int kN = 3;
constexpr int kSets = 7;  // nonempty subsets of a 3-element domain
constexpr AxiomSet kBase =
    axiom_bit(AxiomId::REFL_S) | axiom_bit(AxiomId::COMPL_S) | axiom_bit(AxiomId::TRANS_S);

struct CondPref {
  // strict(a, b) implies weak/strict(a2, b2) on the set relation
  uint8_t a, b, a2, b2;
};

// Checks compiled from one element relation; evaluated against the level
// array of a weak order (smaller level = better).  The per-axiom checks are
// contiguous spans of the two vectors.
struct LTables {
  bool linear = false;
  std::array<bool, 9> l{};                                  // l[x*3+y]
  std::vector<std::pair<uint8_t, uint8_t>> strict_checks;   // lvl[a] < lvl[b] required
  std::vector<CondPref> cond_weak;                          // topIND/botIND/intIND
  size_t sdom_begin = 0, gf1_begin = 0, gf2_begin = 0, suav_begin = 0, suap_begin = 0,
         stopmon_begin = 0, sbotmon_begin = 0, strict_end = 0;
  size_t topind_begin = 0, botind_begin = 0, intind_begin = 0, cond_end = 0;
};

inline uint8_t sing(int x) { return static_cast<uint8_t>(1 << x); }

struct StaticTables {
  std::vector<CondPref> ind, dis_ind;  // weak consequent
  std::vector<CondPref> strict_ind;    // strict consequent
};

StaticTables build_static() {
  StaticTables t;
  for (int a = 1; a <= kSets; ++a)
    for (int b = 1; b <= kSets; ++b) {
      int both = a | b;
      for (int x = 0; x < kN; ++x) {
        if (both >> x & 1) continue;
        CondPref c{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                   static_cast<uint8_t>(a | sing(x)), static_cast<uint8_t>(b | sing(x))};
        t.ind.push_back(c);
        t.strict_ind.push_back(c);
        if ((a & b) == 0) t.dis_ind.push_back(c);
      }
    }
  return t;
}

std::vector<LTables> build_l_tables() {
  std::vector<LTables> out(512);
  for (int bits = 0; bits < 512; ++bits) {
    LTables& t = out[static_cast<size_t>(bits)];
    ElementOrder ord(kN);
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y) {
        bool v = bits >> (x * kN + y) & 1;
        ord.set(x, y, v);
        t.l[static_cast<size_t>(x * kN + y)] = v;
      }
    t.linear = ord.is_linear();
    auto ls = [&](int x, int y) { return ord.strict(x, y); };

    // Positions in strict_checks, per axiom, are contiguous; record spans.
    auto add_strict = [&](int a, int b) {
      t.strict_checks.emplace_back(static_cast<uint8_t>(a), static_cast<uint8_t>(b));
    };

    // SDOM
    t.sdom_begin = t.strict_checks.size();
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y) {
        if (!ls(x, y)) continue;
        add_strict(sing(x), sing(x) | sing(y));
        add_strict(sing(x) | sing(y), sing(y));
      }
    // GF1 / GF2
    t.gf1_begin = t.strict_checks.size();
    for (int s = 1; s <= kSets; ++s)
      for (int x = 0; x < kN; ++x) {
        bool dom = true;
        for (int e = 0; e < kN && dom; ++e)
          if (s >> e & 1) dom = ls(x, e);
        if (dom) add_strict(s | sing(x), s);
      }
    t.gf2_begin = t.strict_checks.size();
    for (int s = 1; s <= kSets; ++s)
      for (int x = 0; x < kN; ++x) {
        bool dom = true;
        for (int e = 0; e < kN && dom; ++e)
          if (s >> e & 1) dom = ls(e, x);
        if (dom) add_strict(s, s | sing(x));
      }
    // SUA_V / SUA_P
    t.suav_begin = t.strict_checks.size();
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y) {
        if (!ls(x, y)) continue;
        for (int z = 0; z < kN; ++z) {
          if (!ls(y, z)) continue;
          add_strict(sing(y), sing(x) | sing(z));
        }
      }
    t.suap_begin = t.strict_checks.size();
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y) {
        if (!ls(x, y)) continue;
        for (int z = 0; z < kN; ++z) {
          if (!ls(y, z)) continue;
          add_strict(sing(x) | sing(z), sing(y));
        }
      }
    // S_TOP_MON / S_BOT_MON
    t.stopmon_begin = t.strict_checks.size();
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y)
        for (int z = 0; z < kN; ++z)
          if (ls(x, z) && ls(y, z) && ls(x, y))
            add_strict(sing(x) | sing(z), sing(y) | sing(z));
    t.sbotmon_begin = t.strict_checks.size();
    for (int x = 0; x < kN; ++x)
      for (int y = 0; y < kN; ++y)
        for (int z = 0; z < kN; ++z)
          if (ls(x, y) && ls(x, z) && ls(y, z))
            add_strict(sing(x) | sing(y), sing(x) | sing(z));
    t.strict_end = t.strict_checks.size();

    // Conditional weak consequents: topIND, botIND, intIND
    t.topind_begin = t.cond_weak.size();
    for (int a = 1; a <= kSets; ++a)
      for (int b = 1; b <= kSets; ++b) {
        int both = a | b;
        for (int x = 0; x < kN; ++x) {
          if (both >> x & 1) continue;
          bool side = true;
          for (int y = 0; y < kN && side; ++y)
            if (both >> y & 1) side = ls(x, y);
          if (side)
            t.cond_weak.push_back({static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                   static_cast<uint8_t>(a | sing(x)),
                                   static_cast<uint8_t>(b | sing(x))});
        }
      }
    t.botind_begin = t.cond_weak.size();
    for (int a = 1; a <= kSets; ++a)
      for (int b = 1; b <= kSets; ++b) {
        int both = a | b;
        for (int x = 0; x < kN; ++x) {
          if (both >> x & 1) continue;
          bool side = true;
          for (int y = 0; y < kN && side; ++y)
            if (both >> y & 1) side = ls(y, x);
          if (side)
            t.cond_weak.push_back({static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                   static_cast<uint8_t>(a | sing(x)),
                                   static_cast<uint8_t>(b | sing(x))});
        }
      }
    t.intind_begin = t.cond_weak.size();
    for (int a = 1; a <= kSets; ++a)
      for (int b = 1; b <= kSets; ++b) {
        int both = a | b;
        for (int x = 0; x < kN; ++x) {
          if (both >> x & 1) continue;
          for (int y = 0; y < kN; ++y) {
            if (both >> y & 1) continue;
            bool side = true;
            for (int z = 0; z < kN && side; ++z)
              if (both >> z & 1) side = ls(x, z) && ls(z, y);
            if (side) {
              uint8_t add = static_cast<uint8_t>(sing(x) | sing(y));
              t.cond_weak.push_back({static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                     static_cast<uint8_t>(a | add),
                                     static_cast<uint8_t>(b | add)});
            }
          }
        }
      }
    t.cond_end = t.cond_weak.size();
  }
  return out;
}

}  // namespace

WeakOrderOracle::WeakOrderOracle() : possible_(size_t{1} << kNumAxioms, 0) {
  StaticTables st = build_static();
  std::vector<LTables> ls = build_l_tables();
  std::vector<uint8_t> seen(size_t{1} << kNumAxioms, 0);

  // lvl[s] = indifference-class rank of set code s, 0 = best.
  std::array<uint8_t, kSets + 1> lvl{};

  auto strict_span_ok = [&](const LTables& t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      auto [a, b] = t.strict_checks[i];
      if (!(lvl[a] < lvl[b])) return false;
    }
    return true;
  };
  auto cond_span_ok = [&](const LTables& t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const CondPref& c = t.cond_weak[i];
      if (lvl[c.a] < lvl[c.b] && !(lvl[c.a2] <= lvl[c.b2])) return false;
    }
    return true;
  };

  auto visit = [&] {
    // Bits independent of the element relation.
    AxiomSet base = kBase;
    bool ok = true;
    for (const CondPref& c : st.ind)
      if (lvl[c.a] < lvl[c.b] && !(lvl[c.a2] <= lvl[c.b2])) {
        ok = false;
        break;
      }
    if (ok) base |= axiom_bit(AxiomId::IND);
    ok = true;
    for (const CondPref& c : st.strict_ind)
      if (lvl[c.a] < lvl[c.b] && !(lvl[c.a2] < lvl[c.b2])) {
        ok = false;
        break;
      }
    if (ok) base |= axiom_bit(AxiomId::STRICT_IND);
    ok = true;
    for (const CondPref& c : st.dis_ind)
      if (lvl[c.a] < lvl[c.b] && !(lvl[c.a2] <= lvl[c.b2])) {
        ok = false;
        break;
      }
    if (ok) base |= axiom_bit(AxiomId::DIS_IND);
    ok = true;
    for (int a = 1; a <= kSets && ok; ++a)
      for (int b = 1; b <= kSets && ok; ++b)
        if (lvl[a] <= lvl[b] && !(lvl[a | b] <= lvl[b])) ok = false;
    if (ok) base |= axiom_bit(AxiomId::MC);
    // evenExt: at n = 3 the only even-card sets leave a single outside
    // element, so the instance is its own antecedent.
    base |= axiom_bit(AxiomId::EVEN_EXT);

    for (const LTables& t : ls) {
      AxiomSet m = base;
      if (t.linear) m |= axiom_bit(AxiomId::LIN_E);
      ok = true;
      for (int x = 0; x < kN && ok; ++x)
        for (int y = 0; y < kN && ok; ++y)
          if (t.l[static_cast<size_t>(x * kN + y)] != (lvl[sing(x)] <= lvl[sing(y)]))
            ok = false;
      if (ok) m |= axiom_bit(AxiomId::EXT);
      if (strict_span_ok(t, t.sdom_begin, t.gf1_begin)) m |= axiom_bit(AxiomId::SDOM);
      if (strict_span_ok(t, t.gf1_begin, t.gf2_begin)) m |= axiom_bit(AxiomId::GF1);
      if (strict_span_ok(t, t.gf2_begin, t.suav_begin)) m |= axiom_bit(AxiomId::GF2);
      if (strict_span_ok(t, t.suav_begin, t.suap_begin)) m |= axiom_bit(AxiomId::SUA_V);
      if (strict_span_ok(t, t.suap_begin, t.stopmon_begin)) m |= axiom_bit(AxiomId::SUA_P);
      if (strict_span_ok(t, t.stopmon_begin, t.sbotmon_begin))
        m |= axiom_bit(AxiomId::S_TOP_MON);
      if (strict_span_ok(t, t.sbotmon_begin, t.strict_end))
        m |= axiom_bit(AxiomId::S_BOT_MON);
      if (cond_span_ok(t, t.topind_begin, t.botind_begin)) m |= axiom_bit(AxiomId::TOP_IND);
      if (cond_span_ok(t, t.botind_begin, t.intind_begin)) m |= axiom_bit(AxiomId::BOT_IND);
      if (cond_span_ok(t, t.intind_begin, t.cond_end)) m |= axiom_bit(AxiomId::INT_IND);
      seen[m] = 1;
    }
  };

  // Enumerate weak orders as ordered partitions of the 7 set codes.
  // rem: bit i set means set code i+1 still unplaced.
  auto rec = [&](auto&& self, unsigned rem, uint8_t depth) -> void {
    if (rem == 0) {
      visit();
      return;
    }
    for (unsigned block = rem; block; block = (block - 1) & rem) {
      for (int i = 0; i < kSets; ++i)
        if (block >> i & 1) lvl[static_cast<size_t>(i) + 1] = depth;
      self(self, rem & ~block, static_cast<uint8_t>(depth + 1));
    }
  };
  rec(rec, (1u << kSets) - 1, 0);

  // Downward closure: a subset of a satisfiable axiom set is satisfiable.
  possible_ = std::move(seen);
  for (int bit = 0; bit < kNumAxioms; ++bit) {
    uint32_t b = uint32_t{1} << bit;
    for (uint32_t m = 0; m < possible_.size(); ++m)
      if (!(m & b)) possible_[m] |= possible_[m | b];
  }
}

CellState WeakOrderOracle::query(AxiomSet axioms) const {
  if ((axioms & kBase) != kBase)
    throw std::invalid_argument(
        "oracle requires REFL_S, COMPL_S and TRANS_S in the axiom set");
  return possible_[axioms] ? CellState::Possible : CellState::Impossible;
}

}  // namespace ranksets::search
