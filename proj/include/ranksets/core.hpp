#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ranksets/cnf.hpp"

namespace ranksets {

// Element of the domain X, coded 0..n-1.
using ElementCode = int;

// Nonempty subset of X as a bit mask over element codes.  The empty mask 0 is
// never a valid set code.
using SetCode = uint32_t;

inline int set_card(SetCode a) { return std::popcount(a); }
inline bool set_member(ElementCode x, SetCode a) { return (a >> x) & 1u; }
inline bool set_subseteq(SetCode a, SetCode b) { return (a | b) == b; }
inline bool set_disjoint(SetCode a, SetCode b) { return (a & b) == 0; }
inline bool set_even_card(SetCode a) { return (std::popcount(a) & 1) == 0; }
inline bool set_equal_card(SetCode a, SetCode b) {
  return std::popcount(a) == std::popcount(b);
}

// Fixed coding of a domain of n elements, the nonempty subsets 1..2^n-1, and
// the propositional variables over both sorts.
//
// Variable layout: l(x,y) occupies [1, n^2] row-major; w(A,B) occupies
// [n^2+1, n^2+(2^n-1)^2] row-major by set code.  Any bijection would do; this
// one is fixed so DIMACS output is reproducible across runs.
class Domain {
 public:
  // Hard cap: above 10 elements the instances are far beyond what is
  // tractable here ((2^n-1)^2 set variables).
  static constexpr int kMaxSize = 10;

  explicit Domain(int n) : n_(n) {
    if (n < 1 || n > kMaxSize)
      throw std::invalid_argument("domain size must be in [1, " +
                                  std::to_string(kMaxSize) + "], got " +
                                  std::to_string(n));
  }

  int size() const { return n_; }
  int num_sets() const { return (1 << n_) - 1; }
  SetCode universe() const { return static_cast<SetCode>((1u << n_) - 1u); }
  int num_element_vars() const { return n_ * n_; }
  int num_vars() const { return n_ * n_ + num_sets() * num_sets(); }

  bool valid_element(ElementCode x) const { return x >= 0 && x < n_; }
  bool valid_set(SetCode a) const { return a >= 1 && a <= universe(); }

  SetCode singleton(ElementCode x) const {
    check_element(x);
    return SetCode{1} << x;
  }

  SetCode set_union(SetCode a, SetCode b) const {
    check_set(a);
    check_set(b);
    return a | b;
  }

  // (A \ {a}) u {b}; total, also when a is not a member of A.
  SetCode replace_in_by(ElementCode a, SetCode set, ElementCode b) const {
    check_element(a);
    check_element(b);
    check_set(set);
    return (set & ~(SetCode{1} << a)) | (SetCode{1} << b);
  }

  int var_l(ElementCode x, ElementCode y) const {
    check_element(x);
    check_element(y);
    return 1 + x * n_ + y;
  }

  int var_w(SetCode a, SetCode b) const {
    check_set(a);
    check_set(b);
    int m = num_sets();
    return n_ * n_ + 1 + static_cast<int>(a - 1) * m + static_cast<int>(b - 1);
  }

  bool is_l_var(int v) const { return v >= 1 && v <= n_ * n_; }
  bool is_w_var(int v) const { return v > n_ * n_ && v <= num_vars(); }

  std::pair<ElementCode, ElementCode> l_var_args(int v) const {
    if (!is_l_var(v)) throw std::invalid_argument("not an l variable");
    int k = v - 1;
    return {k / n_, k % n_};
  }

  std::pair<SetCode, SetCode> w_var_args(int v) const {
    if (!is_w_var(v)) throw std::invalid_argument("not a w variable");
    int k = v - n_ * n_ - 1;
    int m = num_sets();
    return {static_cast<SetCode>(k / m + 1), static_cast<SetCode>(k % m + 1)};
  }

  bool operator==(const Domain& other) const { return n_ == other.n_; }

 private:
  void check_element(ElementCode x) const {
    if (!valid_element(x))
      throw std::invalid_argument("element code out of range: " + std::to_string(x));
  }
  void check_set(SetCode a) const {
    if (!valid_set(a))
      throw std::invalid_argument("set code out of range: " + std::to_string(a));
  }

  int n_;
};

// Binary relation on elements, rel(x, y) meaning x is ranked at least as high
// as y.  Immutable use after construction is the norm; there is no interior
// mutation beyond set().
class ElementOrder {
 public:
  explicit ElementOrder(int n) : n_(n), rel_(static_cast<size_t>(n) * n, 0) {}

  int size() const { return n_; }
  bool at(ElementCode x, ElementCode y) const {
    return rel_[static_cast<size_t>(x) * n_ + y] != 0;
  }
  void set(ElementCode x, ElementCode y, bool v) {
    rel_[static_cast<size_t>(x) * n_ + y] = v ? 1 : 0;
  }
  bool strict(ElementCode x, ElementCode y) const { return at(x, y) && !at(y, x); }

  // Reflexive, complete, transitive and antisymmetric.
  bool is_linear() const;

  bool operator==(const ElementOrder&) const = default;

 private:
  int n_;
  std::vector<uint8_t> rel_;
};

// x0 > x1 > ... > x(n-1).
ElementOrder canonical_linear_order(const Domain& d);

// Binary relation on the nonempty subsets; strict preference and indifference
// are derived, never stored.
class SetRelation {
 public:
  explicit SetRelation(int n)
      : n_(n),
        num_sets_((1 << n) - 1),
        bits_((static_cast<size_t>(num_sets_) * num_sets_ + 63) / 64, 0) {}

  int domain_size() const { return n_; }
  int num_sets() const { return num_sets_; }

  bool weak(SetCode a, SetCode b) const {
    size_t i = index(a, b);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(SetCode a, SetCode b, bool v) {
    size_t i = index(a, b);
    if (v)
      bits_[i >> 6] |= uint64_t{1} << (i & 63);
    else
      bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  bool strict(SetCode a, SetCode b) const { return weak(a, b) && !weak(b, a); }
  bool indifferent(SetCode a, SetCode b) const { return weak(a, b) && weak(b, a); }

  // Reflexive, complete and transitive.
  bool is_weak_order() const;

  bool operator==(const SetRelation&) const = default;

 private:
  size_t index(SetCode a, SetCode b) const {
    return (static_cast<size_t>(a) - 1) * num_sets_ + (b - 1);
  }

  int n_;
  int num_sets_;
  std::vector<uint64_t> bits_;
};

// Truth assignment over the variables of a Domain, indexed by variable id
// (entry 0 unused); values are 0, 1, or -1 for unassigned.
using Assignment = std::vector<int8_t>;

// Reads both relations off a total assignment.  Throws if any variable in
// [1, num_vars] is unassigned or the vector is too short.
std::pair<ElementOrder, SetRelation> decode_model(const Assignment& a, const Domain& d);

// Inverse of decode_model; the result is total over [1, num_vars].
Assignment encode_model(const ElementOrder& ord, const SetRelation& rel, const Domain& d);

// Greatest / least member of A under a linear order; throws if ord is not
// linear.
ElementCode max_of(SetCode a, const ElementOrder& ord);
ElementCode min_of(SetCode a, const ElementOrder& ord);

// Rough per-instance memory estimate (bytes) for a CNF over this domain with
// `clauses` clauses of `avg_len` literals, used to sanity-check requested
// domain sizes before grounding.
size_t estimate_cnf_bytes(size_t clauses, double avg_len);

}  // namespace ranksets
