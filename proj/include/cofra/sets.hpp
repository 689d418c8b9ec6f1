#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace cofra {

// A set of states, as a bit vector indexed by StateSpace order.
// The library caps state spaces at 32 states, which keeps exhaustive
// enumeration of families and antichains cheap.
struct StateSet {
  std::uint32_t bits = 0;

  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint32_t b) : bits(b) {}

  static constexpr StateSet single(int i) { return StateSet(std::uint32_t{1} << i); }
  static constexpr StateSet full(int n) {
    return StateSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  constexpr bool empty() const { return bits == 0; }
  constexpr bool contains(int i) const { return (bits >> i) & 1u; }
  constexpr bool subset_of(StateSet o) const { return (bits & ~o.bits) == 0; }
  constexpr bool proper_subset_of(StateSet o) const { return subset_of(o) && bits != o.bits; }
  constexpr bool intersects(StateSet o) const { return (bits & o.bits) != 0; }
  int count() const { return __builtin_popcount(bits); }
  constexpr bool is_singleton() const { return bits != 0 && (bits & (bits - 1)) == 0; }
  int lowest() const { return __builtin_ctz(bits); }  // pre: nonempty

  constexpr StateSet operator|(StateSet o) const { return StateSet(bits | o.bits); }
  constexpr StateSet operator&(StateSet o) const { return StateSet(bits & o.bits); }
  constexpr StateSet minus(StateSet o) const { return StateSet(bits & ~o.bits); }
  constexpr StateSet complement_in(StateSet universe) const {
    return StateSet(universe.bits & ~bits);
  }
  StateSet& operator|=(StateSet o) { bits |= o.bits; return *this; }

  constexpr bool operator==(const StateSet&) const = default;
};

// Lexicographic order on state sets viewed as ascending index sequences:
// {} < {0} < {0,1} < {0,2} < {1} < {1,2} < {2} for three states.
// This is the canonical order for family storage and witness choices.
inline bool lex_less(StateSet a, StateSet b) {
  if (a.bits == b.bits) return false;
  if (a.bits == 0) return true;
  if (b.bits == 0) return false;
  std::uint32_t d = a.bits ^ b.bits;
  std::uint32_t m = d & (~d + 1);  // lowest differing element
  bool holder_is_a = (a.bits & m) != 0;
  std::uint32_t other = holder_is_a ? b.bits : a.bits;
  bool other_has_later = (other & ~(m | (m - 1))) != 0;
  return holder_is_a == other_has_later;
}

struct LexLess {
  bool operator()(StateSet a, StateSet b) const { return lex_less(a, b); }
};

// Visits every subset of `mask`, the empty set first, in ascending bit-pattern
// order.
template <typename Fn>
void for_each_subset(StateSet mask, Fn&& fn) {
  std::uint32_t s = 0;
  while (true) {
    fn(StateSet(s));
    s = (s - mask.bits) & mask.bits;
    if (s == 0) break;
  }
}

// A finite family of state sets; duplicates impossible, stored in lex order.
class PowerFamily {
 public:
  PowerFamily() = default;
  explicit PowerFamily(std::vector<StateSet> sets) : sets_(std::move(sets)) {
    std::sort(sets_.begin(), sets_.end(), LexLess{});
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  }

  const std::vector<StateSet>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }
  std::size_t size() const { return sets_.size(); }
  bool contains(StateSet x) const {
    return std::find(sets_.begin(), sets_.end(), x) != sets_.end();
  }
  StateSet union_all() const {
    StateSet u;
    for (StateSet s : sets_) u |= s;
    return u;
  }
  bool all_singletons() const {
    return std::all_of(sets_.begin(), sets_.end(),
                       [](StateSet s) { return s.is_singleton(); });
  }
  void insert(StateSet x) {
    auto it = std::lower_bound(sets_.begin(), sets_.end(), x, LexLess{});
    if (it == sets_.end() || !(*it == x)) sets_.insert(it, x);
  }

  bool operator==(const PowerFamily&) const = default;

 private:
  std::vector<StateSet> sets_;
};

// An upward-closed family of state sets, represented by the antichain of its
// subset-minimal elements. The empty antichain denotes the empty family; the
// antichain {{}} denotes the full powerset. Construction from an arbitrary
// family keeps only the minimal elements, so the stored antichain always
// equals the nonmonotonic core of the denoted family.
class UpsetFamily {
 public:
  UpsetFamily() = default;

  static UpsetFamily from_family(const std::vector<StateSet>& family) {
    UpsetFamily u;
    for (StateSet x : family) {
      bool minimal = true;
      for (StateSet y : family) {
        if (y.proper_subset_of(x)) { minimal = false; break; }
      }
      if (minimal) u.minimals_.push_back(x);
    }
    std::sort(u.minimals_.begin(), u.minimals_.end(), LexLess{});
    u.minimals_.erase(std::unique(u.minimals_.begin(), u.minimals_.end()),
                      u.minimals_.end());
    return u;
  }

  static UpsetFamily from_family(const PowerFamily& family) {
    return from_family(family.sets());
  }

  const std::vector<StateSet>& minimals() const { return minimals_; }
  bool empty() const { return minimals_.empty(); }

  // Upset membership: true iff some minimal element is contained in x.
  bool member(StateSet x) const {
    for (StateSet m : minimals_) {
      if (m.subset_of(x)) return true;
    }
    return false;
  }

  StateSet union_of_minimals() const {
    StateSet u;
    for (StateSet m : minimals_) u |= m;
    return u;
  }

  bool operator==(const UpsetFamily&) const = default;

 private:
  std::vector<StateSet> minimals_;
};

}  // namespace cofra
