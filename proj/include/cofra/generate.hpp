#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "cofra/model.hpp"
#include "cofra/synth_actual.hpp"

namespace cofra {

struct AlphaLocalFamilies {
  UpsetFamily empty_c;
  UpsetFamily agent_a;
  UpsetFamily agent_b;
  UpsetFamily grand;

  bool operator==(const AlphaLocalFamilies&) const = default;
};

namespace detail {

// rng() % k is implementation-independent, unlike std::uniform_int_distribution;
// generated frames must be byte-identical across platforms for a fixed seed.
inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t k) {
  return rng() % k;
}

inline StateSet random_nonempty_subset(std::mt19937_64& rng, int n_states) {
  std::uint32_t universe = (std::uint32_t{1} << n_states) - 1;
  return StateSet(static_cast<std::uint32_t>(pick(rng, universe)) + 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Random game frames (two agents)
// ---------------------------------------------------------------------------

// Samples random grand outcomes per state, then repairs toward the requested
// flags: seriality adds one entry to empty states, independence pairs every
// available individual action combination, determinism truncates outcomes to
// their least state. The result satisfies check_gcgf_class >= flags and is
// byte-identical for a fixed seed.
inline CanonicalGcgf gen_random_gcgf(int n_states, int n_actions,
                                     ClassFlags flags, std::uint64_t seed) {
  if (n_states < 1 || n_states > 16 || n_actions < 1 || n_actions > 8)
    throw InvalidParams("gen_random_gcgf: need 1..16 states and 1..8 actions");

  std::vector<std::string> state_names, action_ids;
  for (int i = 0; i < n_states; ++i) state_names.push_back("s" + std::to_string(i));
  for (int i = 0; i < n_actions; ++i) action_ids.push_back("m" + std::to_string(i));
  CanonicalGcgf g(StateSpace(state_names), AgentSet({"a", "b"}));
  Coalition ag = g.grand_coalition();

  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_states; ++s) {
    std::vector<std::vector<StateSet>> table(n_actions,
                                             std::vector<StateSet>(n_actions));
    for (int i = 0; i < n_actions; ++i)
      for (int j = 0; j < n_actions; ++j)
        if (detail::pick(rng, 2) == 0)
          table[i][j] = detail::random_nonempty_subset(rng, n_states);

    if (flags.serial) {
      bool any = false;
      for (auto& row : table)
        for (StateSet o : row) any = any || !o.empty();
      if (!any) {
        int i = static_cast<int>(detail::pick(rng, n_actions));
        int j = static_cast<int>(detail::pick(rng, n_actions));
        table[i][j] = detail::random_nonempty_subset(rng, n_states);
      }
    }
    if (flags.independent) {
      std::vector<bool> avail_a(n_actions, false), avail_b(n_actions, false);
      for (int i = 0; i < n_actions; ++i)
        for (int j = 0; j < n_actions; ++j)
          if (!table[i][j].empty()) avail_a[i] = avail_b[j] = true;
      for (int i = 0; i < n_actions; ++i)
        for (int j = 0; j < n_actions; ++j)
          if (avail_a[i] && avail_b[j] && table[i][j].empty())
            table[i][j] =
                StateSet::single(static_cast<int>(detail::pick(rng, n_states)));
    }
    if (flags.deterministic)
      for (auto& row : table)
        for (StateSet& o : row)
          if (!o.empty()) o = StateSet::single(o.lowest());

    for (int i = 0; i < n_actions; ++i)
      for (int j = 0; j < n_actions; ++j)
        if (!table[i][j].empty())
          g.add_grand_outcome(s, JointAction(ag, {action_ids[i], action_ids[j]}),
                              table[i][j]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Random actual neighborhood frames (two agents)
// ---------------------------------------------------------------------------

// Builds representative families directly, without going through a game:
// per state, a random grand family is drawn, individual families are unions
// of grand subfamilies covering every grand member, and the empty coalition
// gets the grand union. Requested flags are enforced by construction and
// repair. The distribution is construction-biased, not uniform over
// representative frames. Throws GenerationFailed if the independence repair
// cannot settle within the retry budget.
inline ActualNF gen_random_actual_nf(int n_states, int max_family,
                                     ClassFlags flags, std::uint64_t seed) {
  if (n_states < 1 || n_states > 16 || max_family < 1 || max_family > 12)
    throw InvalidParams("gen_random_actual_nf: need 1..16 states, 1..12 family cap");

  std::vector<std::string> state_names;
  for (int i = 0; i < n_states; ++i) state_names.push_back("s" + std::to_string(i));
  ActualNF nf(StateSpace(state_names), AgentSet({"a", "b"}));

  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_states; ++s) {
    if (!flags.serial && detail::pick(rng, 8) == 0) continue;  // all-empty state

    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000)
        throw GenerationFailed("independence repair did not converge");

      std::set<std::uint32_t> grand_bits;
      int k = 1 + static_cast<int>(detail::pick(rng, max_family));
      for (int i = 0; i < k; ++i) {
        StateSet z = detail::random_nonempty_subset(rng, n_states);
        if (flags.deterministic) z = StateSet::single(z.lowest());
        grand_bits.insert(z.bits);
      }
      std::vector<StateSet> grand;
      for (std::uint32_t b : grand_bits) grand.push_back(StateSet(b));

      auto draw_individual = [&]() {
        std::set<std::uint32_t> members;
        int count = 1 + static_cast<int>(detail::pick(rng, max_family));
        for (int i = 0; i < count; ++i) {
          std::uint64_t sub =
              detail::pick(rng, (std::uint64_t{1} << grand.size()) - 1) + 1;
          StateSet u;
          for (std::size_t z = 0; z < grand.size(); ++z)
            if ((sub >> z) & 1) u |= grand[z];
          members.insert(u.bits);
        }
        std::vector<StateSet> out;
        for (std::uint32_t b : members) out.push_back(StateSet(b));
        // Cover every grand member by growing a random existing one.
        for (StateSet z : grand) {
          bool covered = false;
          for (StateSet x : out)
            if (z.subset_of(x)) { covered = true; break; }
          if (!covered)
            out[detail::pick(rng, out.size())] |= z;
        }
        return PowerFamily(std::move(out));
      };

      PowerFamily fa = draw_individual();
      PowerFamily fb = draw_individual();
      PowerFamily fg(grand);

      if (flags.independent) {
        bool stuck = false;
        std::vector<StateSet> extra;
        for (StateSet x : fa.sets()) {
          for (StateSet y : fb.sets()) {
            StateSet meet = x & y;
            bool witnessed = false;
            for (StateSet z : fg.sets())
              if (z.subset_of(meet)) { witnessed = true; break; }
            for (StateSet z : extra)
              if (z.subset_of(meet)) { witnessed = true; break; }
            if (witnessed) continue;
            if (meet.empty()) { stuck = true; break; }
            std::vector<int> elems;
            for (int i = 0; i < n_states; ++i)
              if (meet.contains(i)) elems.push_back(i);
            extra.push_back(
                StateSet::single(elems[detail::pick(rng, elems.size())]));
          }
          if (stuck) break;
        }
        if (stuck) continue;  // disjoint individual powers: redraw the state
        for (StateSet z : extra) fg.insert(z);
      }

      StateSet t = fg.union_all();
      nf.set(Coalition::empty(), s, PowerFamily(std::vector<StateSet>{t}));
      nf.set(Coalition::single(0), s, fa);
      nf.set(Coalition::single(1), s, fb);
      nf.set(Coalition::grand(2), s, fg);
      break;
    }
  }
  return nf;
}

// ---------------------------------------------------------------------------
// Exhaustive local enumeration
// ---------------------------------------------------------------------------

// Number of candidate quadruples enumerate_local_actual filters:
// f_grand, f_a, f_b over all families of nonempty subsets, f_empty binary.
inline std::uint64_t local_actual_candidate_count(int n_successors) {
  std::uint64_t families = std::uint64_t{1} << ((std::uint64_t{1} << n_successors) - 1);
  return 2 * families * families * families;
}

// Yields every quadruple of families over the nonempty subsets of an
// n-successor set that satisfies the four local AC-representativeness
// conditions, in a fixed deterministic order (the all-empty quadruple first).
//
// The filter exploits the conditions' shape instead of materializing all
// candidates: for a fixed grand family, a valid individual family consists of
// decomposition-closed sets and must include a superset of every grand
// member. This is equivalent to filtering the full candidate product, which
// the tests cross-check against an independent implementation.
template <typename Fn>
void enumerate_local_actual(int n_successors, Fn&& yield) {
  if (n_successors < 1 || n_successors > 3)
    throw InvalidParams("enumerate_local_actual: 1..3 successors");

  yield(LocalFamilies{});  // the all-empty quadruple

  int m = (1 << n_successors) - 1;  // nonempty subsets
  auto family_of = [&](std::uint32_t family_mask) {
    std::vector<StateSet> sets;
    for (int s = 1; s <= m; ++s)
      if ((family_mask >> (s - 1)) & 1) sets.push_back(StateSet(s));
    return PowerFamily(std::move(sets));
  };

  for (std::uint32_t gm = 1; gm < (std::uint32_t{1} << m); ++gm) {
    PowerFamily grand = family_of(gm);
    StateSet t = grand.union_all();

    // Decomposition-closed sets w.r.t. the grand family.
    std::vector<std::uint32_t> closed;
    for (int x = 1; x <= m; ++x) {
      StateSet covered;
      for (StateSet z : grand.sets())
        if (z.subset_of(StateSet(x))) covered |= z;
      if (covered == StateSet(x)) closed.push_back(x);
    }

    std::vector<PowerFamily> valid;
    for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << closed.size());
         ++pick) {
      std::vector<StateSet> sets;
      for (std::size_t i = 0; i < closed.size(); ++i)
        if ((pick >> i) & 1) sets.push_back(StateSet(closed[i]));
      bool covers_grand = true;
      for (StateSet z : grand.sets()) {
        bool inside = false;
        for (StateSet x : sets)
          if (z.subset_of(x)) { inside = true; break; }
        if (!inside) { covers_grand = false; break; }
      }
      if (covers_grand) valid.push_back(PowerFamily(std::move(sets)));
    }

    PowerFamily empty_c(std::vector<StateSet>{t});
    for (const PowerFamily& fa : valid)
      for (const PowerFamily& fb : valid)
        yield(LocalFamilies{empty_c, fa, fb, grand});
  }
}

// All antichains over the subsets of an n-set (including the empty antichain
// and the antichain {{}}), in ascending family-mask order. There are 20 for
// n = 3.
inline std::vector<UpsetFamily> all_antichains(int n) {
  if (n < 1 || n > 4) throw InvalidParams("all_antichains: 1..4 states");
  int n_subsets = 1 << n;
  std::vector<UpsetFamily> out;
  for (std::uint32_t fam = 0; fam < (std::uint32_t{1} << n_subsets); ++fam) {
    std::vector<StateSet> members;
    for (int s = 0; s < n_subsets; ++s)
      if ((fam >> s) & 1) members.push_back(StateSet(s));
    bool antichain = true;
    for (StateSet x : members) {
      for (StateSet y : members)
        if (x.proper_subset_of(y) || y.proper_subset_of(x)) {
          antichain = false;
          break;
        }
      if (!antichain) break;
    }
    if (antichain) out.push_back(UpsetFamily::from_family(members));
  }
  return out;
}

// The four local alpha-representativeness conditions on one state's
// antichains.
inline bool local_alpha_representative(const AlphaLocalFamilies& f) {
  const UpsetFamily* families[4] = {&f.empty_c, &f.agent_a, &f.agent_b, &f.grand};
  if (f.empty_c.minimals().size() > 1) return false;
  for (int c = 0; c < 4; ++c)
    if (families[c]->member(StateSet{})) return false;
  StateSet t = f.empty_c.union_of_minimals();
  for (int c = 0; c < 4; ++c)
    for (StateSet x : families[c]->minimals()) {
      bool grounded = false;
      for (StateSet y : families[c]->minimals())
        if (y.subset_of(t) && y.subset_of(x)) { grounded = true; break; }
      if (!grounded) return false;
    }
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      if ((c & ~d) != 0) continue;
      for (StateSet x : families[c]->minimals())
        if (!families[d]->member(x)) return false;
    }
  return true;
}

// Yields every antichain quadruple over the n-successor subset lattice that
// passes the four local alpha-representativeness conditions, in deterministic
// order.
template <typename Fn>
void enumerate_local_alpha(int n_successors, Fn&& yield) {
  if (n_successors < 1 || n_successors > 3)
    throw InvalidParams("enumerate_local_alpha: 1..3 successors");
  std::vector<UpsetFamily> antichains = all_antichains(n_successors);
  for (const UpsetFamily& fe : antichains)
    for (const UpsetFamily& fa : antichains)
      for (const UpsetFamily& fb : antichains)
        for (const UpsetFamily& fg : antichains) {
          AlphaLocalFamilies f{fe, fa, fb, fg};
          if (local_alpha_representative(f)) yield(f);
        }
}

// ---------------------------------------------------------------------------
// Embedding local quadruples as uniform frames
// ---------------------------------------------------------------------------

// Installs one local quadruple at every state of the n-successor space. Game
// frames impose no cross-state constraints, so frame-level properties of the
// embedding coincide with the local ones.
inline ActualNF embed_uniform(const LocalFamilies& f, int n_successors) {
  std::vector<std::string> names;
  for (int i = 0; i < n_successors; ++i)
    names.push_back(std::string(1, static_cast<char>('u' + i)));
  ActualNF nf(StateSpace(names), AgentSet({"a", "b"}));
  for (int s = 0; s < n_successors; ++s) {
    nf.set(Coalition::empty(), s, f.empty_c);
    nf.set(Coalition::single(0), s, f.agent_a);
    nf.set(Coalition::single(1), s, f.agent_b);
    nf.set(Coalition::grand(2), s, f.grand);
  }
  return nf;
}

inline AlphaNF embed_uniform(const AlphaLocalFamilies& f, int n_successors) {
  std::vector<std::string> names;
  for (int i = 0; i < n_successors; ++i)
    names.push_back(std::string(1, static_cast<char>('u' + i)));
  AlphaNF nf(StateSpace(names), AgentSet({"a", "b"}));
  for (int s = 0; s < n_successors; ++s) {
    nf.set(Coalition::empty(), s, f.empty_c);
    nf.set(Coalition::single(0), s, f.agent_a);
    nf.set(Coalition::single(1), s, f.agent_b);
    nf.set(Coalition::grand(2), s, f.grand);
  }
  return nf;
}

}  // namespace cofra
