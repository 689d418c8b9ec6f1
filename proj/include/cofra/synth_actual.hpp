#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cofra/checkers.hpp"
#include "cofra/effectivity.hpp"
#include "cofra/model.hpp"

namespace cofra {

// The four families of one state, viewed as the local neighborhoods of the
// empty coalition, agent a, agent b, and the grand coalition.
struct LocalFamilies {
  PowerFamily empty_c;
  PowerFamily agent_a;
  PowerFamily agent_b;
  PowerFamily grand;

  bool operator==(const LocalFamilies&) const = default;
};

// The per-state slice of a two-agent game frame produced by synthesis.
// Invariants: every listed individual action has a nonempty outcome, every
// grand entry is nonempty, and every individual action satisfies the local
// GCI-condition (its outcome equals the union of its grand extensions).
struct LocalGame {
  std::string state_tag;
  std::vector<std::string> a_actions;  // sorted
  std::vector<std::string> b_actions;  // sorted
  std::map<std::string, StateSet> out_a;
  std::map<std::string, StateSet> out_b;
  std::map<std::pair<std::string, std::string>, StateSet> grand;

  bool empty() const { return a_actions.empty() && b_actions.empty(); }
};

// The families a local game induces: its local actual effectivity.
inline LocalFamilies induced_local_families(const LocalGame& game) {
  std::vector<StateSet> fa, fb, fg;
  for (const auto& [a, o] : game.out_a) fa.push_back(o);
  for (const auto& [b, o] : game.out_b) fb.push_back(o);
  StateSet successors;
  for (const auto& [pair, o] : game.grand) {
    fg.push_back(o);
    successors |= o;
  }
  LocalFamilies f;
  f.agent_a = PowerFamily(std::move(fa));
  f.agent_b = PowerFamily(std::move(fb));
  f.grand = PowerFamily(std::move(fg));
  if (!successors.empty())
    f.empty_c = PowerFamily(std::vector<StateSet>{successors});
  return f;
}

inline ClassFlags local_game_class(const LocalGame& game) {
  ClassFlags flags{true, true, true};
  if (game.a_actions.empty() || game.b_actions.empty() || game.grand.empty())
    flags.serial = false;
  for (const auto& a : game.a_actions)
    for (const auto& b : game.b_actions)
      if (!game.grand.count({a, b})) flags.independent = false;
  for (const auto& [pair, o] : game.grand)
    if (!o.is_singleton()) flags.deterministic = false;
  return flags;
}

// The four AC-representativeness conditions restricted to one state's
// families.
inline std::vector<ConditionReport> check_local_ac_representative(
    const LocalFamilies& f) {
  ConditionReport triviality{"ac_empty_triviality"};
  ConditionReport liveness{"ac_liveness"};
  ConditionReport inclusion{"ac_power_inclusion"};
  ConditionReport decomposition{"ac_power_decomposition"};

  if (f.empty_c.size() > 1)
    triviality.fail({Coalition::empty(), {}, 0, f.empty_c.sets()});

  const PowerFamily* families[4] = {&f.empty_c, &f.agent_a, &f.agent_b, &f.grand};
  for (int c = 0; c < 4; ++c)
    if (families[c]->contains(StateSet{}))
      liveness.fail({Coalition(static_cast<std::uint32_t>(c)), {}, 0, {StateSet{}}});

  // Coalition lattice over indices {0: empty, 1: a, 2: b, 3: grand}.
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      if ((c & ~d) != 0) continue;  // require C subseteq D
      const PowerFamily& fc = *families[c];
      const PowerFamily& fd = *families[d];
      for (StateSet x : fd.sets()) {
        bool included = false;
        for (StateSet y : fc.sets())
          if (x.subset_of(y)) { included = true; break; }
        if (!included)
          inclusion.fail({Coalition(static_cast<std::uint32_t>(c)),
                          Coalition(static_cast<std::uint32_t>(d)), 0, {x}});
      }
      for (StateSet x : fc.sets()) {
        StateSet covered;
        for (StateSet z : fd.sets())
          if (z.subset_of(x)) covered |= z;
        if (!(covered == x))
          decomposition.fail({Coalition(static_cast<std::uint32_t>(c)),
                              Coalition(static_cast<std::uint32_t>(d)), 0,
                              {x, covered}});
      }
    }
  return {triviality, liveness, inclusion, decomposition};
}

namespace detail {

// Deterministic witness choice: the lex-least member of `family` containing
// `inner`. pre: one exists.
inline StateSet least_superset(const PowerFamily& family, StateSet inner) {
  for (StateSet x : family.sets())  // lex order
    if (inner.subset_of(x)) return x;
  throw Error("no superset witness in family");
}

// Deterministic witness choice: the lex-least member of `family` inside
// `outer`, if any.
inline bool least_subset(const PowerFamily& family, StateSet outer, StateSet* out) {
  for (StateSet z : family.sets())
    if (z.subset_of(outer)) { *out = z; return true; }
  return false;
}

struct NameTable {
  // One entry per action name alpha_{group-power-witness} / beta_{...}.
  struct Name {
    int group;         // 1, 2 or 3
    StateSet power;    // the named individual power (= the action's outcome)
    StateSet witness;  // the grand-family member below it
    std::string id;
  };
  std::vector<Name> names;
  // index_of[(group-1)][power][witness] -> position in `names`
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> index_by_gpw[3];

  int find(int group, StateSet power, StateSet witness) const {
    auto it = index_by_gpw[group - 1].find({power.bits, witness.bits});
    if (it == index_by_gpw[group - 1].end())
      throw Error("missing name in construction");
    return it->second;
  }
};

// Set rendering inside identifiers joins state names with '.', keeping the
// comma free for the action-tuple strings of the JSON format.
inline std::string render_set_id(const StateSpace& space, StateSet s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < space.size(); ++i) {
    if (!s.contains(i)) continue;
    if (!first) out += '.';
    out += space.name(i);
    first = false;
  }
  return out + "}";
}

inline std::string render_name(const StateSpace& space, std::string_view tag,
                               char agent, int group, StateSet power,
                               StateSet witness) {
  std::string id(tag);
  id += '/';
  id += agent;
  id += '/';
  id += std::to_string(group);
  id += '-';
  id += render_set_id(space, power);
  id += '-';
  id += render_set_id(space, witness);
  return id;
}

inline NameTable make_names(const StateSpace& space, std::string_view tag,
                            char agent, const PowerFamily& individual,
                            const PowerFamily& grand) {
  NameTable table;
  for (int group = 1; group <= 3; ++group)
    for (StateSet x : individual.sets())
      for (StateSet z : grand.sets()) {
        if (!z.subset_of(x)) continue;
        NameTable::Name name{group, x, z,
                             render_name(space, tag, agent, group, x, z)};
        table.index_by_gpw[group - 1][{x.bits, z.bits}] =
            static_cast<int>(table.names.size());
        table.names.push_back(std::move(name));
      }
  return table;
}

}  // namespace detail

// Builds one local game whose actual effectivity equals the given families.
// Step 1 introduces three groups of names for every (individual power, grand
// witness) pair; Step 2 runs six pairing sub-steps that make each group of
// names satisfy the local GCI-condition in turn; Step 3 pairs every remaining
// pair of names that admits a grand-family outcome inside both powers. All
// choices follow the lex-least witness rule, so the construction is
// deterministic.
//
// pre: the families satisfy the four local AC-representativeness conditions
// (re-checked here; throws NotRepresentative).
inline LocalGame synthesize_local_actual(const StateSpace& space,
                                         std::string_view state_tag,
                                         const LocalFamilies& f) {
  auto rep = check_local_ac_representative(f);
  if (!all_hold(rep)) throw NotRepresentative(std::move(rep));

  LocalGame game;
  game.state_tag = std::string(state_tag);
  if (f.empty_c.empty()) return game;  // trivial case: no actions at all

  detail::NameTable a_names =
      detail::make_names(space, state_tag, 'a', f.agent_a, f.grand);
  detail::NameTable b_names =
      detail::make_names(space, state_tag, 'b', f.agent_b, f.grand);

  int na = static_cast<int>(a_names.names.size());
  int nb = static_cast<int>(b_names.names.size());
  // grand_matrix[i][j]: outcome of (a_names[i], b_names[j]); empty = unpaired.
  std::vector<std::vector<StateSet>> grand_matrix(
      na, std::vector<StateSet>(nb));
  std::vector<StateSet> covered_a(na), covered_b(nb);

  auto pair_actions = [&](int i, int j, StateSet outcome) {
    // The group schedule guarantees each pair is declared at most once.
    if (!grand_matrix[i][j].empty()) throw Error("pairing declared twice");
    grand_matrix[i][j] = outcome;
    covered_a[i] |= outcome;
    covered_b[j] |= outcome;
  };

  // Step 2: the six sub-steps. Groups cycle so that the partner never belongs
  // to a group whose GCI-condition is already settled.
  auto settle_a_group = [&](int group, int partner_group) {
    for (int i = 0; i < na; ++i) {
      const auto& name = a_names.names[i];
      if (name.group != group) continue;
      if (covered_a[i] == name.power) continue;  // already satisfies GCI
      for (StateSet z : f.grand.sets()) {
        if (!z.subset_of(name.power)) continue;
        StateSet partner_power = detail::least_superset(f.agent_b, z);
        int j = b_names.find(partner_group, partner_power, z);
        pair_actions(i, j, z);
      }
    }
  };
  auto settle_b_group = [&](int group, int partner_group) {
    for (int j = 0; j < nb; ++j) {
      const auto& name = b_names.names[j];
      if (name.group != group) continue;
      if (covered_b[j] == name.power) continue;
      for (StateSet z : f.grand.sets()) {
        if (!z.subset_of(name.power)) continue;
        StateSet partner_power = detail::least_superset(f.agent_a, z);
        int i = a_names.find(partner_group, partner_power, z);
        pair_actions(i, j, z);
      }
    }
  };

  settle_a_group(1, 2);  // group-1 a-names, paired with group-2 b-names
  settle_b_group(1, 2);  // group-1 b-names, paired with group-2 a-names
  settle_a_group(2, 3);
  settle_b_group(2, 3);
  settle_a_group(3, 1);
  settle_b_group(3, 1);

  // Step 3: pair whatever else can safely carry a grand outcome, iterating
  // a-actions then b-actions in identifier order.
  std::vector<int> a_order(na), b_order(nb);
  for (int i = 0; i < na; ++i) a_order[i] = i;
  for (int j = 0; j < nb; ++j) b_order[j] = j;
  std::sort(a_order.begin(), a_order.end(), [&](int l, int r) {
    return a_names.names[l].id < a_names.names[r].id;
  });
  std::sort(b_order.begin(), b_order.end(), [&](int l, int r) {
    return b_names.names[l].id < b_names.names[r].id;
  });
  for (int i : a_order)
    for (int j : b_order) {
      if (!grand_matrix[i][j].empty()) continue;
      StateSet z;
      if (detail::least_subset(f.grand,
                               a_names.names[i].power & b_names.names[j].power,
                               &z))
        pair_actions(i, j, z);
    }

  for (const auto& name : a_names.names) {
    game.a_actions.push_back(name.id);
    game.out_a[name.id] = name.power;
  }
  for (const auto& name : b_names.names) {
    game.b_actions.push_back(name.id);
    game.out_b[name.id] = name.power;
  }
  std::sort(game.a_actions.begin(), game.a_actions.end());
  std::sort(game.b_actions.begin(), game.b_actions.end());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (!grand_matrix[i][j].empty())
        game.grand[{a_names.names[i].id, b_names.names[j].id}] =
            grand_matrix[i][j];
  return game;
}

inline LocalFamilies local_families_of(const ActualNF& nf, int s) {
  LocalFamilies f;
  f.empty_c = nf.at(Coalition::empty(), s);
  f.agent_a = nf.at(Coalition::single(0), s);
  f.agent_b = nf.at(Coalition::single(1), s);
  f.grand = nf.at(Coalition::grand(2), s);
  return f;
}

// Assembles per-state local games into one frame. Local alphabets are kept
// disjoint by the state tag in every identifier, so a joint action mixing
// states is simply absent from the grand outcome map (outcome {}).
//
// pre: nf has exactly two agents and passes check_ac_representative.
inline CanonicalGcgf synthesize_actual(const ActualNF& nf) {
  if (nf.agents.size() != 2)
    throw NotTwoAgents("synthesis requires exactly two agents");
  auto rep = check_ac_representative(nf);
  if (!all_hold(rep)) throw NotRepresentative(std::move(rep));

  CanonicalGcgf g(nf.space, nf.agents);
  for (int s = 0; s < nf.space.size(); ++s) {
    LocalGame local = synthesize_local_actual(nf.space, nf.space.name(s),
                                              local_families_of(nf, s));
    for (const auto& [pair, outcome] : local.grand)
      g.add_grand_outcome(
          s, JointAction(g.grand_coalition(), {pair.first, pair.second}),
          outcome);
  }
  return g;
}

}  // namespace cofra
