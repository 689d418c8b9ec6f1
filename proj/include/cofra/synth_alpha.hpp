#pragma once

#include "cofra/checkers.hpp"
#include "cofra/synth_actual.hpp"

namespace cofra {

enum class BranchMode {
  Auto,                 // deterministic branch iff the frame is alpha-deterministic
  ForceDeterministic,   // requires an alpha-deterministic frame
  ForceNonDeterministic
};

// Reduces the alpha neighborhoods at one state to an actual local structure.
// T is the unique minimal of the empty coalition's neighborhood. In the
// non-deterministic branch every family consists of the upset members inside
// T; the deterministic branch instead takes the grand coalition's core as the
// grand family, which keeps all grand outcomes singletons.
//
// pre: nf passes check_alpha_representative and nbhd(empty, s) is nonempty.
inline LocalFamilies restrict_to_core(const AlphaNF& nf, int s,
                                      bool deterministic_branch) {
  const UpsetFamily& empty_nbhd = nf.at(Coalition::empty(), s);
  if (empty_nbhd.empty())
    throw EmptyAtState("empty coalition has no neighborhood at state " +
                       nf.space.name(s));
  if (empty_nbhd.minimals().size() != 1)
    throw NotRepresentative(check_alpha_representative(nf));
  if (deterministic_branch && !check_alpha_class(nf).deterministic)
    throw NotDeterministic(
        "deterministic branch requested on a frame that is not alpha-deterministic");

  StateSet t = empty_nbhd.minimals().front();

  auto members_below_t = [&](const UpsetFamily& u) {
    std::vector<StateSet> sets;
    for_each_subset(t, [&](StateSet x) {
      if (u.member(x)) sets.push_back(x);
    });
    return PowerFamily(std::move(sets));
  };

  LocalFamilies f;
  f.empty_c = members_below_t(empty_nbhd);
  f.agent_a = members_below_t(nf.at(Coalition::single(0), s));
  f.agent_b = members_below_t(nf.at(Coalition::single(1), s));
  if (deterministic_branch)
    f.grand = PowerFamily(nf.at(Coalition::grand(2), s).minimals());
  else
    f.grand = members_below_t(nf.at(Coalition::grand(2), s));
  return f;
}

// pre: nf has exactly two agents and passes check_alpha_representative.
// The branch is selected per detected alpha-determinism unless forced.
inline CanonicalGcgf synthesize_alpha(const AlphaNF& nf,
                                      BranchMode mode = BranchMode::Auto) {
  if (nf.agents.size() != 2)
    throw NotTwoAgents("synthesis requires exactly two agents");
  auto rep = check_alpha_representative(nf);
  if (!all_hold(rep)) throw NotRepresentative(std::move(rep));

  bool deterministic_branch;
  switch (mode) {
    case BranchMode::Auto:
      deterministic_branch = check_alpha_class(nf).deterministic;
      break;
    case BranchMode::ForceDeterministic:
      if (!check_alpha_class(nf).deterministic)
        throw NotDeterministic(
            "deterministic branch requested on a frame that is not "
            "alpha-deterministic");
      deterministic_branch = true;
      break;
    case BranchMode::ForceNonDeterministic:
      deterministic_branch = false;
      break;
  }

  CanonicalGcgf g(nf.space, nf.agents);
  for (int s = 0; s < nf.space.size(); ++s) {
    if (nf.at(Coalition::empty(), s).empty()) continue;  // trivial local game
    LocalFamilies families = restrict_to_core(nf, s, deterministic_branch);
    LocalGame local =
        synthesize_local_actual(nf.space, nf.space.name(s), families);
    for (const auto& [pair, outcome] : local.grand)
      g.add_grand_outcome(
          s, JointAction(g.grand_coalition(), {pair.first, pair.second}),
          outcome);
  }
  return g;
}

}  // namespace cofra
