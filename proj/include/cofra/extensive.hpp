#pragma once

#include <string>
#include <vector>

#include "cofra/checkers.hpp"
#include "cofra/synth_actual.hpp"

namespace cofra {

// A two-stage turn-based game: agent a picks a stage-1 action, then agent b
// picks a stage-2 action without observing a's choice, and the game reaches a
// terminal state. The indistinguishability of all stage-2 states is
// structural, so b's uniform strategies are exactly the stage-2 actions.
struct TwoStepGame {
  std::vector<std::string> stage1_actions;  // agent a
  std::vector<std::string> stage2_actions;  // agent b
  // terminal[i][j]: state index reached when a plays stage1_actions[i] and b
  // plays stage2_actions[j]; total over the action product.
  std::vector<std::vector<int>> terminal;

  bool operator==(const TwoStepGame&) const = default;
};

enum class Agent { A, B };

// Unfolds a concurrent local component into the corresponding two-step game.
// pre: the component is serial, independent (every action pair listed) and
// deterministic (every grand outcome a singleton); throws NotSID naming the
// failing condition.
inline TwoStepGame unfold(const LocalGame& c) {
  if (c.a_actions.empty() || c.b_actions.empty() || c.grand.empty())
    throw NotSID("component is not serial");
  TwoStepGame game;
  game.stage1_actions = c.a_actions;
  game.stage2_actions = c.b_actions;
  game.terminal.assign(c.a_actions.size(),
                       std::vector<int>(c.b_actions.size(), -1));
  for (std::size_t i = 0; i < c.a_actions.size(); ++i)
    for (std::size_t j = 0; j < c.b_actions.size(); ++j) {
      auto it = c.grand.find({c.a_actions[i], c.b_actions[j]});
      if (it == c.grand.end()) throw NotSID("component is not independent");
      if (!it->second.is_singleton())
        throw NotSID("component is not deterministic");
      game.terminal[i][j] = it->second.lowest();
    }
  return game;
}

// Folds a two-step game back into a concurrent local component: the outcome
// of each action pair is the terminal state it reaches.
inline LocalGame fold(const TwoStepGame& game) {
  LocalGame c;
  c.a_actions = game.stage1_actions;
  c.b_actions = game.stage2_actions;
  std::sort(c.a_actions.begin(), c.a_actions.end());
  std::sort(c.b_actions.begin(), c.b_actions.end());
  for (std::size_t i = 0; i < game.stage1_actions.size(); ++i)
    for (std::size_t j = 0; j < game.stage2_actions.size(); ++j) {
      StateSet t = StateSet::single(game.terminal[i][j]);
      c.grand[{game.stage1_actions[i], game.stage2_actions[j]}] = t;
      c.out_a[game.stage1_actions[i]] |= t;
      c.out_b[game.stage2_actions[j]] |= t;
    }
  return c;
}

// The basic powers of one agent: for a, the terminal sets its stage-1 actions
// sweep over all of b's replies; for b, the terminal sets its stage-2 actions
// sweep over all of a's choices. Each such set is both guaranteed (safety)
// and fully realizable (tightness) under the corresponding uniform strategy.
inline PowerFamily basic_powers(const TwoStepGame& game, Agent agent) {
  std::vector<StateSet> sets;
  if (agent == Agent::A) {
    for (std::size_t i = 0; i < game.stage1_actions.size(); ++i) {
      StateSet reach;
      for (std::size_t j = 0; j < game.stage2_actions.size(); ++j)
        reach |= StateSet::single(game.terminal[i][j]);
      sets.push_back(reach);
    }
  } else {
    for (std::size_t j = 0; j < game.stage2_actions.size(); ++j) {
      StateSet reach;
      for (std::size_t i = 0; i < game.stage1_actions.size(); ++i)
        reach |= StateSet::single(game.terminal[i][j]);
      sets.push_back(reach);
    }
  }
  return PowerFamily(std::move(sets));
}

// Non-emptiness, consistency and exhaustiveness of a basic-power pair.
inline std::vector<ConditionReport> check_bbe_conditions(const PowerFamily& xa,
                                                         const PowerFamily& yb) {
  ConditionReport nonempty{"bbe_nonempty"};
  ConditionReport consistency{"bbe_consistency"};
  ConditionReport exhaustiveness{"bbe_exhaustiveness"};

  if (xa.empty() || yb.empty()) nonempty.fail({{}, {}, 0, {}});
  for (StateSet x : xa.sets())
    for (StateSet y : yb.sets())
      if (!x.intersects(y)) consistency.fail({{}, {}, 0, {x, y}});
  if (!(xa.union_all() == yb.union_all()))
    exhaustiveness.fail({{}, {}, 0, {xa.union_all(), yb.union_all()}});
  return {nonempty, consistency, exhaustiveness};
}

}  // namespace cofra
