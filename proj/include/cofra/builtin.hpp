#pragma once

#include "cofra/effectivity.hpp"
#include "cofra/model.hpp"
#include "cofra/synth_actual.hpp"

namespace cofra {

// Two agents in a room with a closed door (w1). The door opens (w2) only if
// both push; an open door stays open.
inline CanonicalGcgf heavy_door_frame() {
  CanonicalGcgf g(StateSpace({"w1", "w2"}), AgentSet({"a", "b"}));
  Coalition ag = g.grand_coalition();
  StateSet w1 = StateSet::single(0), w2 = StateSet::single(1);
  g.add_grand_outcome(0, JointAction(ag, {"rest", "rest"}), w1);
  g.add_grand_outcome(0, JointAction(ag, {"rest", "push"}), w1);
  g.add_grand_outcome(0, JointAction(ag, {"push", "rest"}), w1);
  g.add_grand_outcome(0, JointAction(ag, {"push", "push"}), w2);
  g.add_grand_outcome(1, JointAction(ag, {"rest", "rest"}), w2);
  g.add_grand_outcome(1, JointAction(ag, {"rest", "push"}), w2);
  g.add_grand_outcome(1, JointAction(ag, {"push", "rest"}), w2);
  g.add_grand_outcome(1, JointAction(ag, {"push", "push"}), w2);
  return g;
}

// Same room, but the door is jammed: no action opens it.
inline CanonicalGcgf jammed_door_frame() {
  CanonicalGcgf g(StateSpace({"w1", "w2"}), AgentSet({"a", "b"}));
  Coalition ag = g.grand_coalition();
  StateSet w1 = StateSet::single(0), w2 = StateSet::single(1);
  for (const char* a : {"rest", "push"})
    for (const char* b : {"rest", "push"}) {
      g.add_grand_outcome(0, JointAction(ag, {a, b}), w1);
      g.add_grand_outcome(1, JointAction(ag, {a, b}), w2);
    }
  return g;
}

// An actual neighborhood frame that is representative and STIT-independent
// but cannot come from any independent game frame: both agents hold powers
// {t1,t2} and {t2,t3} whose intersection {t2} refines to no grand power.
inline ActualNF stit_counterexample_frame() {
  StateSpace space({"s", "t1", "t2", "t3"});
  AgentSet agents({"a", "b"});
  ActualNF nf(space, agents);
  StateSet succ = space.set_of({"t1", "t2", "t3"});
  StateSet x1 = space.set_of({"t1", "t2"});
  StateSet x2 = space.set_of({"t2", "t3"});
  PowerFamily pair(std::vector<StateSet>{x1, x2});

  nf.set(Coalition::empty(), 0, PowerFamily(std::vector<StateSet>{succ}));
  nf.set(Coalition::single(0), 0, pair);
  nf.set(Coalition::single(1), 0, pair);
  nf.set(Coalition::grand(2), 0, pair);
  PowerFamily everything(std::vector<StateSet>{space.full()});
  for (int s = 1; s < space.size(); ++s)
    for (std::uint32_t cb = 0; cb < 4; ++cb)
      nf.set(Coalition(cb), s, everything);
  return nf;
}

// The one-state synthesis showcase: both agents can only promise the whole
// successor set {u,v}, while the grand coalition controls which of u, v
// happens. Synthesizing it yields 6 actions per agent and 36 grand pairs.
inline ActualNF worked_synthesis_frame() {
  StateSpace space({"s", "u", "v"});
  AgentSet agents({"a", "b"});
  ActualNF nf(space, agents);
  StateSet w = space.set_of({"u", "v"});
  StateSet u = space.set_of({"u"});
  StateSet v = space.set_of({"v"});
  PowerFamily whole(std::vector<StateSet>{w});
  nf.set(Coalition::empty(), 0, whole);
  nf.set(Coalition::single(0), 0, whole);
  nf.set(Coalition::single(1), 0, whole);
  nf.set(Coalition::grand(2), 0, PowerFamily(std::vector<StateSet>{u, v}));
  return nf;
}

inline LocalFamilies worked_synthesis_families() {
  return local_families_of(worked_synthesis_frame(), 0);
}

// A representative alpha frame where the core union of a nonempty coalition
// is strictly below the successor set: minimals {{u}} under T = {u,v}.
inline AlphaNF strict_core_union_frame() {
  StateSpace space({"u", "v"});
  AgentSet agents({"a", "b"});
  AlphaNF nf(space, agents);
  UpsetFamily whole = UpsetFamily::from_family({space.full()});
  UpsetFamily just_u = UpsetFamily::from_family({space.set_of({"u"})});
  for (int s = 0; s < space.size(); ++s) {
    nf.set(Coalition::empty(), s, whole);
    nf.set(Coalition::single(0), s, just_u);
    nf.set(Coalition::single(1), s, just_u);
    nf.set(Coalition::grand(2), s, just_u);
  }
  return nf;
}

}  // namespace cofra
