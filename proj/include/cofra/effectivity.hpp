#pragma once

#include "cofra/model.hpp"
#include "cofra/sets.hpp"

namespace cofra {

// An actual neighborhood frame: one family of state sets per coalition and
// state. nbhd[c.bits][s] is total over all coalitions and states.
struct ActualNF {
  StateSpace space;
  AgentSet agents;
  std::vector<std::vector<PowerFamily>> nbhd;

  ActualNF(StateSpace sp, AgentSet ag)
      : space(std::move(sp)), agents(std::move(ag)) {
    nbhd.assign(std::size_t{1} << agents.size(),
                std::vector<PowerFamily>(space.size()));
  }

  const PowerFamily& at(Coalition c, int s) const { return nbhd[c.bits][s]; }
  void set(Coalition c, int s, PowerFamily f) { nbhd[c.bits][s] = std::move(f); }

  bool operator==(const ActualNF&) const = default;
};

// An alpha neighborhood frame; upward closure is implicit in the antichain
// representation.
struct AlphaNF {
  StateSpace space;
  AgentSet agents;
  std::vector<std::vector<UpsetFamily>> nbhd;

  AlphaNF(StateSpace sp, AgentSet ag)
      : space(std::move(sp)), agents(std::move(ag)) {
    nbhd.assign(std::size_t{1} << agents.size(),
                std::vector<UpsetFamily>(space.size()));
  }

  const UpsetFamily& at(Coalition c, int s) const { return nbhd[c.bits][s]; }
  void set(Coalition c, int s, UpsetFamily f) { nbhd[c.bits][s] = std::move(f); }

  bool operator==(const AlphaNF&) const = default;
};

// The nonmonotonic core of an explicitly listed family: the antichain of its
// subset-minimal members.
inline UpsetFamily core(const PowerFamily& family) {
  return UpsetFamily::from_family(family);
}

inline bool upset_membership(const UpsetFamily& u, StateSet x) {
  return u.member(x);
}

// EF^ac: the outcome sets of the available joint actions. Never contains the
// empty set, since stored grand outcomes are nonempty.
inline PowerFamily actual_effectivity(const CanonicalGcgf& g, Coalition c, int s) {
  Expansion e = expand(g, c, s);
  std::vector<StateSet> sets;
  sets.reserve(e.outcomes.size());
  for (const auto& [ja, o] : e.outcomes) sets.push_back(o);
  return PowerFamily(std::move(sets));
}

// EF^alpha, by its antichain of minimal elements.
inline UpsetFamily alpha_effectivity(const CanonicalGcgf& g, Coalition c, int s) {
  return UpsetFamily::from_family(actual_effectivity(g, c, s));
}

inline ActualNF induce_actual(const CanonicalGcgf& g) {
  ActualNF nf(g.space, g.agents);
  int n = g.agents.size();
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n); ++cb)
    for (int s = 0; s < g.space.size(); ++s)
      nf.set(Coalition(cb), s, actual_effectivity(g, Coalition(cb), s));
  return nf;
}

inline AlphaNF induce_alpha(const CanonicalGcgf& g) {
  AlphaNF nf(g.space, g.agents);
  int n = g.agents.size();
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n); ++cb)
    for (int s = 0; s < g.space.size(); ++s)
      nf.set(Coalition(cb), s, alpha_effectivity(g, Coalition(cb), s));
  return nf;
}

}  // namespace cofra
