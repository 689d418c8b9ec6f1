#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cofra/effectivity.hpp"
#include "cofra/model.hpp"

namespace cofra {

// One counterexample to a frame condition. Fields that a condition does not
// use stay defaulted; `sets` carries the state sets involved, in the order the
// condition quantifies them.
struct ConditionWitness {
  Coalition c;
  Coalition d;
  int state = 0;
  std::vector<StateSet> sets;
};

struct ConditionReport {
  std::string condition;
  bool holds = true;
  std::vector<ConditionWitness> witnesses;

  ConditionReport() = default;
  explicit ConditionReport(std::string name) : condition(std::move(name)) {}

  void fail(ConditionWitness w) {
    holds = false;
    witnesses.push_back(std::move(w));
  }
};

struct NotRepresentative : Error {
  std::vector<ConditionReport> reports;
  explicit NotRepresentative(std::vector<ConditionReport> r)
      : Error("neighborhood frame fails a representativeness condition"),
        reports(std::move(r)) {}
};

struct PreconditionNotChecked : Error {
  std::vector<ConditionReport> reports;
  explicit PreconditionNotChecked(std::vector<ConditionReport> r)
      : Error("derived facts require a representative frame"),
        reports(std::move(r)) {}
};

inline bool all_hold(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports)
    if (!r.holds) return false;
  return true;
}

namespace detail {

template <typename Fn>
void for_each_coalition(int n_agents, Fn&& fn) {
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n_agents); ++cb)
    fn(Coalition(cb));
}

template <typename Fn>
void for_each_subset_pair(int n_agents, Fn&& fn) {  // all C subseteq D
  for (std::uint32_t db = 0; db < (std::uint32_t{1} << n_agents); ++db) {
    std::uint32_t cb = 0;
    while (true) {
      fn(Coalition(cb), Coalition(db));
      cb = (cb - db) & db;
      if (cb == 0) break;
    }
  }
}

template <typename Fn>
void for_each_disjoint_pair(int n_agents, Fn&& fn) {  // all C, D with C cap D = {}
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n_agents); ++cb) {
    std::uint32_t rest = ~cb & ((std::uint32_t{1} << n_agents) - 1);
    std::uint32_t db = 0;
    while (true) {
      fn(Coalition(cb), Coalition(db));
      db = (db - rest) & rest;
      if (db == 0) break;
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Game-frame classification
// ---------------------------------------------------------------------------

inline ClassFlags check_gcgf_class(const CanonicalGcgf& g) {
  int n = g.agents.size();
  ClassFlags flags{true, true, true};

  for (int s = 0; s < g.space.size(); ++s) {
    detail::for_each_coalition(n, [&](Coalition c) {
      if (expand(g, c, s).outcomes.empty()) flags.serial = false;
    });
    for (const auto& [ja, o] : g.grand[s])
      if (!o.is_singleton()) flags.deterministic = false;
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      Expansion ec = expand(g, c, s);
      Expansion ed = expand(g, d, s);
      Expansion eu = expand(g, c.united(d), s);
      for (const auto& [sc, oc] : ec.outcomes)
        for (const auto& [sd, od] : ed.outcomes)
          if (!eu.available(join_actions(sc, sd))) flags.independent = false;
    });
  }
  return flags;
}

// ---------------------------------------------------------------------------
// Actual neighborhood frames
// ---------------------------------------------------------------------------

inline std::vector<ConditionReport> check_ac_representative(const ActualNF& nf) {
  int n = nf.agents.size();
  ConditionReport triviality{"ac_empty_triviality"};
  ConditionReport liveness{"ac_liveness"};
  ConditionReport inclusion{"ac_power_inclusion"};
  ConditionReport decomposition{"ac_power_decomposition"};

  for (int s = 0; s < nf.space.size(); ++s) {
    const PowerFamily& empty_nbhd = nf.at(Coalition::empty(), s);
    if (empty_nbhd.size() > 1) {
      ConditionWitness w{Coalition::empty(), {}, s, empty_nbhd.sets()};
      triviality.fail(std::move(w));
    }
    detail::for_each_coalition(n, [&](Coalition c) {
      if (nf.at(c, s).contains(StateSet{}))
        liveness.fail({c, {}, s, {StateSet{}}});
    });
    detail::for_each_subset_pair(n, [&](Coalition c, Coalition d) {
      const PowerFamily& fc = nf.at(c, s);
      const PowerFamily& fd = nf.at(d, s);
      for (StateSet x : fd.sets()) {
        bool included = false;
        for (StateSet y : fc.sets())
          if (x.subset_of(y)) { included = true; break; }
        if (!included) inclusion.fail({c, d, s, {x}});
      }
      for (StateSet x : fc.sets()) {
        StateSet covered;
        for (StateSet z : fd.sets())
          if (z.subset_of(x)) covered |= z;
        if (!(covered == x)) decomposition.fail({c, d, s, {x, covered}});
      }
    });
  }
  return {triviality, liveness, inclusion, decomposition};
}

inline ClassFlags check_ac_class(const ActualNF& nf) {
  int n = nf.agents.size();
  ClassFlags flags{true, true, true};
  for (int s = 0; s < nf.space.size(); ++s) {
    detail::for_each_coalition(n, [&](Coalition c) {
      if (nf.at(c, s).empty()) flags.serial = false;
    });
    for (StateSet x : nf.at(Coalition::grand(n), s).sets())
      if (!x.is_singleton()) flags.deterministic = false;
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      const PowerFamily& fu = nf.at(c.united(d), s);
      for (StateSet x : nf.at(c, s).sets())
        for (StateSet y : nf.at(d, s).sets()) {
          bool refined = false;
          for (StateSet z : fu.sets())
            if (z.subset_of(x & y)) { refined = true; break; }
          if (!refined) flags.independent = false;
        }
    });
  }
  return flags;
}

// AC-independence with counterexample witnesses: each witness carries a pair
// (X, Y) of powers of disjoint coalitions with no grand refinement inside
// X cap Y.
inline ConditionReport ac_independence_report(const ActualNF& nf) {
  ConditionReport report{"ac_independence"};
  int n = nf.agents.size();
  for (int s = 0; s < nf.space.size(); ++s)
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      const PowerFamily& fu = nf.at(c.united(d), s);
      for (StateSet x : nf.at(c, s).sets())
        for (StateSet y : nf.at(d, s).sets()) {
          bool refined = false;
          for (StateSet z : fu.sets())
            if (z.subset_of(x & y)) { refined = true; break; }
          if (!refined) report.fail({c, d, s, {x, y}});
        }
    });
  return report;
}

inline ConditionReport check_stit_independent(const ActualNF& nf) {
  ConditionReport report{"stit_independence"};
  int n = nf.agents.size();
  for (int s = 0; s < nf.space.size(); ++s) {
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      for (StateSet x : nf.at(c, s).sets())
        for (StateSet y : nf.at(d, s).sets())
          if (!x.intersects(y)) report.fail({c, d, s, {x, y}});
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Alpha neighborhood frames (decided on antichains)
// ---------------------------------------------------------------------------

inline std::vector<ConditionReport> check_alpha_representative(const AlphaNF& nf) {
  int n = nf.agents.size();
  ConditionReport triviality{"alpha_empty_triviality"};
  ConditionReport liveness{"alpha_liveness"};
  ConditionReport groundedness{"alpha_groundedness"};
  ConditionReport monotonicity{"alpha_monotonicity"};

  for (int s = 0; s < nf.space.size(); ++s) {
    const UpsetFamily& empty_nbhd = nf.at(Coalition::empty(), s);
    if (empty_nbhd.minimals().size() > 1)
      triviality.fail({Coalition::empty(), {}, s, empty_nbhd.minimals()});

    detail::for_each_coalition(n, [&](Coalition c) {
      if (nf.at(c, s).member(StateSet{}))
        liveness.fail({c, {}, s, {StateSet{}}});
    });

    // Groundedness: every minimal X must admit a minimal Y below both X and
    // the successor set of s (the union of the empty coalition's core).
    StateSet successor_union = empty_nbhd.union_of_minimals();
    detail::for_each_coalition(n, [&](Coalition c) {
      for (StateSet x : nf.at(c, s).minimals()) {
        bool grounded = false;
        for (StateSet y : nf.at(c, s).minimals())
          if (y.subset_of(successor_union) && y.subset_of(x)) {
            grounded = true;
            break;
          }
        if (!grounded) groundedness.fail({c, {}, s, {x}});
      }
    });

    detail::for_each_subset_pair(n, [&](Coalition c, Coalition d) {
      for (StateSet x : nf.at(c, s).minimals())
        if (!nf.at(d, s).member(x)) monotonicity.fail({c, d, s, {x}});
    });
  }
  return {triviality, liveness, groundedness, monotonicity};
}

inline ClassFlags check_alpha_class(const AlphaNF& nf) {
  int n = nf.agents.size();
  Coalition ag = Coalition::grand(n);
  ClassFlags flags{true, true, true};
  for (int s = 0; s < nf.space.size(); ++s) {
    detail::for_each_coalition(n, [&](Coalition c) {
      if (nf.at(c, s).empty()) flags.serial = false;
    });
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      const UpsetFamily& u = nf.at(c.united(d), s);
      for (StateSet x : nf.at(c, s).minimals())
        for (StateSet y : nf.at(d, s).minimals())
          if (!u.member(x & y)) flags.independent = false;
    });
    // Determinism clauses are vacuous at states where the empty coalition has
    // no neighborhood.
    const UpsetFamily& empty_nbhd = nf.at(Coalition::empty(), s);
    if (!empty_nbhd.empty()) {
      for (StateSet z : nf.at(ag, s).minimals())
        if (!z.is_singleton()) flags.deterministic = false;
      if (!empty_nbhd.union_of_minimals().subset_of(
              nf.at(ag, s).union_of_minimals()))
        flags.deterministic = false;
    }
  }
  return flags;
}

inline std::vector<ConditionReport> check_truly_playable(const AlphaNF& nf) {
  int n = nf.agents.size();
  Coalition ag = Coalition::grand(n);
  ConditionReport liveness{"tp_liveness"};
  ConditionReport safety{"tp_safety"};
  ConditionReport superadditivity{"tp_superadditivity"};
  ConditionReport maximality{"tp_ag_maximality"};
  ConditionReport crown{"tp_crown"};

  if (nf.space.size() > 24)
    throw InvalidParams("AG-maximality sweep limited to 24 states");
  StateSet full = nf.space.full();

  for (int s = 0; s < nf.space.size(); ++s) {
    detail::for_each_coalition(n, [&](Coalition c) {
      const UpsetFamily& u = nf.at(c, s);
      if (u.member(StateSet{})) liveness.fail({c, {}, s, {StateSet{}}});
      if (!u.member(full)) safety.fail({c, {}, s, {full}});
    });
    detail::for_each_disjoint_pair(n, [&](Coalition c, Coalition d) {
      const UpsetFamily& u = nf.at(c.united(d), s);
      for (StateSet x : nf.at(c, s).minimals())
        for (StateSet y : nf.at(d, s).minimals())
          if (!u.member(x & y)) superadditivity.fail({c, d, s, {x, y}});
    });
    const UpsetFamily& empty_nbhd = nf.at(Coalition::empty(), s);
    const UpsetFamily& grand_nbhd = nf.at(ag, s);
    for_each_subset(full, [&](StateSet x) {
      if (!empty_nbhd.member(x.complement_in(full)) && !grand_nbhd.member(x))
        maximality.fail({Coalition::empty(), ag, s, {x}});
    });
    for (StateSet m : grand_nbhd.minimals()) {
      bool crowned = false;
      for (int i = 0; i < nf.space.size(); ++i)
        if (m.contains(i) && grand_nbhd.member(StateSet::single(i))) {
          crowned = true;
          break;
        }
      if (!crowned) crown.fail({ag, {}, s, {m}});
    }
  }
  return {liveness, safety, superadditivity, maximality, crown};
}

// ---------------------------------------------------------------------------
// Derived facts (test oracles; consequences of representativeness)
// ---------------------------------------------------------------------------

inline std::vector<ConditionReport> check_derived_facts(const ActualNF& nf) {
  auto rep = check_ac_representative(nf);
  if (!all_hold(rep)) throw PreconditionNotChecked(std::move(rep));

  int n = nf.agents.size();
  Coalition ag = Coalition::grand(n);
  ConditionReport union_invariant{"fact_union_invariant"};
  ConditionReport emptiness{"fact_emptiness_linked"};
  ConditionReport empty_is_grand_union{"fact_empty_is_grand_union"};
  ConditionReport subset_decomposition{"fact_subset_decomposition"};

  for (int s = 0; s < nf.space.size(); ++s) {
    const PowerFamily& fe = nf.at(Coalition::empty(), s);
    detail::for_each_coalition(n, [&](Coalition c) {
      const PowerFamily& fc = nf.at(c, s);
      if (!(fc.union_all() == fe.union_all()))
        union_invariant.fail({c, {}, s, {fc.union_all(), fe.union_all()}});
      if (fc.empty() != fe.empty()) emptiness.fail({c, {}, s, {}});
    });
    if (!fe.empty()) {
      PowerFamily expected(std::vector<StateSet>{nf.at(ag, s).union_all()});
      if (!(fe == expected))
        empty_is_grand_union.fail({Coalition::empty(), ag, s, fe.sets()});
    }
    detail::for_each_subset_pair(n, [&](Coalition c, Coalition d) {
      for (StateSet x : nf.at(c, s).sets()) {
        StateSet covered;
        for (StateSet z : nf.at(d, s).sets())
          if (z.subset_of(x)) covered |= z;
        if (!(covered == x)) subset_decomposition.fail({c, d, s, {x, covered}});
      }
    });
  }
  return {union_invariant, emptiness, empty_is_grand_union, subset_decomposition};
}

inline std::vector<ConditionReport> check_derived_facts(const AlphaNF& nf) {
  auto rep = check_alpha_representative(nf);
  if (!all_hold(rep)) throw PreconditionNotChecked(std::move(rep));
  if (nf.space.size() > 12)
    throw InvalidParams("literal upset sweep limited to 12 states");

  int n = nf.agents.size();
  ConditionReport emptiness{"fact_alpha_emptiness_linked"};
  ConditionReport inclusion{"fact_alpha_power_inclusion"};
  ConditionReport core_union{"fact_alpha_core_union_bound"};

  for (int s = 0; s < nf.space.size(); ++s) {
    const UpsetFamily& ue = nf.at(Coalition::empty(), s);
    detail::for_each_coalition(n, [&](Coalition c) {
      if (nf.at(c, s).empty() != ue.empty()) emptiness.fail({c, {}, s, {}});
      if (!nf.at(c, s).union_of_minimals().subset_of(ue.union_of_minimals()))
        core_union.fail({c, {}, s,
                         {nf.at(c, s).union_of_minimals(), ue.union_of_minimals()}});
    });
    // Alpha power inclusion: every member of a larger coalition's upset sits
    // inside some member of the smaller coalition's upset.
    StateSet full = nf.space.full();
    detail::for_each_subset_pair(n, [&](Coalition c, Coalition d) {
      const UpsetFamily& ud = nf.at(d, s);
      const UpsetFamily& uc = nf.at(c, s);
      for_each_subset(full, [&](StateSet x) {
        if (!ud.member(x)) return;
        bool included = false;
        for_each_subset(full, [&](StateSet y) {
          if (!included && x.subset_of(y) && uc.member(y)) included = true;
        });
        if (!included) inclusion.fail({c, d, s, {x}});
      });
    });
  }
  return {emptiness, inclusion, core_union};
}

}  // namespace cofra
