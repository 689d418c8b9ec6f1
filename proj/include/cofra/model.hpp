#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cofra/errors.hpp"
#include "cofra/sets.hpp"

namespace cofra {

// ---------------------------------------------------------------------------
// Agents and coalitions
// ---------------------------------------------------------------------------

class AgentSet {
 public:
  AgentSet() = default;
  explicit AgentSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidParams("agent set must be nonempty");
    if (names_.size() > 8) throw InvalidParams("at most 8 agents supported");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
      throw InvalidParams("agent names must be distinct");
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == name) return i;
    throw InvalidParams("unknown agent: " + name);
  }

  bool operator==(const AgentSet&) const = default;

 private:
  std::vector<std::string> names_;
};

// A subset of the agent set, as a bit mask over agent indices.
struct Coalition {
  std::uint32_t bits = 0;

  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t b) : bits(b) {}

  static constexpr Coalition empty() { return Coalition(0); }
  static constexpr Coalition single(int i) { return Coalition(std::uint32_t{1} << i); }
  static constexpr Coalition grand(int n_agents) {
    return Coalition((std::uint32_t{1} << n_agents) - 1);
  }

  constexpr bool is_empty() const { return bits == 0; }
  constexpr bool contains(int i) const { return (bits >> i) & 1u; }
  constexpr bool subset_of(Coalition o) const { return (bits & ~o.bits) == 0; }
  constexpr bool disjoint_from(Coalition o) const { return (bits & o.bits) == 0; }
  constexpr Coalition united(Coalition o) const { return Coalition(bits | o.bits); }
  int size() const { return __builtin_popcount(bits); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  constexpr auto operator<=>(const Coalition&) const = default;
};

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidParams("state space must be nonempty");
    if (names_.size() > 32) throw InvalidParams("at most 32 states supported");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
      throw InvalidParams("state names must be distinct");
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == name) return i;
    throw InvalidParams("unknown state: " + name);
  }
  StateSet full() const { return StateSet::full(size()); }

  StateSet set_of(std::initializer_list<const char*> names) const {
    StateSet s;
    for (const char* n : names) s |= StateSet::single(index(n));
    return s;
  }

  std::string render(StateSet s) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
      if (!s.contains(i)) continue;
      if (!first) out += ",";
      out += names_[i];
      first = false;
    }
    return out + "}";
  }

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Joint actions
// ---------------------------------------------------------------------------

// A total assignment of one action to each member of a coalition. Actions are
// listed in ascending agent-index order; the empty coalition has exactly one
// joint action, the empty assignment.
struct JointAction {
  Coalition coalition;
  std::vector<std::string> actions;

  JointAction() = default;
  JointAction(Coalition c, std::vector<std::string> a)
      : coalition(c), actions(std::move(a)) {
    if (static_cast<int>(actions.size()) != coalition.size())
      throw InvalidParams("joint action must assign exactly one action per member");
  }

  const std::string& action_of(int agent) const {
    int slot = 0;
    for (int i = 0; i < agent; ++i)
      if (coalition.contains(i)) ++slot;
    if (!coalition.contains(agent))
      throw InvalidParams("agent not in coalition");
    return actions[slot];
  }

  auto operator<=>(const JointAction&) const = default;
};

inline JointAction restrict_action(const JointAction& sigma, Coalition c) {
  if (!c.subset_of(sigma.coalition))
    throw CoalitionNotSubset("restriction target is not a subcoalition");
  std::vector<std::string> acts;
  int slot = 0;
  for (int i = 0; i < 32; ++i) {
    if (!sigma.coalition.contains(i)) continue;
    if (c.contains(i)) acts.push_back(sigma.actions[slot]);
    ++slot;
  }
  return JointAction(c, std::move(acts));
}

inline JointAction join_actions(const JointAction& sc, const JointAction& sd) {
  if (!sc.coalition.disjoint_from(sd.coalition))
    throw OverlappingCoalitions("cannot join actions of overlapping coalitions");
  Coalition u = sc.coalition.united(sd.coalition);
  std::vector<std::string> acts;
  for (int i = 0; i < 32; ++i) {
    if (sc.coalition.contains(i)) acts.push_back(sc.action_of(i));
    else if (sd.coalition.contains(i)) acts.push_back(sd.action_of(i));
  }
  return JointAction(u, std::move(acts));
}

// ---------------------------------------------------------------------------
// Class flags
// ---------------------------------------------------------------------------

// Seriality / independence / determinism; the eight values of this triple
// correspond to the eight frame classes.
struct ClassFlags {
  bool serial = false;
  bool independent = false;
  bool deterministic = false;

  // True iff every flag set in `other` is also set here.
  bool covers(ClassFlags other) const {
    return (!other.serial || serial) && (!other.independent || independent) &&
           (!other.deterministic || deterministic);
  }

  std::string str() const {
    std::string s;
    if (serial) s += 'S';
    if (independent) s += 'I';
    if (deterministic) s += 'D';
    return s.empty() ? "eps" : s;
  }

  static ClassFlags parse(const std::string& s) {
    if (s == "eps" || s.empty()) return {};
    ClassFlags f;
    for (char c : s) {
      if (c == 'S') f.serial = true;
      else if (c == 'I') f.independent = true;
      else if (c == 'D') f.deterministic = true;
      else throw InvalidParams("bad class string: " + s);
    }
    return f;
  }

  static std::vector<ClassFlags> all_eight() {
    std::vector<ClassFlags> out;
    for (int m = 0; m < 8; ++m)
      out.push_back(ClassFlags{(m & 1) != 0, (m & 2) != 0, (m & 4) != 0});
    return out;
  }

  bool operator==(const ClassFlags&) const = default;
};

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

// An action frame with explicitly stated availability and outcome entries.
// Unlisted (coalition, state, action) triples have outcome {}; unlisted
// (coalition, state) pairs have no available actions.
struct RawActionFrame {
  StateSpace space;
  AgentSet agents;
  std::vector<std::string> action_ids;  // sorted, distinct
  // av[c.bits][s] and out[c.bits][s]; always sized 2^n x |ST|.
  std::vector<std::vector<std::set<JointAction>>> av;
  std::vector<std::vector<std::map<JointAction, StateSet>>> out;

  RawActionFrame(StateSpace sp, AgentSet ag, std::vector<std::string> acts)
      : space(std::move(sp)), agents(std::move(ag)), action_ids(std::move(acts)) {
    std::sort(action_ids.begin(), action_ids.end());
    action_ids.erase(std::unique(action_ids.begin(), action_ids.end()),
                     action_ids.end());
    if (action_ids.empty()) throw InvalidParams("action set must be nonempty");
    std::size_t n_coal = std::size_t{1} << agents.size();
    av.assign(n_coal, std::vector<std::set<JointAction>>(space.size()));
    out.assign(n_coal, std::vector<std::map<JointAction, StateSet>>(space.size()));
  }

  void check_action_known(const JointAction& ja) const {
    for (const auto& a : ja.actions) {
      if (!std::binary_search(action_ids.begin(), action_ids.end(), a))
        throw InvalidParams("joint action uses unknown action identifier: " + a);
      if (a.find(',') != std::string::npos)
        throw InvalidParams("action identifiers must not contain ','");
    }
  }

  void set_available(Coalition c, int s, const JointAction& ja) {
    check_action_known(ja);
    av[c.bits][s].insert(ja);
  }
  void set_outcome(Coalition c, int s, const JointAction& ja, StateSet o) {
    check_action_known(ja);
    out[c.bits][s][ja] = o;
  }

  StateSet outcome(Coalition c, int s, const JointAction& ja) const {
    auto it = out[c.bits][s].find(ja);
    return it == out[c.bits][s].end() ? StateSet{} : it->second;
  }
};

struct GciViolation {
  Coalition coalition;
  int state = 0;
  JointAction action;
  StateSet stated;
  StateSet induced;
};

struct OdaViolation {
  Coalition coalition;
  int state = 0;
  std::vector<JointAction> missing;  // nonempty outcome but not listed available
  std::vector<JointAction> extra;    // listed available but empty outcome
};

struct ValidationReport {
  std::vector<GciViolation> gci;
  std::vector<OdaViolation> oda;
  bool ok() const { return gci.empty() && oda.empty(); }
};

struct NotAGcgf : Error {
  ValidationReport report;
  explicit NotAGcgf(ValidationReport r)
      : Error("frame violates the GCI or ODA condition"), report(std::move(r)) {}
};

namespace detail {

// All joint actions of `c` over the identifiers in `ids` (|ids|^|c| tuples),
// in ascending tuple order.
inline std::vector<JointAction> all_joint_actions(Coalition c,
                                                  const std::vector<std::string>& ids) {
  std::vector<JointAction> result;
  int k = c.size();
  std::vector<int> idx(k, 0);
  while (true) {
    std::vector<std::string> acts;
    acts.reserve(k);
    for (int i = 0; i < k; ++i) acts.push_back(ids[idx[i]]);
    result.emplace_back(c, std::move(acts));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] + 1 == static_cast<int>(ids.size())) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[pos];
  }
  return result;
}

}  // namespace detail

// Checks the GCI-condition for every (coalition, state, joint action) and the
// ODA-condition for every (coalition, state). Violations are data, not errors;
// an empty report means the frame is a general concurrent game frame.
inline ValidationReport validate_gcgf(const RawActionFrame& f) {
  ValidationReport report;
  int n = f.agents.size();
  Coalition ag = Coalition::grand(n);
  auto grand_actions = detail::all_joint_actions(ag, f.action_ids);

  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n); ++cb) {
    Coalition c(cb);
    auto coalition_actions = detail::all_joint_actions(c, f.action_ids);
    for (int s = 0; s < f.space.size(); ++s) {
      std::set<JointAction> should_be_available;
      for (const JointAction& sigma : coalition_actions) {
        StateSet induced;
        for (const JointAction& grand : grand_actions) {
          if (restrict_action(grand, c) == sigma)
            induced |= f.outcome(ag, s, grand);
        }
        StateSet stated = f.outcome(c, s, sigma);
        if (!(stated == induced))
          report.gci.push_back({c, s, sigma, stated, induced});
        if (!stated.empty()) should_be_available.insert(sigma);
      }
      const auto& listed = f.av[cb][s];
      OdaViolation v{c, s, {}, {}};
      for (const JointAction& sigma : should_be_available)
        if (!listed.count(sigma)) v.missing.push_back(sigma);
      for (const JointAction& sigma : listed)
        if (!should_be_available.count(sigma)) v.extra.push_back(sigma);
      if (!v.missing.empty() || !v.extra.empty()) report.oda.push_back(std::move(v));
    }
  }
  return report;
}

// A general concurrent game frame stored by its grand-coalition outcome
// function. Only nonempty grand outcomes are stored; absence encodes
// unavailability with outcome {}. Availability and outcomes of every other
// coalition are derived (expand), so GCI and ODA hold by construction.
struct CanonicalGcgf {
  StateSpace space;
  AgentSet agents;
  std::vector<std::string> action_ids;                 // sorted, distinct
  std::vector<std::map<JointAction, StateSet>> grand;  // by state index

  CanonicalGcgf(StateSpace sp, AgentSet ag)
      : space(std::move(sp)), agents(std::move(ag)), grand(space.size()) {}

  Coalition grand_coalition() const { return Coalition::grand(agents.size()); }

  void add_grand_outcome(int s, const JointAction& ja, StateSet outcome) {
    if (ja.coalition != grand_coalition())
      throw InvalidParams("grand outcome requires a grand-coalition action");
    if (outcome.empty())
      throw InvalidParams("stored grand outcomes must be nonempty");
    grand[s][ja] = outcome;
    for (const auto& a : ja.actions) {
      auto it = std::lower_bound(action_ids.begin(), action_ids.end(), a);
      if (it == action_ids.end() || *it != a) {
        if (a.find(',') != std::string::npos)
          throw InvalidParams("action identifiers must not contain ','");
        action_ids.insert(it, a);
      }
    }
  }

  bool operator==(const CanonicalGcgf&) const = default;
};

// The availability set and outcome function of one coalition at one state,
// derived from the stored grand outcomes. Every key has a nonempty outcome;
// the available set is exactly the key set.
struct Expansion {
  std::map<JointAction, StateSet> outcomes;

  bool available(const JointAction& ja) const { return outcomes.count(ja) != 0; }
  std::vector<JointAction> available_actions() const {
    std::vector<JointAction> out;
    out.reserve(outcomes.size());
    for (const auto& [ja, o] : outcomes) out.push_back(ja);
    return out;
  }
};

inline Expansion expand(const CanonicalGcgf& g, Coalition c, int s) {
  Expansion e;
  for (const auto& [grand_action, outcome] : g.grand[s]) {
    JointAction restricted = restrict_action(grand_action, c);
    e.outcomes[restricted] |= outcome;
  }
  return e;
}

// Produces the full raw frame that `g` canonically stores: every coalition's
// availability and outcome entries, GCI- and ODA-consistent by construction.
inline RawActionFrame expand_to_raw(const CanonicalGcgf& g) {
  RawActionFrame raw(g.space, g.agents,
                     g.action_ids.empty() ? std::vector<std::string>{"noop"}
                                          : g.action_ids);
  int n = g.agents.size();
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << n); ++cb) {
    Coalition c(cb);
    for (int s = 0; s < g.space.size(); ++s) {
      Expansion e = expand(g, c, s);
      for (const auto& [ja, o] : e.outcomes) {
        raw.set_available(c, s, ja);
        raw.set_outcome(c, s, ja, o);
      }
    }
  }
  return raw;
}

// pre: validate_gcgf(f) reports no violations (checked; throws NotAGcgf).
inline CanonicalGcgf derive_canonical(const RawActionFrame& f) {
  ValidationReport report = validate_gcgf(f);
  if (!report.ok()) throw NotAGcgf(std::move(report));
  CanonicalGcgf g(f.space, f.agents);
  Coalition ag = Coalition::grand(f.agents.size());
  for (int s = 0; s < f.space.size(); ++s)
    for (const auto& [ja, o] : f.out[ag.bits][s])
      if (!o.empty()) g.add_grand_outcome(s, ja, o);
  return g;
}

}  // namespace cofra
