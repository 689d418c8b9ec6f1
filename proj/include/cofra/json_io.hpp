#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cofra/effectivity.hpp"
#include "cofra/model.hpp"
#include "json.hpp"

namespace cofra {

enum class FrameKind { Gcgf, Actual, Alpha, Raw };

inline std::string kind_name(FrameKind k) {
  switch (k) {
    case FrameKind::Gcgf: return "gcgf";
    case FrameKind::Actual: return "actual";
    case FrameKind::Alpha: return "alpha";
    case FrameKind::Raw: return "raw";
  }
  return "?";
}

// Any of the frame kinds the JSON format can carry. Exactly one of the
// optional members is set, per `kind`.
struct ParsedFrame {
  FrameKind kind;
  std::vector<CanonicalGcgf> gcgf;
  std::vector<ActualNF> actual;
  std::vector<AlphaNF> alpha;
  std::vector<RawActionFrame> raw;
};

namespace jsonio {

using nlohmann::json;

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline Coalition parse_coalition(const std::string& key, const AgentSet& agents) {
  Coalition c;
  for (const std::string& name : split(key)) {
    int i = agents.index(name);
    if (c.contains(i)) throw ParseError("repeated agent in coalition: " + key);
    c = c.united(Coalition::single(i));
  }
  return c;
}

inline std::string coalition_key(Coalition c, const AgentSet& agents) {
  std::vector<std::string> names;
  for (int i = 0; i < agents.size(); ++i)
    if (c.contains(i)) names.push_back(agents.name(i));
  return join(names);
}

inline StateSet parse_state_set(const json& arr, const StateSpace& space) {
  if (!arr.is_array()) throw ParseError("state set must be an array");
  StateSet s;
  for (const auto& item : arr)
    s |= StateSet::single(space.index(item.get<std::string>()));
  return s;
}

inline json state_set_json(StateSet s, const StateSpace& space) {
  json arr = json::array();
  for (int i = 0; i < space.size(); ++i)
    if (s.contains(i)) arr.push_back(space.name(i));
  return arr;
}

inline JointAction parse_grand_action(const std::string& key,
                                      const AgentSet& agents) {
  std::vector<std::string> actions = split(key);
  if (static_cast<int>(actions.size()) != agents.size())
    throw ParseError("action tuple arity mismatch: " + key);
  return JointAction(Coalition::grand(agents.size()), std::move(actions));
}

}  // namespace jsonio

inline ParsedFrame parse_frame_json(const nlohmann::json& j) {
  using jsonio::json;
  try {
    if (!j.is_object()) throw ParseError("top level must be an object");
    if (!j.contains("agents") || !j.contains("states"))
      throw ParseError("missing agents or states");
    AgentSet agents(j.at("agents").get<std::vector<std::string>>());
    StateSpace space(j.at("states").get<std::vector<std::string>>());

    int variants = j.contains("grand_out") + j.contains("actual_nbhd") +
                   j.contains("alpha_minimals") + j.contains("out");
    if (variants != 1)
      throw ParseError(
          "expected exactly one of grand_out, actual_nbhd, alpha_minimals, out");

    ParsedFrame result{FrameKind::Gcgf, {}, {}, {}, {}};
    if (j.contains("grand_out")) {
      CanonicalGcgf g(space, agents);
      for (const auto& [state_name, entries] : j.at("grand_out").items()) {
        int s = space.index(state_name);
        for (const auto& [tuple, outcome] : entries.items()) {
          StateSet o = jsonio::parse_state_set(outcome, space);
          if (o.empty())
            throw ParseError("grand_out outcomes must be nonempty at " +
                             state_name + "/" + tuple);
          g.add_grand_outcome(s, jsonio::parse_grand_action(tuple, agents), o);
        }
      }
      result.kind = FrameKind::Gcgf;
      result.gcgf.push_back(std::move(g));
    } else if (j.contains("actual_nbhd")) {
      ActualNF nf(space, agents);
      for (const auto& [ckey, by_state] : j.at("actual_nbhd").items()) {
        Coalition c = jsonio::parse_coalition(ckey, agents);
        for (const auto& [state_name, family] : by_state.items()) {
          std::vector<StateSet> sets;
          for (const auto& arr : family)
            sets.push_back(jsonio::parse_state_set(arr, space));
          nf.set(c, space.index(state_name), PowerFamily(std::move(sets)));
        }
      }
      result.kind = FrameKind::Actual;
      result.actual.push_back(std::move(nf));
    } else if (j.contains("alpha_minimals")) {
      AlphaNF nf(space, agents);
      for (const auto& [ckey, by_state] : j.at("alpha_minimals").items()) {
        Coalition c = jsonio::parse_coalition(ckey, agents);
        for (const auto& [state_name, family] : by_state.items()) {
          std::vector<StateSet> sets;
          for (const auto& arr : family)
            sets.push_back(jsonio::parse_state_set(arr, space));
          // Non-antichain listings are accepted and reduced to minimals.
          nf.set(c, space.index(state_name), UpsetFamily::from_family(sets));
        }
      }
      result.kind = FrameKind::Alpha;
      result.alpha.push_back(std::move(nf));
    } else {
      // Raw variant, consumed by `validate` only: explicit availability and
      // outcome entries per coalition.
      std::set<std::string> ids;
      for (const auto& [ckey, by_state] : j.at("out").items())
        for (const auto& [state_name, entries] : by_state.items())
          for (const auto& [tuple, outcome] : entries.items())
            for (const std::string& a : jsonio::split(tuple)) ids.insert(a);
      if (j.contains("av"))
        for (const auto& [ckey, by_state] : j.at("av").items())
          for (const auto& [state_name, tuples] : by_state.items())
            for (const auto& t : tuples)
              for (const std::string& a : jsonio::split(t.get<std::string>()))
                ids.insert(a);
      if (ids.empty()) ids.insert("noop");
      RawActionFrame raw(space, agents,
                         std::vector<std::string>(ids.begin(), ids.end()));
      auto parse_tuple = [&](const std::string& tuple, Coalition c) {
        std::vector<std::string> actions = jsonio::split(tuple);
        if (static_cast<int>(actions.size()) != c.size())
          throw ParseError("action tuple arity mismatch: " + tuple);
        return JointAction(c, std::move(actions));
      };
      for (const auto& [ckey, by_state] : j.at("out").items()) {
        Coalition c = jsonio::parse_coalition(ckey, agents);
        for (const auto& [state_name, entries] : by_state.items()) {
          int s = space.index(state_name);
          for (const auto& [tuple, outcome] : entries.items())
            raw.set_outcome(c, s, parse_tuple(tuple, c),
                            jsonio::parse_state_set(outcome, space));
        }
      }
      if (j.contains("av"))
        for (const auto& [ckey, by_state] : j.at("av").items()) {
          Coalition c = jsonio::parse_coalition(ckey, agents);
          for (const auto& [state_name, tuples] : by_state.items()) {
            int s = space.index(state_name);
            for (const auto& t : tuples)
              raw.set_available(c, s, parse_tuple(t.get<std::string>(), c));
          }
        }
      result.kind = FrameKind::Raw;
      result.raw.push_back(std::move(raw));
    }
    return result;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed frame JSON: ") + e.what());
  } catch (const InvalidParams& e) {
    throw ParseError(std::string("invalid frame: ") + e.what());
  }
}

inline ParsedFrame parse_frame_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("not valid JSON");
  return parse_frame_json(j);
}

inline ParsedFrame load_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_frame_text(buf.str());
}

inline nlohmann::json to_json(const CanonicalGcgf& g) {
  using jsonio::json;
  json out;
  out["agents"] = g.agents.names();
  out["states"] = g.space.names();
  json grand = json::object();
  for (int s = 0; s < g.space.size(); ++s) {
    if (g.grand[s].empty()) continue;
    json entries = json::object();
    for (const auto& [ja, o] : g.grand[s])
      entries[jsonio::join(ja.actions)] = jsonio::state_set_json(o, g.space);
    grand[g.space.name(s)] = std::move(entries);
  }
  out["grand_out"] = std::move(grand);
  return out;
}

inline nlohmann::json to_json(const ActualNF& nf) {
  using jsonio::json;
  json out;
  out["agents"] = nf.agents.names();
  out["states"] = nf.space.names();
  json nbhd = json::object();
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << nf.agents.size()); ++cb) {
    json by_state = json::object();
    for (int s = 0; s < nf.space.size(); ++s) {
      json family = json::array();
      for (StateSet x : nf.at(Coalition(cb), s).sets())
        family.push_back(jsonio::state_set_json(x, nf.space));
      by_state[nf.space.name(s)] = std::move(family);
    }
    nbhd[jsonio::coalition_key(Coalition(cb), nf.agents)] = std::move(by_state);
  }
  out["actual_nbhd"] = std::move(nbhd);
  return out;
}

inline nlohmann::json to_json(const AlphaNF& nf) {
  using jsonio::json;
  json out;
  out["agents"] = nf.agents.names();
  out["states"] = nf.space.names();
  json nbhd = json::object();
  for (std::uint32_t cb = 0; cb < (std::uint32_t{1} << nf.agents.size()); ++cb) {
    json by_state = json::object();
    for (int s = 0; s < nf.space.size(); ++s) {
      json family = json::array();
      for (StateSet x : nf.at(Coalition(cb), s).minimals())
        family.push_back(jsonio::state_set_json(x, nf.space));
      by_state[nf.space.name(s)] = std::move(family);
    }
    nbhd[jsonio::coalition_key(Coalition(cb), nf.agents)] = std::move(by_state);
  }
  out["alpha_minimals"] = std::move(nbhd);
  return out;
}

template <typename Frame>
std::string frame_text(const Frame& f) {
  return to_json(f).dump(2) + "\n";
}

}  // namespace cofra
