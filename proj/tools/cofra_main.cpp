// Command-line surface for the coalition-frames library: validate frames,
// run the frame-class and representativeness checkers, synthesize game frames
// from neighborhood frames, verify round-trips, exhaust small instance
// spaces, and replay the bundled demos.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cofra/builtin.hpp"
#include "cofra/checkers.hpp"
#include "cofra/effectivity.hpp"
#include "cofra/extensive.hpp"
#include "cofra/generate.hpp"
#include "cofra/json_io.hpp"
#include "cofra/synth_alpha.hpp"

namespace {

using namespace cofra;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitInput = 2;

int worker_count() {
  const char* env = std::getenv("COALITION_FRAMES_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (!env) return static_cast<int>(hw);
  int n = std::atoi(env);
  if (n < 1) return 1;
  return std::min<int>(n, static_cast<int>(hw));
}

std::string coalition_str(Coalition c, const AgentSet& agents) {
  std::string s = jsonio::coalition_key(c, agents);
  return s.empty() ? "{}" : s;
}

std::string sets_str(const std::vector<StateSet>& sets, const StateSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ';';
    out += space.render(sets[i]);
  }
  return out;
}

void print_report(const ConditionReport& r, const StateSpace& space,
                  const AgentSet& agents) {
  std::cout << "condition name=" << r.condition << " holds="
            << (r.holds ? "true" : "false") << " witnesses=" << r.witnesses.size()
            << "\n";
  for (const auto& w : r.witnesses)
    std::cout << "witness condition=" << r.condition
              << " state=" << space.name(w.state)
              << " c=" << coalition_str(w.c, agents)
              << " d=" << coalition_str(w.d, agents)
              << " sets=" << sets_str(w.sets, space) << "\n";
}

void print_class(ClassFlags f) {
  std::cout << "class serial=" << (f.serial ? "true" : "false")
            << " independent=" << (f.independent ? "true" : "false")
            << " deterministic=" << (f.deterministic ? "true" : "false")
            << " tag=" << f.str() << "\n";
}

std::string action_str(const JointAction& ja) {
  return ja.actions.empty() ? "()" : jsonio::join(ja.actions);
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  ParsedFrame frame = load_frame(path);
  RawActionFrame raw = [&]() {
    switch (frame.kind) {
      case FrameKind::Raw:
        return frame.raw.front();
      case FrameKind::Gcgf:
        return expand_to_raw(frame.gcgf.front());
      default:
        throw KindMismatch("validate expects a game frame file");
    }
  }();
  ValidationReport report = validate_gcgf(raw);
  for (const auto& v : report.gci)
    std::cout << "gci-violation coalition=" << coalition_str(v.coalition, raw.agents)
              << " state=" << raw.space.name(v.state)
              << " action=" << action_str(v.action)
              << " stated=" << raw.space.render(v.stated)
              << " induced=" << raw.space.render(v.induced) << "\n";
  for (const auto& v : report.oda) {
    std::cout << "oda-violation coalition=" << coalition_str(v.coalition, raw.agents)
              << " state=" << raw.space.name(v.state) << " missing=";
    for (std::size_t i = 0; i < v.missing.size(); ++i)
      std::cout << (i ? ";" : "") << action_str(v.missing[i]);
    std::cout << " extra=";
    for (std::size_t i = 0; i < v.extra.size(); ++i)
      std::cout << (i ? ";" : "") << action_str(v.extra[i]);
    std::cout << "\n";
  }
  std::cout << "validate ok=" << (report.ok() ? "true" : "false")
            << " gci_violations=" << report.gci.size()
            << " oda_violations=" << report.oda.size() << "\n";
  return report.ok() ? kExitOk : kExitSemantic;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& kind) {
  ParsedFrame frame = load_frame(path);
  if (kind == "gcgf") {
    if (frame.kind != FrameKind::Gcgf)
      throw KindMismatch("file does not hold a game frame");
    const CanonicalGcgf& g = frame.gcgf.front();
    print_class(check_gcgf_class(g));
    return kExitOk;
  }
  if (kind == "actual") {
    if (frame.kind != FrameKind::Actual)
      throw KindMismatch("file does not hold an actual neighborhood frame");
    const ActualNF& nf = frame.actual.front();
    auto rep = check_ac_representative(nf);
    for (const auto& r : rep) print_report(r, nf.space, nf.agents);
    print_report(check_stit_independent(nf), nf.space, nf.agents);
    print_report(ac_independence_report(nf), nf.space, nf.agents);
    print_class(check_ac_class(nf));
    return all_hold(rep) ? kExitOk : kExitSemantic;
  }
  if (kind == "alpha") {
    if (frame.kind != FrameKind::Alpha)
      throw KindMismatch("file does not hold an alpha neighborhood frame");
    const AlphaNF& nf = frame.alpha.front();
    auto rep = check_alpha_representative(nf);
    for (const auto& r : rep) print_report(r, nf.space, nf.agents);
    for (const auto& r : check_truly_playable(nf))
      print_report(r, nf.space, nf.agents);
    print_class(check_alpha_class(nf));
    return all_hold(rep) ? kExitOk : kExitSemantic;
  }
  throw InvalidParams("unknown kind: " + kind);
}

// ---------------------------------------------------------------------------
// synthesize / roundtrip
// ---------------------------------------------------------------------------

BranchMode parse_branch(const std::string& s) {
  if (s.empty()) return BranchMode::Auto;
  if (s == "d") return BranchMode::ForceDeterministic;
  if (s == "nond") return BranchMode::ForceNonDeterministic;
  throw InvalidParams("--force-branch expects d or nond");
}

CanonicalGcgf synthesize_from(const ParsedFrame& frame, const std::string& power,
                              BranchMode branch) {
  if (power == "actual") {
    if (frame.kind != FrameKind::Actual)
      throw KindMismatch("--power actual expects an actual_nbhd file");
    return synthesize_actual(frame.actual.front());
  }
  if (power == "alpha") {
    if (frame.kind != FrameKind::Alpha)
      throw KindMismatch("--power alpha expects an alpha_minimals file");
    return synthesize_alpha(frame.alpha.front(), branch);
  }
  throw InvalidParams("unknown power: " + power);
}

void print_synth_summary(const CanonicalGcgf& g) {
  std::cout << "summary states=" << g.space.size()
            << " actions=" << g.action_ids.size() << "\n";
  for (int s = 0; s < g.space.size(); ++s) {
    std::set<std::string> a_actions, b_actions;
    for (const auto& [ja, o] : g.grand[s]) {
      a_actions.insert(ja.actions[0]);
      b_actions.insert(ja.actions[1]);
    }
    std::cout << "state name=" << g.space.name(s)
              << " a_actions=" << a_actions.size()
              << " b_actions=" << b_actions.size()
              << " grand_pairs=" << g.grand[s].size() << "\n";
  }
  print_class(check_gcgf_class(g));
}

int cmd_synthesize(const std::string& path, const std::string& power,
                   const std::string& out_path, const std::string& branch) {
  ParsedFrame frame = load_frame(path);
  CanonicalGcgf g = synthesize_from(frame, power, parse_branch(branch));
  print_synth_summary(g);
  std::string text = frame_text(g);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
  }
  return kExitOk;
}

int cmd_roundtrip(const std::string& path, const std::string& power,
                  const std::string& branch) {
  ParsedFrame frame = load_frame(path);
  CanonicalGcgf g = synthesize_from(frame, power, parse_branch(branch));
  bool match = false;
  if (power == "actual")
    match = induce_actual(g) == frame.actual.front();
  else
    match = induce_alpha(g) == frame.alpha.front();
  std::cout << "roundtrip power=" << power << " match=" << (match ? "true" : "false")
            << "\n";
  return match ? kExitOk : kExitSemantic;
}

// ---------------------------------------------------------------------------
// exhaust
// ---------------------------------------------------------------------------

template <typename Item, typename Fn>
long parallel_count(const std::vector<Item>& items, Fn&& passes) {
  int workers = std::min<int>(worker_count(), std::max<std::size_t>(items.size(), 1));
  if (workers <= 1) {
    long ok = 0;
    for (const auto& item : items) ok += passes(item) ? 1 : 0;
    return ok;
  }
  std::atomic<long> ok{0};
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= items.size()) break;
        if (passes(items[i])) ok.fetch_add(1);
      }
    });
  for (auto& t : pool) t.join();
  return ok.load();
}

int cmd_exhaust(const std::string& power, int n) {
  if (power == "actual") {
    StateSpace space = embed_uniform(LocalFamilies{}, n).space;
    std::vector<LocalFamilies> rep;
    enumerate_local_actual(n, [&](const LocalFamilies& f) { rep.push_back(f); });
    long passes = parallel_count(rep, [&](const LocalFamilies& f) {
      LocalGame game = synthesize_local_actual(space, "s", f);
      if (!(induced_local_families(game) == f)) return false;
      ClassFlags in = check_ac_class(embed_uniform(f, n));
      return local_game_class(game).covers(in);
    });
    std::cout << "exhaust power=actual n=" << n
              << " candidates=" << local_actual_candidate_count(n)
              << " representative=" << rep.size() << " roundtrip_pass=" << passes
              << "\n";
    return passes == static_cast<long>(rep.size()) ? kExitOk : kExitSemantic;
  }
  if (power == "alpha") {
    std::vector<UpsetFamily> antichains = all_antichains(n);
    std::uint64_t total = 1;
    for (int i = 0; i < 4; ++i) total *= antichains.size();

    std::vector<AlphaLocalFamilies> all;
    all.reserve(total);
    for (const UpsetFamily& fe : antichains)
      for (const UpsetFamily& fa : antichains)
        for (const UpsetFamily& fb : antichains)
          for (const UpsetFamily& fg : antichains)
            all.push_back({fe, fa, fb, fg});

    std::vector<AlphaLocalFamilies> rep;
    for (const auto& f : all)
      if (local_alpha_representative(f)) rep.push_back(f);

    long passes = parallel_count(rep, [&](const AlphaLocalFamilies& f) {
      AlphaNF nf = embed_uniform(f, n);
      CanonicalGcgf g = synthesize_alpha(nf);
      if (!(induce_alpha(g) == nf)) return false;
      return check_gcgf_class(g).covers(check_alpha_class(nf));
    });
    // Equivalence of true playability with representative + SID, over every
    // candidate.
    long tp_mismatch = parallel_count(all, [&](const AlphaLocalFamilies& f) {
      AlphaNF nf = embed_uniform(f, n);
      bool tp = all_hold(check_truly_playable(nf));
      bool rep_sid = all_hold(check_alpha_representative(nf)) &&
                     check_alpha_class(nf) == ClassFlags{true, true, true};
      return tp != rep_sid;
    });
    std::cout << "exhaust power=alpha n=" << n << " candidates=" << total
              << " representative=" << rep.size() << " roundtrip_pass=" << passes
              << " tp_mismatches=" << tp_mismatch << "\n";
    return (passes == static_cast<long>(rep.size()) && tp_mismatch == 0)
               ? kExitOk
               : kExitSemantic;
  }
  throw InvalidParams("unknown power: " + power);
}

// ---------------------------------------------------------------------------
// demo
// ---------------------------------------------------------------------------

struct DemoCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool match() const { return expected == computed; }
};

std::string family_str(const PowerFamily& f, const StateSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.sets().size(); ++i) {
    if (i) out += ',';
    out += space.render(f.sets()[i]);
  }
  return out + "}";
}

std::string antichain_str(const UpsetFamily& u, const StateSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < u.minimals().size(); ++i) {
    if (i) out += ',';
    out += space.render(u.minimals()[i]);
  }
  return out + "}";
}

int run_demo_checks(const std::string& name, const std::vector<DemoCheck>& checks) {
  std::cout << "demo name=" << name << "\n";
  bool all = true;
  for (const auto& c : checks) {
    std::cout << "value name=" << c.name << " expected=" << c.expected
              << " computed=" << c.computed
              << " match=" << (c.match() ? "true" : "false") << "\n";
    all = all && c.match();
  }
  std::cout << "result match=" << (all ? "true" : "false") << "\n";
  return all ? kExitOk : kExitSemantic;
}

int demo_door(const std::string& name) {
  CanonicalGcgf g = name == "heavy-door" ? heavy_door_frame() : jammed_door_frame();
  std::cout << frame_text(g);
  const StateSpace& sp = g.space;
  bool heavy = name == "heavy-door";
  std::string expected_actual = heavy ? "{{w1},{w1,w2}}" : "{{w1}}";
  std::vector<DemoCheck> checks;
  for (int agent = 0; agent < 2; ++agent) {
    PowerFamily powers = actual_effectivity(g, Coalition::single(agent), 0);
    UpsetFamily minimals = alpha_effectivity(g, Coalition::single(agent), 0);
    std::string who(1, static_cast<char>('a' + agent));
    checks.push_back({"actual_powers_" + who + "@w1", expected_actual,
                      family_str(powers, sp)});
    checks.push_back(
        {"alpha_minimals_" + who + "@w1", "{{w1}}", antichain_str(minimals, sp)});
  }
  return run_demo_checks(name, checks);
}

int demo_stit_counterexample() {
  ActualNF nf = stit_counterexample_frame();
  std::cout << frame_text(nf);
  auto rep = check_ac_representative(nf);
  auto stit = check_stit_independent(nf);
  ClassFlags flags = check_ac_class(nf);
  std::vector<DemoCheck> checks = {
      {"ac_representative", "true", all_hold(rep) ? "true" : "false"},
      {"stit_independent", "true", stit.holds ? "true" : "false"},
      {"ac_independent", "false", flags.independent ? "true" : "false"},
  };
  return run_demo_checks("appendix-a", checks);
}

int demo_worked_synthesis() {
  ActualNF nf = worked_synthesis_frame();
  std::cout << frame_text(nf);
  CanonicalGcgf g = synthesize_actual(nf);
  std::set<std::string> a_actions, b_actions;
  for (const auto& [ja, o] : g.grand[0]) {
    a_actions.insert(ja.actions[0]);
    b_actions.insert(ja.actions[1]);
  }
  ActualNF induced = induce_actual(g);
  std::vector<DemoCheck> checks = {
      {"a_actions@s", "6", std::to_string(a_actions.size())},
      {"b_actions@s", "6", std::to_string(b_actions.size())},
      {"grand_pairs@s", "36", std::to_string(g.grand[0].size())},
      {"induced_grand_nbhd@s", "{{u},{v}}",
       family_str(induced.at(Coalition::grand(2), 0), g.space)},
      {"reinduction", "true", induced == nf ? "true" : "false"},
  };
  return run_demo_checks("appendix-c", checks);
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const std::string& kind, int states, int actions, int max_family,
            const std::string& cls, std::uint64_t seed, const std::string& out_path) {
  ClassFlags flags = ClassFlags::parse(cls);
  std::string text;
  if (kind == "gcgf") {
    text = frame_text(gen_random_gcgf(states, actions, flags, seed));
  } else if (kind == "actual") {
    text = frame_text(gen_random_actual_nf(states, max_family, flags, seed));
  } else if (kind == "alpha") {
    // Alpha frames are generated by inducing from a random game frame, which
    // guarantees representativeness.
    text = frame_text(induce_alpha(gen_random_gcgf(states, actions, flags, seed)));
  } else {
    throw InvalidParams("unknown kind: " + kind);
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite game frames, coalition effectivity, and neighborhood-frame synthesis"};
  app.require_subcommand(1);

  std::string path, kind, power, out_path, branch, demo_name, cls = "eps";
  int n = 3, states = 2, actions = 2, max_family = 3;
  std::uint64_t seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "check the GCI and ODA conditions of a frame file");
  validate->add_option("path", path)->required();

  CLI::App* check = app.add_subcommand("check", "run the class and representativeness checkers");
  check->add_option("path", path)->required();
  check->add_option("--kind", kind, "gcgf|actual|alpha")->required();

  CLI::App* synthesize = app.add_subcommand("synthesize", "build a game frame from a neighborhood frame");
  synthesize->add_option("path", path)->required();
  synthesize->add_option("--power", power, "actual|alpha")->required();
  synthesize->add_option("--out", out_path);
  synthesize->add_option("--force-branch", branch, "d|nond");

  CLI::App* roundtrip = app.add_subcommand("roundtrip", "synthesize, re-induce, and compare");
  roundtrip->add_option("path", path)->required();
  roundtrip->add_option("--power", power, "actual|alpha")->required();
  roundtrip->add_option("--force-branch", branch, "d|nond");

  CLI::App* exhaust = app.add_subcommand("exhaust", "round-trip every local instance up to n successors");
  exhaust->add_option("--power", power, "actual|alpha")->required();
  exhaust->add_option("--n", n, "successor count, 1..3")->check(CLI::Range(1, 3));

  CLI::App* demo = app.add_subcommand("demo", "replay a bundled example");
  demo->add_option("name", demo_name, "heavy-door|jammed-door|appendix-a|appendix-c")
      ->required();

  CLI::App* gen = app.add_subcommand("gen", "generate a random frame");
  gen->add_option("--kind", kind, "gcgf|actual|alpha")->required();
  gen->add_option("--states", states);
  gen->add_option("--actions", actions);
  gen->add_option("--max-family", max_family);
  gen->add_option("--class", cls, "eps|S|I|D|SI|SD|ID|SID");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (check->parsed()) return cmd_check(path, kind);
    if (synthesize->parsed()) return cmd_synthesize(path, power, out_path, branch);
    if (roundtrip->parsed()) return cmd_roundtrip(path, power, branch);
    if (exhaust->parsed()) return cmd_exhaust(power, n);
    if (demo->parsed()) {
      if (demo_name == "heavy-door" || demo_name == "jammed-door")
        return demo_door(demo_name);
      if (demo_name == "appendix-a") return demo_stit_counterexample();
      if (demo_name == "appendix-c") return demo_worked_synthesis();
      throw InvalidParams("unknown demo: " + demo_name);
    }
    if (gen->parsed())
      return cmd_gen(kind, states, actions, max_family, cls, seed, out_path);
  } catch (const NotRepresentative& e) {
    std::cout << "error kind=not-representative message=\"" << e.what() << "\"\n";
    for (const auto& r : e.reports)
      std::cout << "condition name=" << r.condition
                << " holds=" << (r.holds ? "true" : "false")
                << " witnesses=" << r.witnesses.size() << "\n";
    return kExitSemantic;
  } catch (const ParseError& e) {
    std::cerr << "error kind=parse message=\"" << e.what() << "\"\n";
    return kExitInput;
  } catch (const KindMismatch& e) {
    std::cerr << "error kind=kind-mismatch message=\"" << e.what() << "\"\n";
    return kExitInput;
  } catch (const InvalidParams& e) {
    std::cerr << "error kind=invalid-params message=\"" << e.what() << "\"\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error kind=other message=\"" << e.what() << "\"\n";
    return kExitInput;
  }
  return kExitInput;
}
