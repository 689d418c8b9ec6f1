// Acceptance suite: one check per release criterion, each printed as a single
// PASS/FAIL line with its runtime. The process exits nonzero if any check
// fails. Criteria with stated time budgets enforce them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cofra/builtin.hpp"
#include "cofra/checkers.hpp"
#include "cofra/effectivity.hpp"
#include "cofra/extensive.hpp"
#include "cofra/generate.hpp"
#include "cofra/json_io.hpp"
#include "cofra/synth_alpha.hpp"

using namespace cofra;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& info) {
    if (!detail.empty()) detail += "; ";
    detail += info;
  }
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(COFRA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string render_family(const PowerFamily& f, const StateSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.sets().size(); ++i) {
    if (i) out += ',';
    out += space.render(f.sets()[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Criterion 1: door example fidelity
// ---------------------------------------------------------------------------

Outcome criterion_examples() {
  Outcome o;
  if (run_cli("demo heavy-door") != 0) o.fail("cli demo heavy-door failed");
  if (run_cli("demo jammed-door") != 0) o.fail("cli demo jammed-door failed");

  CanonicalGcgf heavy = heavy_door_frame();
  CanonicalGcgf jammed = jammed_door_frame();
  for (int agent = 0; agent < 2; ++agent) {
    if (render_family(actual_effectivity(heavy, Coalition::single(agent), 0),
                      heavy.space) != "{{w1},{w1,w2}}")
      o.fail("heavy-door actual powers mismatch");
    if (render_family(actual_effectivity(jammed, Coalition::single(agent), 0),
                      jammed.space) != "{{w1}}")
      o.fail("jammed-door actual powers mismatch");
    for (const CanonicalGcgf* g : {&heavy, &jammed}) {
      auto minimals = alpha_effectivity(*g, Coalition::single(agent), 0).minimals();
      if (!(minimals == std::vector<StateSet>{StateSet(0b01)}))
        o.fail("alpha minimals mismatch");
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 2: worked synthesis example
// ---------------------------------------------------------------------------

Outcome criterion_worked_synthesis() {
  Outcome o;
  ActualNF input = worked_synthesis_frame();
  CanonicalGcgf g = synthesize_actual(input);
  std::set<std::string> a_actions, b_actions;
  for (const auto& [ja, outcome] : g.grand[0]) {
    a_actions.insert(ja.actions[0]);
    b_actions.insert(ja.actions[1]);
  }
  if (a_actions.size() != 6) o.fail("expected 6 a-actions");
  if (b_actions.size() != 6) o.fail("expected 6 b-actions");
  if (g.grand[0].size() != 36) o.fail("expected 36 grand pairs");
  if (!(induce_actual(g) == input)) o.fail("re-induction mismatch");
  o.note("6+6 actions, 36 pairs, re-induction exact");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 3: the STIT counterexample frame
// ---------------------------------------------------------------------------

Outcome criterion_counterexample() {
  Outcome o;
  ActualNF nf = stit_counterexample_frame();
  if (!all_hold(check_ac_representative(nf)))
    o.fail("representativeness should hold");
  if (!check_stit_independent(nf).holds) o.fail("STIT-independence should hold");
  if (check_ac_class(nf).independent) o.fail("AC-independence should fail");

  ConditionReport indep = ac_independence_report(nf);
  StateSet x12 = nf.space.set_of({"t1", "t2"});
  StateSet x23 = nf.space.set_of({"t2", "t3"});
  bool witness = false;
  for (const auto& w : indep.witnesses)
    if (w.state == 0 && w.sets.size() == 2 && w.sets[0] == x12 && w.sets[1] == x23)
      witness = true;
  if (!witness) o.fail("missing witness (X={t1,t2}, Y={t2,t3})");
  return o;
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5: exhaustive synthesis round-trips (shared machinery)
// ---------------------------------------------------------------------------

// Literal four-condition check over raw mask vectors, independent of the
// library's family types. Index order: empty, a, b, grand.
bool oracle_local_ac(const std::vector<std::uint32_t> fam[4]) {
  if (fam[0].size() > 1) return false;
  for (int c = 0; c < 4; ++c)
    for (std::uint32_t x : fam[c])
      if (x == 0) return false;
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      if ((c & ~d) != 0) continue;
      for (std::uint32_t x : fam[d]) {
        bool included = false;
        for (std::uint32_t y : fam[c])
          if ((x & ~y) == 0) { included = true; break; }
        if (!included) return false;
      }
      for (std::uint32_t x : fam[c]) {
        std::uint32_t covered = 0;
        for (std::uint32_t z : fam[d])
          if ((z & ~x) == 0) covered |= z;
        if (covered != x) return false;
      }
    }
  return true;
}

// Counts oracle-passing quadruples over the full candidate product at n=3.
long oracle_candidate_count() {
  long pass = 0;
  std::vector<std::uint32_t> fams[4];
  for (std::uint32_t gm = 0; gm < 128; ++gm)
    for (std::uint32_t am = 0; am < 128; ++am)
      for (std::uint32_t bm = 0; bm < 128; ++bm)
        for (int has_empty = 0; has_empty < 2; ++has_empty) {
          for (auto& f : fams) f.clear();
          std::uint32_t grand_union = 0;
          for (std::uint32_t s = 1; s <= 7; ++s) {
            if ((gm >> (s - 1)) & 1) {
              fams[3].push_back(s);
              grand_union |= s;
            }
            if ((am >> (s - 1)) & 1) fams[1].push_back(s);
            if ((bm >> (s - 1)) & 1) fams[2].push_back(s);
          }
          if (has_empty) fams[0].push_back(grand_union);
          if (oracle_local_ac(fams)) ++pass;
        }
  return pass;
}

std::vector<std::uint32_t> family_masks(const PowerFamily& f) {
  std::vector<std::uint32_t> out;
  for (StateSet s : f.sets()) out.push_back(s.bits);
  return out;
}

std::string serialize_local(const LocalGame& g) {
  std::ostringstream out;
  for (const auto& a : g.a_actions) out << a << ';';
  for (const auto& b : g.b_actions) out << b << ';';
  for (const auto& [pair, outcome] : g.grand)
    out << pair.first << '|' << pair.second << "->" << outcome.bits << ';';
  return out.str();
}

struct ExhaustStats {
  long total = 0;
  long passes = 0;
  std::uint64_t hash = 1469598103934665603ULL;
  std::map<std::string, long> combos;
};

ExhaustStats run_actual_exhaustive() {
  ExhaustStats stats;
  for (int n = 1; n <= 3; ++n) {
    StateSpace space = embed_uniform(LocalFamilies{}, n).space;
    enumerate_local_actual(n, [&](const LocalFamilies& f) {
      ++stats.total;
      std::vector<std::uint32_t> raw[4] = {
          family_masks(f.empty_c), family_masks(f.agent_a),
          family_masks(f.agent_b), family_masks(f.grand)};
      LocalGame game = synthesize_local_actual(space, "s", f);
      ClassFlags in = check_ac_class(embed_uniform(f, n));
      bool ok = oracle_local_ac(raw) && induced_local_families(game) == f &&
                local_game_class(game).covers(in);
      stats.passes += ok ? 1 : 0;
      stats.combos[in.str()]++;
      stats.hash = fnv1a(serialize_local(game), stats.hash);
    });
  }
  return stats;
}

// Embeds a quadruple at state 0 of the 3-successor space with all-empty
// neighborhoods elsewhere, so seriality fails while the other flags are the
// quadruple's own.
ActualNF embed_with_empty_states(const LocalFamilies& f) {
  ActualNF nf = embed_uniform(LocalFamilies{}, 3);
  nf.set(Coalition::empty(), 0, f.empty_c);
  nf.set(Coalition::single(0), 0, f.agent_a);
  nf.set(Coalition::single(1), 0, f.agent_b);
  nf.set(Coalition::grand(2), 0, f.grand);
  return nf;
}

AlphaNF embed_with_empty_states(const AlphaLocalFamilies& f) {
  AlphaNF nf = embed_uniform(AlphaLocalFamilies{}, 3);
  nf.set(Coalition::empty(), 0, f.empty_c);
  nf.set(Coalition::single(0), 0, f.agent_a);
  nf.set(Coalition::single(1), 0, f.agent_b);
  nf.set(Coalition::grand(2), 0, f.grand);
  return nf;
}

ExhaustStats g_actual_stats;   // filled by criterion 4, reused by 10
ExhaustStats g_alpha_stats;    // filled by criterion 5, reused by 10

Outcome criterion_actual_roundtrips() {
  Outcome o;
  g_actual_stats = run_actual_exhaustive();
  if (g_actual_stats.total != 2 + 53 + 121899)
    o.fail("expected 121954 representative quadruples across n=1..3");
  if (g_actual_stats.passes != g_actual_stats.total)
    o.fail("round-trip or flag preservation failed");
  // The enumerated set equals the condition set: every yield passes the
  // independent oracle, and the oracle accepts the same number of candidates
  // over the full n=3 product.
  if (oracle_candidate_count() != 121899)
    o.fail("independent oracle disagrees with the enumeration");

  // All eight flag combinations, realized as one-live-state frames (for the
  // non-serial half) and uniform frames (for the serial half).
  LocalFamilies picked[2][2];
  bool found[2][2] = {};
  enumerate_local_actual(3, [&](const LocalFamilies& f) {
    ClassFlags c = check_ac_class(embed_uniform(f, 3));
    if (!c.serial) return;
    int i = c.independent ? 1 : 0, d = c.deterministic ? 1 : 0;
    if (!found[i][d]) {
      found[i][d] = true;
      picked[i][d] = f;
    }
  });
  std::set<std::string> seen;
  for (int i = 0; i < 2; ++i)
    for (int d = 0; d < 2; ++d) {
      if (!found[i][d]) {
        o.fail("no quadruple with flags (serial," + std::to_string(i) + "," +
               std::to_string(d) + ")");
        continue;
      }
      for (bool serial : {true, false}) {
        ActualNF nf = serial ? embed_uniform(picked[i][d], 3)
                             : embed_with_empty_states(picked[i][d]);
        ClassFlags in = check_ac_class(nf);
        if (in != ClassFlags{serial, i != 0, d != 0}) {
          o.fail("combo construction has wrong flags " + in.str());
          continue;
        }
        CanonicalGcgf g = synthesize_actual(nf);
        if (!(induce_actual(g) == nf)) o.fail("combo round-trip failed");
        if (!check_gcgf_class(g).covers(in)) o.fail("combo flags lost");
        seen.insert(in.str());
      }
    }
  if (seen.size() != 8) o.fail("not all 8 flag combinations exercised");
  o.note("121954 quadruples over n=1..3 + all 8 class combinations");
  return o;
}

Outcome criterion_alpha_roundtrips() {
  Outcome o;
  ExhaustStats& stats = g_alpha_stats;
  stats = ExhaustStats{};
  long candidates = 0;
  std::vector<UpsetFamily> antichains = all_antichains(3);
  for (const UpsetFamily& fe : antichains)
    for (const UpsetFamily& fa : antichains)
      for (const UpsetFamily& fb : antichains)
        for (const UpsetFamily& fg : antichains) {
          ++candidates;
          AlphaLocalFamilies f{fe, fa, fb, fg};
          if (!local_alpha_representative(f)) continue;
          ++stats.total;
          AlphaNF nf = embed_uniform(f, 3);
          ClassFlags in = check_alpha_class(nf);
          CanonicalGcgf g = synthesize_alpha(nf);
          bool ok = induce_alpha(g) == nf && check_gcgf_class(g).covers(in);
          stats.passes += ok ? 1 : 0;
          stats.combos[in.str()]++;
          for (int s = 0; s < 3; ++s)
            for (const auto& [ja, outcome] : g.grand[s])
              stats.hash = fnv1a(ja.actions[0] + "|" + ja.actions[1] + "->" +
                                     std::to_string(outcome.bits) + ";",
                                 stats.hash);
        }
  if (candidates != 160000) o.fail("expected 160000 candidates");
  if (stats.total != 1410) o.fail("expected 1410 representative quadruples");
  if (stats.passes != stats.total) o.fail("alpha round-trip failed");

  // All eight combinations, as for the actual case.
  AlphaLocalFamilies picked[2][2];
  bool found[2][2] = {};
  enumerate_local_alpha(3, [&](const AlphaLocalFamilies& f) {
    ClassFlags c = check_alpha_class(embed_uniform(f, 3));
    if (!c.serial) return;
    int i = c.independent ? 1 : 0, d = c.deterministic ? 1 : 0;
    if (!found[i][d]) {
      found[i][d] = true;
      picked[i][d] = f;
    }
  });
  std::set<std::string> seen;
  for (int i = 0; i < 2; ++i)
    for (int d = 0; d < 2; ++d) {
      if (!found[i][d]) {
        o.fail("no alpha quadruple with flags (serial," + std::to_string(i) +
               "," + std::to_string(d) + ")");
        continue;
      }
      for (bool serial : {true, false}) {
        AlphaNF nf = serial ? embed_uniform(picked[i][d], 3)
                            : embed_with_empty_states(picked[i][d]);
        ClassFlags in = check_alpha_class(nf);
        if (in != ClassFlags{serial, i != 0, d != 0}) {
          o.fail("alpha combo construction has wrong flags " + in.str());
          continue;
        }
        CanonicalGcgf g = synthesize_alpha(nf);
        if (!(induce_alpha(g) == nf)) o.fail("alpha combo round-trip failed");
        if (!check_gcgf_class(g).covers(in)) o.fail("alpha combo flags lost");
        seen.insert(in.str());
      }
    }
  if (seen.size() != 8) o.fail("not all 8 flag combinations exercised");
  o.note("1410 of 160000 quadruples + all 8 class combinations");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 6: induced frames are representative
// ---------------------------------------------------------------------------

Outcome criterion_induced_representative() {
  Outcome o;
  long checked = 0;
  for (ClassFlags flags : ClassFlags::all_eight())
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      int states = 1 + static_cast<int>(seed % 4);
      int actions = 1 + static_cast<int>(seed % 3);
      CanonicalGcgf g = gen_random_gcgf(states, actions, flags, seed);
      ClassFlags gflags = check_gcgf_class(g);
      if (!gflags.covers(flags)) {
        o.fail("generator missed requested flags at seed " + std::to_string(seed));
        continue;
      }
      ActualNF anf = induce_actual(g);
      if (!all_hold(check_ac_representative(anf)) ||
          !check_ac_class(anf).covers(gflags)) {
        o.fail("induced actual frame not representative at " + flags.str() + "/" +
               std::to_string(seed));
      }
      AlphaNF alnf = induce_alpha(g);
      if (!all_hold(check_alpha_representative(alnf)) ||
          !check_alpha_class(alnf).covers(gflags)) {
        o.fail("induced alpha frame not representative at " + flags.str() + "/" +
               std::to_string(seed));
      }
      ++checked;
    }
  o.note(std::to_string(checked) + " random frames across 8 flag combinations");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 7: true playability equivalence
// ---------------------------------------------------------------------------

Outcome criterion_truly_playable() {
  Outcome o;
  long scanned = 0, mismatches = 0;
  std::vector<UpsetFamily> antichains = all_antichains(3);
  for (const UpsetFamily& fe : antichains)
    for (const UpsetFamily& fa : antichains)
      for (const UpsetFamily& fb : antichains)
        for (const UpsetFamily& fg : antichains) {
          ++scanned;
          AlphaNF nf = embed_uniform(AlphaLocalFamilies{fe, fa, fb, fg}, 3);
          bool tp = all_hold(check_truly_playable(nf));
          bool rep_sid = all_hold(check_alpha_representative(nf)) &&
                         check_alpha_class(nf) == ClassFlags{true, true, true};
          if (tp != rep_sid) ++mismatches;
        }
  if (scanned != 160000) o.fail("expected 160000 candidates");
  if (mismatches != 0)
    o.fail(std::to_string(mismatches) + " equivalence mismatches");
  o.note("tp <=> representative+SID over 160000 candidates");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 8: two-step power invariance
// ---------------------------------------------------------------------------

Outcome criterion_power_invariance() {
  Outcome o;
  long tables = 0, failures = 0;
  for (int na = 1; na <= 3; ++na)
    for (int nb = 1; nb <= 3; ++nb) {
      std::vector<std::string> a_actions, b_actions;
      for (int i = 0; i < na; ++i) a_actions.push_back("x" + std::to_string(i));
      for (int j = 0; j < nb; ++j) b_actions.push_back("y" + std::to_string(j));
      int cells = na * nb;
      long combos = 1;
      for (int i = 0; i < cells; ++i) combos *= 4;
      for (long code = 0; code < combos; ++code) {
        std::vector<std::vector<int>> t(na, std::vector<int>(nb));
        long rest = code;
        for (int i = 0; i < na; ++i)
          for (int j = 0; j < nb; ++j) {
            t[i][j] = static_cast<int>(rest % 4);
            rest /= 4;
          }
        TwoStepGame game{a_actions, b_actions, t};
        LocalGame c = fold(game);
        bool ok = unfold(c).terminal == game.terminal;
        for (Agent agent : {Agent::A, Agent::B}) {
          const auto& outs = agent == Agent::A ? c.out_a : c.out_b;
          std::vector<StateSet> powers;
          for (const auto& [action, outcome] : outs) powers.push_back(outcome);
          ok = ok && basic_powers(unfold(c), agent) == PowerFamily(powers);
        }
        ok = ok && all_hold(check_bbe_conditions(basic_powers(game, Agent::A),
                                                 basic_powers(game, Agent::B)));
        ++tables;
        failures += ok ? 0 : 1;
      }
    }
  if (failures != 0) o.fail(std::to_string(failures) + " tables failed");
  o.note(std::to_string(tables) + " terminal tables");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 9: derived facts
// ---------------------------------------------------------------------------

Outcome criterion_derived_facts() {
  Outcome o;
  long frames = 0, failures = 0;

  for (int n = 1; n <= 3; ++n) {
    enumerate_local_actual(n, [&](const LocalFamilies& f) {
      ++frames;
      if (!all_hold(check_derived_facts(embed_uniform(f, n)))) ++failures;
    });
    enumerate_local_alpha(n, [&](const AlphaLocalFamilies& f) {
      ++frames;
      if (!all_hold(check_derived_facts(embed_uniform(f, n)))) ++failures;
    });
  }
  for (ClassFlags flags : ClassFlags::all_eight())
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      CanonicalGcgf g = gen_random_gcgf(1 + static_cast<int>(seed % 4),
                                        1 + static_cast<int>(seed % 3), flags, seed);
      frames += 2;
      if (!all_hold(check_derived_facts(induce_actual(g)))) ++failures;
      if (!all_hold(check_derived_facts(induce_alpha(g)))) ++failures;
    }
  if (failures != 0) o.fail(std::to_string(failures) + " fact failures");

  // The strict-inclusion witness: a representative frame whose coalition core
  // union sits strictly below the successor set.
  AlphaNF strict = strict_core_union_frame();
  if (!all_hold(check_derived_facts(strict))) o.fail("strict frame fails facts");
  StateSet core_a = strict.at(Coalition::single(0), 0).union_of_minimals();
  StateSet core_e = strict.at(Coalition::empty(), 0).union_of_minimals();
  if (!core_a.proper_subset_of(core_e))
    o.fail("strict inclusion witness missing");
  o.note(std::to_string(frames) + " frames + strict-inclusion witness");
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 10: build determinism
// ---------------------------------------------------------------------------

Outcome criterion_determinism() {
  Outcome o;
  std::string first = frame_text(synthesize_actual(worked_synthesis_frame()));
  std::string second = frame_text(synthesize_actual(worked_synthesis_frame()));
  if (first != second) o.fail("worked synthesis not byte-identical");

  std::string path1 = "/tmp/cofra_accept_a.json", path2 = "/tmp/cofra_accept_b.json";
  {
    std::ofstream(path1) << first;
    std::ofstream(path2) << second;
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  if (slurp(path1) != slurp(path2)) o.fail("written files differ");

  ExhaustStats actual_again = run_actual_exhaustive();
  if (actual_again.hash != g_actual_stats.hash ||
      actual_again.total != g_actual_stats.total)
    o.fail("actual exhaustive pass not reproducible");

  ExhaustStats alpha_again;
  enumerate_local_alpha(3, [&](const AlphaLocalFamilies& f) {
    ++alpha_again.total;
    CanonicalGcgf g = synthesize_alpha(embed_uniform(f, 3));
    for (int s = 0; s < 3; ++s)
      for (const auto& [ja, outcome] : g.grand[s])
        alpha_again.hash = fnv1a(ja.actions[0] + "|" + ja.actions[1] + "->" +
                                     std::to_string(outcome.bits) + ";",
                                 alpha_again.hash);
  });
  if (alpha_again.hash != g_alpha_stats.hash)
    o.fail("alpha exhaustive pass not reproducible");
  o.note("repeated synthesized outputs byte-identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // 0 = no stated budget
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "door example fidelity", 1.0, criterion_examples},
      {2, "worked synthesis example (6/6/36 + re-induction)", 1.0,
       criterion_worked_synthesis},
      {3, "counterexample frame verdicts", 1.0, criterion_counterexample},
      {4, "exhaustive actual synthesis round-trips, n<=3", 600.0, criterion_actual_roundtrips},
      {5, "exhaustive alpha synthesis round-trips, n=3", 600.0, criterion_alpha_roundtrips},
      {6, "induced random frames are representative, 8x1000", 300.0, criterion_induced_representative},
      {7, "true playability equivalence", 0.0, criterion_truly_playable},
      {8, "two-step power invariance", 120.0, criterion_power_invariance},
      {9, "derived facts suite", 0.0, criterion_derived_facts},
      {10, "build determinism", 0.0, criterion_determinism},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds)
      o.fail("over time budget of " + std::to_string(c.budget_seconds) + " s");
    char line[512];
    std::snprintf(line, sizeof line, "%s criterion %d: %s (%.2f s)%s%s",
                  o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                  o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::cout << line << std::endl;
    all_pass = all_pass && o.pass;
  }
  std::cout << (all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return all_pass ? 0 : 1;
}
