#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "tfm/construction/builder.hpp"
#include "tfm/harness/campaign.hpp"
#include "tfm/harness/graph_io.hpp"
#include "tfm/harness/lineage.hpp"
#include "tfm/harness/time_policy.hpp"
#include "tfm/oracle/oracle.hpp"

using namespace tfm;

namespace {

const Instance kP4(Graph(4, {{1, 2}, {2, 3}, {3, 4}}), 2);
const Instance kK3(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), 2);
const Instance kEdge(Graph(2, {{1, 2}}), 1);

}  // namespace

TEST_CASE("graph text parses") {
  SUBCASE("path") {
    const auto inst = parse_graph("c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\nk 2\n");
    CHECK(inst.n() == 4);
    CHECK(inst.s() == 3);
    CHECK(inst.k == 2);
    CHECK(inst.graph.edges()[2] == Edge{3, 4});
  }
  SUBCASE("no edges") {
    const auto inst = parse_graph("p edge 2 0\nk 1\n");
    CHECK(inst.n() == 2);
    CHECK(inst.s() == 0);
  }
  SUBCASE("edge order is file order") {
    const auto inst = parse_graph("p edge 3 2\ne 2 3\ne 1 2\nk 1\n");
    CHECK(inst.graph.edges()[0] == Edge{2, 3});
    CHECK(inst.graph.edges()[1] == Edge{1, 2});
  }
  SUBCASE("k override") {
    CHECK(parse_graph("p edge 4 0\nk 1\n", 3).k == 3);
    CHECK(parse_graph("p edge 4 0\n", 2).k == 2);
  }
  SUBCASE("round trip") {
    CHECK(parse_graph(format_graph(kP4)).graph.edges() == kP4.graph.edges());
  }
}

TEST_CASE("graph text errors") {
  CHECK_THROWS_WITH_AS(parse_graph("e 1 1\n"), doctest::Contains("self-loop"), GraphParseError);
  CHECK_THROWS_WITH_AS(parse_graph("e 1 2\nk 1\n"), doctest::Contains("header"), GraphParseError);
  CHECK_THROWS_WITH_AS(parse_graph("p edge 3 2\ne 1 2\ne 2 1\nk 1\n"),
                       doctest::Contains("duplicate"), GraphParseError);
  CHECK_THROWS_WITH_AS(parse_graph("p edge 3 1\ne 1 2 3\nk 1\n"), doctest::Contains("line 2"),
                       GraphParseError);
  CHECK_THROWS_AS(parse_graph("p edge 3 1\ne 1 4\nk 1\n"), GraphParseError);
  CHECK_THROWS_AS(parse_graph("p edge 3 0\nk 3\n"), GraphParseError);
  CHECK_THROWS_AS(parse_graph("p edge 3 0\n"), GraphParseError);
  CHECK_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\nk 1\n"), GraphParseError);
  CHECK_THROWS_AS(parse_graph("p edge 3 0\np edge 3 0\nk 1\n"), GraphParseError);
  CHECK_THROWS_AS(read_graph_file("/nonexistent/graph.col"), std::exception);
}

TEST_CASE("bundled graph files") {
  const std::string dir = TFM_TEST_DATA;
  CHECK(read_graph_file(dir + "/p4.col").s() == 3);
  CHECK(read_graph_file(dir + "/k3.col").s() == 3);
  CHECK(read_graph_file(dir + "/edge2.col").n() == 2);
}

TEST_CASE("time policies") {
  const auto def = build_literal(kP4).system;
  SUBCASE("unit") {
    const auto tm = make_time_mapping(def, UnitPolicy{}, 1);
    CHECK(tm.size() == 45);
    CHECK(tm == TimeMapping::unit(45));
  }
  SUBCASE("uniform random is seeded") {
    const auto a = make_time_mapping(def, UniformRandomPolicy{1, 5}, 42);
    CHECK(a == make_time_mapping(def, UniformRandomPolicy{1, 5}, 42));
    CHECK_FALSE(a == make_time_mapping(def, UniformRandomPolicy{1, 5}, 43));
    for (auto d : a.durations()) {
      CHECK(d >= 1);
      CHECK(d <= 5);
    }
    CHECK_THROWS_AS(make_time_mapping(def, UniformRandomPolicy{0, 5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_time_mapping(def, UniformRandomPolicy{5, 2}, 1), std::invalid_argument);
  }
  SUBCASE("spotlight") {
    const auto tm = make_time_mapping(def, SpotlightPolicy{"r2,1", 50, 1}, 1);
    const auto slow = def.find_rule("r2,1")->id;
    for (const auto& r : def.rules) CHECK(tm.duration(r.id) == (r.id == slow ? 50U : 1U));
    CHECK_THROWS_AS(make_time_mapping(def, SpotlightPolicy{"r99", 5, 1}, 1), std::invalid_argument);
    const auto picked = make_time_mapping(def, SpotlightPolicy{"", 9, 1}, 7);
    CHECK(std::count(picked.durations().begin(), picked.durations().end(), 9U) == 1);
  }
  SUBCASE("explicit") {
    ExplicitPolicy ex;
    for (const auto& r : def.rules) ex.table[r.name] = 2;
    CHECK(make_time_mapping(def, ex, 1).durations() == std::vector<std::uint32_t>(45, 2));
    ex.table.erase("r15");
    CHECK_THROWS_AS(make_time_mapping(def, ex, 1), std::invalid_argument);
  }
}

TEST_CASE("time policy text") {
  CHECK(std::holds_alternative<UnitPolicy>(parse_time_policy("unit")));
  const auto r = std::get<UniformRandomPolicy>(parse_time_policy("random:2,9"));
  CHECK(r.lo == 2);
  CHECK(r.hi == 9);
  const auto s = std::get<SpotlightPolicy>(parse_time_policy("spotlight:r11,3,40"));
  CHECK(s.rule == "r11,3");
  CHECK(s.duration == 40);
  CHECK_THROWS_AS(parse_time_policy("sometimes"), std::invalid_argument);
  CHECK_THROWS_AS(parse_time_policy("random:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_time_policy("spotlight:r15"), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "tfm_policy_test.json";
  std::ofstream(path) << R"({"r15": 4})";
  const auto ex = std::get<ExplicitPolicy>(parse_time_policy("file:" + path.string()));
  CHECK(ex.table.at("r15") == 4);
  std::filesystem::remove(path);
}

TEST_CASE("spotlight on a single rule leaves the repaired answer alone") {
  const auto built = build_repaired(kP4);
  for (const char* rule : {"r2',1", "r15", "t3,2", "r14", "y3"}) {
    const auto tm = make_time_mapping(built.system, SpotlightPolicy{rule, 50, 1}, 1);
    const auto out = run_tracked(kP4, built, tm, 3);
    CHECK_MESSAGE(out.result.answer == Answer::Yes, rule);
    CHECK(out.result.deferrals == 0);
  }
}

TEST_CASE("tracked run on the path checks structure, d counts and lockstep") {
  const auto built = build_repaired(kP4);
  const auto out = run_tracked(kP4, built, TimeMapping::unit(built.system.rules.size()), 1);
  CHECK(out.result.halted);
  CHECK(out.result.answer == Answer::Yes);
  CHECK_MESSAGE(out.structure_ok, out.structure_detail);
  CHECK_MESSAGE(out.d_counts_ok, out.d_count_detail);
  CHECK(out.lockstep_ok);
  CHECK_FALSE(out.stranded.has_value());
  CHECK(out.result.rs_steps <= repaired_rs_bound(kP4));
}

TEST_CASE("repaired campaign on the path") {
  auto cfg = default_campaign(Variant::Repaired, 10, 3, 0);
  const auto rep = run_campaign(kP4, cfg);
  CHECK(rep.runs.size() == 30);
  for (const auto& r : rep.runs) CHECK(r.answer == Answer::Yes);
  CHECK(rep.time_free_sound);
  CHECK(rep.time_free_complete);
  CHECK(rep.all_ok());
  CHECK(rep.deferrals == 0);
  // Same configuration, same report.
  CHECK(report_to_json(kP4, run_campaign(kP4, cfg)).dump() == report_to_json(kP4, rep).dump());
}

TEST_CASE("repaired campaign on the triangle") {
  const auto rep = run_campaign(kK3, default_campaign(Variant::Repaired, 10, 3));
  CHECK(rep.runs.size() == (10 + 3) * 3);
  CHECK(repaired_rs_bound(kK3) == 52);
  for (const auto& r : rep.runs) {
    CHECK(r.answer == Answer::No);
    CHECK(r.rs_steps <= 52);
  }
  CHECK(rep.all_ok());
  const auto j = report_to_json(kK3, rep);
  CHECK(j["verdicts"]["time_free_sound"] == true);
}

TEST_CASE("literal campaign on the triangle is not time-free sound") {
  auto cfg = default_campaign(Variant::Literal, 0, 1, 0);
  cfg.policies = {{UnitPolicy{}, 1}};
  cfg.scheduler = SchedulerPolicy::KindOrder;
  const auto rep = run_campaign(kK3, cfg);
  REQUIRE(rep.runs.size() == 1);
  CHECK(rep.runs[0].answer == Answer::Yes);
  CHECK_FALSE(rep.time_free_sound);
  CHECK(literal_rs_bound(kK3) == 5 * 3 + 4 * 3 + 12);
}

TEST_CASE("race hunt") {
  SUBCASE("literal single edge strands a g in round one") {
    const auto r = race_hunt(kEdge, 500, 1, Variant::Literal);
    CHECK(r.anomaly != AnomalyKind::None);
    CHECK(r.runs >= 1);
    if (r.anomaly == AnomalyKind::StrandedG) CHECK(r.round == 1);
  }
  SUBCASE("repaired single edge survives the same budget") {
    const auto r = race_hunt(kEdge, 500, 1, Variant::Repaired);
    CHECK(r.anomaly == AnomalyKind::None);
    CHECK(r.runs == 500);
  }
  SUBCASE("zero budget runs nothing") {
    const auto r = race_hunt(kEdge, 0, 1);
    CHECK(r.anomaly == AnomalyKind::None);
    CHECK(r.runs == 0);
  }
}

TEST_CASE("derived seeds differ across inputs") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
}

TEST_CASE("repaired rounds never overlap within a lineage") {
  std::mt19937_64 rng(8);
  const std::vector<Instance> insts{kEdge, kK3, kP4, Instance(Graph(5, {{1, 2}, {2, 5}, {3, 4}}), 2)};
  for (const auto& inst : insts) {
    const auto built = build_repaired(inst);
    const auto& map = built.map;
    std::map<std::uint32_t, int> round_of;
    for (int i = 0; i < inst.n(); ++i)
      for (const auto* v : {&map.round_divide, &map.round_select, &map.round_reject,
                            &map.round_mark_pos, &map.round_mark_neg, &map.round_separate,
                            &map.round_token, &map.round_deliver, &map.round_fuse})
        round_of[raw((*v)[i])] = i + 1;
    // The reset send-out of round i may still run when round i+1 divides; it holds the lock
    // on membrane 0, so the next separation has to wait for it.
    std::map<std::uint32_t, int> reset_round;
    for (int i = 0; i < inst.n(); ++i) reset_round[raw(map.round_reset[i])] = i + 1;
    int checked = 0;
    for (int m = 0; m < 15; ++m) {
      const auto tm = make_time_mapping(built.system, UniformRandomPolicy{1, 6}, rng());
      auto obs = [&](const StepReport& rep, const Simulator& sim) {
        const auto& cfg = sim.configuration();
        for (const auto& s : rep.started) {
          const auto sep = std::find(map.round_separate.begin(), map.round_separate.end(), s.rule);
          if (sep != map.round_separate.end() && sep != map.round_separate.begin()) {
            const int prev = static_cast<int>(sep - map.round_separate.begin());
            for (const auto& live : sim.live_records())
              if (reset_round.count(raw(live.rule)) && reset_round[raw(live.rule)] == prev)
                CHECK(live.membrane != s.membrane);
          }
          const auto it = std::find(map.round_divide.begin(), map.round_divide.end(), s.rule);
          if (it == map.round_divide.begin() || it == map.round_divide.end()) continue;
          const int round = static_cast<int>(it - map.round_divide.begin());  // previous round
          auto lineage = s.membrane;
          while (cfg.node(lineage).label != map.lineage_label) lineage = *cfg.node(lineage).parent;
          ++checked;
          for (const auto& live : sim.live_records()) {
            if (live.id == s.id || round_of[raw(live.rule)] != round) continue;
            CHECK_MESSAGE(!cfg.in_subtree(lineage, live.membrane),
                          built.system.rule(live.rule).name);
          }
        }
      };
      const auto r = run(built.system, tm, rng(), {}, {}, nullptr, obs);
      CHECK(r.answer == (independent_set_exists(inst).exists ? Answer::Yes : Answer::No));
    }
    CHECK(checked > 0);
  }
}
