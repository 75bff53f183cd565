#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tfm/construction/builder.hpp"
#include "tfm/engine/system_json.hpp"
#include "tfm/harness/campaign.hpp"
#include "tfm/harness/graph_io.hpp"
#include "tfm/harness/time_policy.hpp"
#include "tfm/oracle/oracle.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tfm::Variant variant_arg(const std::string& s) {
  auto v = tfm::parse_variant(s);
  if (!v) throw UsageError("--variant must be literal or repaired");
  return *v;
}

tfm::SchedulerPolicy scheduler_arg(const std::string& s) {
  if (s == "random") return tfm::SchedulerPolicy::Random;
  if (s == "kind") return tfm::SchedulerPolicy::KindOrder;
  throw UsageError("--scheduler must be random or kind");
}

std::optional<int> k_arg(int k) { return k > 0 ? std::optional<int>(k) : std::nullopt; }

void emit(const nlohmann::ordered_json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << doc.dump(2) << "\n";
}

std::string subset_text(tfm::Subset s, int n) {
  std::string out = "{";
  for (int v = 1; v <= n; ++v)
    if (s >> (v - 1) & 1U) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timed active-membrane P systems for independent set"};
  app.require_subcommand(1);

  std::string graph, system_file, variant = "repaired", out, time = "unit", trace_file;
  std::string scheduler = "random", hunt_variant = "literal";
  int k = 0;
  std::uint64_t seed = 1, max_steps = 1'000'000, budget = 500;
  int mappings = 10, seeds = 3, spotlights = 3;
  std::uint32_t lo = 1, hi = 5;

  auto* build = app.add_subcommand("build", "Compile a graph into a system JSON document");
  build->add_option("--graph", graph, "Graph file")->required();
  build->add_option("--variant", variant, "literal or repaired");
  build->add_option("--k", k, "Threshold (overrides the file's k line)");
  build->add_option("--out", out, "Output path (default stdout)");

  auto* run = app.add_subcommand("run", "Simulate one computation");
  auto* sys_opt = run->add_option("--system", system_file, "System JSON document");
  auto* graph_opt = run->add_option("--graph", graph, "Graph file (built on the fly)");
  sys_opt->excludes(graph_opt);
  run->add_option("--variant", variant, "literal or repaired (with --graph)");
  run->add_option("--k", k, "Threshold (with --graph)");
  run->add_option("--time", time, "unit | random:lo,hi | spotlight:RULE,D | file:PATH");
  run->add_option("--seed", seed, "Scheduler and mapping seed");
  run->add_option("--trace", trace_file, "Write JSONL trace here");
  run->add_option("--max-steps", max_steps, "Wall-step limit");
  run->add_option("--scheduler", scheduler, "random or kind");

  auto* oracle = app.add_subcommand("oracle", "Decide the instance by enumeration");
  oracle->add_option("--graph", graph, "Graph file")->required();
  oracle->add_option("--k", k, "Threshold");

  auto* check = app.add_subcommand("check", "Run a verification campaign");
  check->add_option("--graph", graph, "Graph file")->required();
  check->add_option("--variant", variant, "literal or repaired");
  check->add_option("--k", k, "Threshold");
  check->add_option("--mappings", mappings, "Random time mappings");
  check->add_option("--seeds", seeds, "Scheduler seeds per mapping");
  check->add_option("--spotlights", spotlights, "Extra one-slow-rule mappings");
  check->add_option("--lo", lo, "Smallest sampled duration");
  check->add_option("--hi", hi, "Largest sampled duration");
  check->add_option("--seed", seed, "Campaign seed");
  check->add_option("--scheduler", scheduler, "random or kind");
  check->add_option("--max-steps", max_steps, "Wall-step limit per run");
  check->add_option("--out", out, "Report path (default stdout)");

  auto* hunt = app.add_subcommand("race-hunt", "Search schedules for generation-phase races");
  hunt->add_option("--graph", graph, "Graph file")->required();
  hunt->add_option("--k", k, "Threshold");
  hunt->add_option("--variant", hunt_variant, "literal or repaired (default literal)");
  hunt->add_option("--budget", budget, "Maximum runs");
  hunt->add_option("--seed", seed, "Search seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) {
      const auto inst = tfm::read_graph_file(graph, k_arg(k));
      const auto built = tfm::build(inst, variant_arg(variant));
      emit(tfm::system_to_json(built.system), out);
      return kOk;
    }
    if (*run) {
      if (system_file.empty() && graph.empty()) throw UsageError("run needs --system or --graph");
      std::optional<tfm::Instance> inst;
      tfm::SystemDefinition def;
      if (!graph.empty()) {
        inst = tfm::read_graph_file(graph, k_arg(k));
        def = tfm::build(*inst, variant_arg(variant)).system;
      } else {
        std::ifstream f(system_file);
        if (!f) throw UsageError("cannot open " + system_file);
        def = tfm::system_from_json(nlohmann::json::parse(f));
      }
      const auto tm = tfm::make_time_mapping(def, tfm::parse_time_policy(time), seed);
      std::ofstream trace_out;
      std::optional<tfm::JsonlTraceWriter> writer;
      if (!trace_file.empty()) {
        trace_out.open(trace_file);
        if (!trace_out) throw UsageError("cannot write " + trace_file);
        writer.emplace(trace_out, def.alphabet);
      }
      tfm::SimulatorOptions opts;
      opts.policy = scheduler_arg(scheduler);
      const auto r = tfm::run(def, tm, seed, {max_steps}, opts, writer ? &*writer : nullptr);
      nlohmann::ordered_json doc = {{"answer", std::string(tfm::to_string(r.answer))},
                                    {"halted", r.halted},
                                    {"wall_steps", r.wall_steps},
                                    {"rs_steps", r.rs_steps},
                                    {"deferrals", r.deferrals}};
      if (!r.diagnosis.empty()) doc["diagnosis"] = r.diagnosis;
      bool agrees = true;
      if (inst && inst->n() <= tfm::kOracleMaxVertices) {
        const bool exists = tfm::independent_set_exists(*inst).exists;
        doc["oracle"] = exists ? "yes" : "no";
        agrees = r.answer == (exists ? tfm::Answer::Yes : tfm::Answer::No);
      }
      std::cout << doc.dump() << "\n";
      return r.halted && r.answer != tfm::Answer::Undetermined && agrees ? kOk : kVerdictFailed;
    }
    if (*oracle) {
      const auto inst = tfm::read_graph_file(graph, k_arg(k));
      const auto v = tfm::independent_set_exists(inst);
      std::cout << "exists=" << (v.exists ? "true" : "false") << "\n";
      std::cout << "max_independent_size=" << v.max_independent_size << "\n";
      std::cout << "witness=" << (v.witness ? subset_text(*v.witness, inst.n()) : "none") << "\n";
      std::cout << "kernel=" << tfm::to_string(tfm::active_kernel()) << "\n";
      return kOk;
    }
    if (*check) {
      const auto inst = tfm::read_graph_file(graph, k_arg(k));
      if (mappings < 0 || spotlights < 0 || seeds < 1 || mappings + spotlights < 1)
        throw UsageError("check needs at least one mapping and one seed");
      if (lo < 1 || lo > hi) throw UsageError("--lo/--hi must satisfy 1 <= lo <= hi");
      tfm::CampaignConfig cfg;
      cfg.variant = variant_arg(variant);
      if (mappings > 0) cfg.policies.push_back({tfm::UniformRandomPolicy{lo, hi}, mappings});
      if (spotlights > 0) cfg.policies.push_back({tfm::SpotlightPolicy{"", 20, 1}, spotlights});
      cfg.scheduler_seeds = seeds;
      cfg.seed = seed;
      cfg.limits.max_wall_steps = max_steps;
      cfg.scheduler = scheduler_arg(scheduler);
      const auto rep = tfm::run_campaign(inst, cfg);
      emit(tfm::report_to_json(inst, rep), out);
      return rep.all_ok() ? kOk : kVerdictFailed;
    }
    if (*hunt) {
      const auto inst = tfm::read_graph_file(graph, k_arg(k));
      const auto v = variant_arg(hunt_variant);
      const auto rep = tfm::race_hunt(inst, budget, seed, v);
      std::cout << tfm::race_to_json(inst, v, rep).dump() << "\n";
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const tfm::GraphParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdictFailed;
  }
  return kUsage;
}
