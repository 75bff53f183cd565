#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tfm/construction/graph.hpp"
#include "tfm/engine/system.hpp"

namespace tfm {

enum class Variant : std::uint8_t { Literal, Repaired };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

/// Where each role of the construction landed in the emitted rule list. Per-round
/// vectors are indexed by round i-1 (i = 1..n); per-edge vectors by edge index h-1.
struct ConstructionMap {
  Variant variant = Variant::Literal;
  int n = 0;
  int s = 0;
  int k = 0;

  Label skin{};
  Label lineage_label{};     // 0
  Label selection_label{};   // n+1: holds the encoded subset after generation

  std::vector<RuleId> round_divide;    // r1,i (literal) / r1',i (repaired)
  std::vector<RuleId> round_select;    // r2,i: v_i' -> edges g_i
  std::vector<RuleId> round_reject;    // r3,i
  std::vector<RuleId> round_mark_pos;  // r4,i: sends g_i out
  std::vector<RuleId> round_mark_neg;  // r5,i
  std::vector<RuleId> round_separate;  // r6,i / r6',i
  std::vector<RuleId> round_token;     // repaired: g_i -> p_{i+1}
  std::vector<RuleId> round_reset;     // repaired: g_i' out, resets membrane 0
  std::vector<RuleId> round_deliver;   // repaired: p_{i+1} sent into label i+1
  std::vector<RuleId> round_fuse;      // repaired: u v_{i+1} -> w_{i+1} (u b -> b' last)

  RuleId check_divide{};               // r7 / r7'
  std::vector<RuleId> d_send_out;      // r11,i for i = 1..s+1
  RuleId d_merge{};                    // r14: d^{s+2} -> d'
  RuleId lineage_dissolve{};           // r15

  // Survivor check (repaired with survivor_check only; empty otherwise).
  std::vector<RuleId> survivor_emit;   // y1,i for i = 1..s+1
  std::vector<RuleId> survivor_export; // y2,i
  std::optional<RuleId> survivor_accept;  // y3: z^{s+1} -> yes
  std::vector<RuleId> chain_count;     // r10,i or, with the survivor check, r10',i
  std::vector<RuleId> side_count;      // r10'',i (survivor check only)
  std::optional<RuleId> yes_send_in;   // r18 (absent when the survivor check replaces it)

  std::vector<SymbolId> g;             // g_i
  SymbolId d{};
  SymbolId c{};
};

struct BuiltSystem {
  SystemDefinition system;
  ConstructionMap map;
};

struct RepairOptions {
  /// Replace the d'-driven `yes` (r18) by a positive check: every edge and the size bound
  /// each send one z into membrane 0, and z^{s+1} -> yes. Also splits r10,i into a
  /// one-shot chain rule (f_i e_i^2 -> d) and a side rule (b_i e_i^2 -> d) so the d chain
  /// runs at the same pace in every lineage. Off gives the bare token-gated generation
  /// with the listed check phase and endgame.
  bool survivor_check = true;
};

/// The rule system exactly as listed for the independent-set instance.
BuiltSystem build_literal(const Instance& inst);
/// Same answer semantics, with token-gated divisions so the generation rounds cannot
/// overlap.
BuiltSystem build_repaired(const Instance& inst, RepairOptions opts = {});
BuiltSystem build(const Instance& inst, Variant v);

struct SystemStats {
  std::size_t object_count = 0;
  std::size_t rule_count = 0;
  std::size_t initial_membranes = 0;
  std::uint64_t initial_multiset_size = 0;
  std::size_t max_rule_length = 0;
};

/// Symbols needed to write a rule: objects on both sides plus a label and a charge for
/// every membrane written.
std::size_t rule_length(const Rule& r);
SystemStats system_stats(const SystemDefinition& def);

struct DCountPrediction {
  Subset subset = 0;
  int violated_edges = 0;
  bool below_threshold = false;  // |S| < k
  int predicted = 0;             // s + 1 + violated + [|S| < k]
  bool dissolves = false;        // predicted >= s + 2
};

DCountPrediction predict_d_count(const Instance& inst, Subset subset);

}  // namespace tfm
