#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tfm/core/alphabet.hpp"
#include "tfm/core/multiset.hpp"
#include "tfm/core/types.hpp"

namespace tfm {

enum class TraceEventKind : std::uint8_t { Start, Complete, Dissolve, Divide, Separate, Deferral };

std::string_view to_string(TraceEventKind k);

struct TraceEvent {
  std::uint64_t step = 0;
  Instant instant = 0;
  TraceEventKind event = TraceEventKind::Start;
  RuleId rule_id{};
  std::string_view rule_name;
  MembraneId membrane{};
  Label label{};
  Charge charge = Charge::Neutral;
  Multiset bound;
  RecordId record{};
  std::uint64_t multiplicity = 1;
  std::vector<MembraneId> created;      // divide: children, separate: the two copies
  std::optional<MembraneId> parent;     // dissolve: region receiving the contents
  std::optional<RecordId> blocking;     // deferral: a live record inside the subtree
};

/// One JSON object, no trailing newline. Field order is fixed:
/// step, instant, event, rule_id, rule, membrane_id, label, charge, bound, record, then extras.
std::string encode_trace_event(const TraceEvent& e, const Alphabet& alphabet);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void write(const TraceEvent& e) = 0;
};

class JsonlTraceWriter final : public TraceSink {
 public:
  JsonlTraceWriter(std::ostream& out, const Alphabet& alphabet) : out_(out), alphabet_(alphabet) {}
  void write(const TraceEvent& e) override;

 private:
  std::ostream& out_;
  const Alphabet& alphabet_;
};

}  // namespace tfm
