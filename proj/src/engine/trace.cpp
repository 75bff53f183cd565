#include "tfm/engine/trace.hpp"

#include <nlohmann/json.hpp>

namespace tfm {

std::string_view to_string(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::Start:
      return "start";
    case TraceEventKind::Complete:
      return "complete";
    case TraceEventKind::Dissolve:
      return "dissolve";
    case TraceEventKind::Divide:
      return "divide";
    case TraceEventKind::Separate:
      return "separate";
    case TraceEventKind::Deferral:
      return "deferral";
  }
  return "?";
}

std::string encode_trace_event(const TraceEvent& e, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["step"] = e.step;
  j["instant"] = e.instant;
  j["event"] = to_string(e.event);
  j["rule_id"] = raw(e.rule_id);
  j["rule"] = e.rule_name;
  j["membrane_id"] = raw(e.membrane);
  j["label"] = raw(e.label);
  j["charge"] = to_string(e.charge);
  auto bound = nlohmann::ordered_json::object();
  for (const auto& [s, n] : e.bound) bound[alphabet.name(s)] = n;
  j["bound"] = std::move(bound);
  if (e.event != TraceEventKind::Deferral) j["record"] = raw(e.record);
  if (e.multiplicity != 1) j["multiplicity"] = e.multiplicity;
  if (e.event == TraceEventKind::Divide || e.event == TraceEventKind::Separate) {
    auto ids = nlohmann::ordered_json::array();
    for (auto c : e.created) ids.push_back(raw(c));
    j[e.event == TraceEventKind::Divide ? "children" : "copies"] = std::move(ids);
  }
  if (e.parent) j["parent"] = raw(*e.parent);
  if (e.blocking) j["blocking_record"] = raw(*e.blocking);
  return j.dump();
}

void JsonlTraceWriter::write(const TraceEvent& e) {
  out_ << encode_trace_event(e, alphabet_) << '\n';
}

}  // namespace tfm
