#include "tfm/harness/time_policy.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfm/engine/system_json.hpp"

namespace tfm {

namespace {

std::uint32_t parse_duration(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
  return v;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string describe(const TimePolicy& p) {
  return std::visit(
      overloaded{
          [](const UnitPolicy&) { return std::string("unit"); },
          [](const UniformRandomPolicy& r) {
            return "random:" + std::to_string(r.lo) + "," + std::to_string(r.hi);
          },
          [](const SpotlightPolicy& s) {
            return "spotlight:" + (s.rule.empty() ? std::string("*") : s.rule) + "," +
                   std::to_string(s.duration);
          },
          [](const ExplicitPolicy& e) {
            return "explicit:" + std::to_string(e.table.size()) + " rules";
          },
      },
      p);
}

TimePolicy parse_time_policy(std::string_view text) {
  if (text == "unit") return UnitPolicy{};
  if (text == "random") return UniformRandomPolicy{};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("unknown time policy '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (kind == "random") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("random policy needs 'random:lo,hi'");
    UniformRandomPolicy r{parse_duration(arg.substr(0, comma), "lower bound"),
                          parse_duration(arg.substr(comma + 1), "upper bound")};
    if (r.lo > r.hi) throw std::invalid_argument("random policy needs lo <= hi");
    return r;
  }
  if (kind == "spotlight") {
    const auto comma = arg.rfind(',');
    if (comma == std::string_view::npos || comma == 0)
      throw std::invalid_argument("spotlight policy needs 'spotlight:RULE,D'");
    return SpotlightPolicy{std::string(arg.substr(0, comma)),
                           parse_duration(arg.substr(comma + 1), "spotlight duration"), 1};
  }
  if (kind == "file") {
    std::ifstream in{std::string(arg)};
    if (!in) throw std::invalid_argument("cannot open time mapping file '" + std::string(arg) + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("time mapping file: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw std::invalid_argument("time mapping file must hold a JSON object");
    ExplicitPolicy p;
    for (const auto& [name, value] : doc.items()) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
        throw std::invalid_argument("rule '" + name + "' needs an integer duration >= 1");
      p.table[name] = value.get<std::uint32_t>();
    }
    return p;
  }
  throw std::invalid_argument("unknown time policy '" + std::string(kind) + "'");
}

TimeMapping make_time_mapping(const SystemDefinition& def, const TimePolicy& policy,
                              std::uint64_t seed) {
  const auto n = def.rules.size();
  return std::visit(
      overloaded{
          [&](const UnitPolicy&) { return TimeMapping::unit(n); },
          [&](const UniformRandomPolicy& r) {
            if (r.lo < 1 || r.lo > r.hi)
              throw std::invalid_argument("random policy needs 1 <= lo <= hi");
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::uint32_t> dist(r.lo, r.hi);
            std::vector<std::uint32_t> d(n);
            for (auto& x : d) x = dist(rng);
            return TimeMapping(std::move(d));
          },
          [&](const SpotlightPolicy& s) {
            if (s.duration < 1 || s.others < 1)
              throw std::invalid_argument("spotlight durations must be >= 1");
            std::vector<std::uint32_t> d(n, s.others);
            if (s.rule.empty()) {
              if (n == 0) return TimeMapping(std::move(d));
              std::mt19937_64 rng(seed);
              d[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = s.duration;
            } else {
              const auto* r = def.find_rule(s.rule);
              if (!r) throw std::invalid_argument("spotlight names unknown rule '" + s.rule + "'");
              d[raw(r->id)] = s.duration;
            }
            return TimeMapping(std::move(d));
          },
          [&](const ExplicitPolicy& e) {
            nlohmann::json doc = nlohmann::json::object();
            for (const auto& [name, v] : e.table) doc[name] = v;
            return time_mapping_from_json(doc, def);
          },
      },
      policy);
}

}  // namespace tfm
