#include "tfm/core/types.hpp"

namespace tfm {

std::string_view to_string(Charge c) {
  switch (c) {
    case Charge::Positive:
      return "+";
    case Charge::Negative:
      return "-";
    case Charge::Neutral:
      break;
  }
  return "0";
}

std::optional<Charge> parse_charge(std::string_view text) {
  if (text == "0") return Charge::Neutral;
  if (text == "+") return Charge::Positive;
  if (text == "-") return Charge::Negative;
  return std::nullopt;
}

}  // namespace tfm
