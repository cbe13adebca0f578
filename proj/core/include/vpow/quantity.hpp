#pragma once

#include <optional>
#include <string_view>

namespace vpow {

// The seven quantities the engine reports. DPlus..S are per voter;
// E belongs to the system as a whole.
enum class Quantity { DPlus, DMinus, D, SPlus, SMinus, S, E };

inline constexpr Quantity kAllQuantities[] = {
    Quantity::DPlus, Quantity::DMinus, Quantity::D,
    Quantity::SPlus, Quantity::SMinus, Quantity::S,
    Quantity::E,
};

inline const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::DPlus: return "DPlus";
    case Quantity::DMinus: return "DMinus";
    case Quantity::D: return "D";
    case Quantity::SPlus: return "SPlus";
    case Quantity::SMinus: return "SMinus";
    case Quantity::S: return "S";
    case Quantity::E: return "E";
  }
  return "?";
}

inline std::optional<Quantity> quantity_from_string(std::string_view name) {
  for (Quantity q : kAllQuantities) {
    if (name == to_string(q)) return q;
  }
  return std::nullopt;
}

}  // namespace vpow
