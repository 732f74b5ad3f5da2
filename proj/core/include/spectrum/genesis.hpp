#pragma once

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "spectrum/address.hpp"
#include "spectrum/types.hpp"

namespace spectrum {

enum class ClockMode { Sim, Wall };

std::string_view to_string(ClockMode mode);

struct GenesisConfig {
  Address sma;
  ClockMode clock_mode = ClockMode::Sim;
  Timestamp genesis_time = 0;
  std::uint64_t min_alloc_mhz = 20;

  bool operator==(const GenesisConfig&) const = default;
};

/// Reads {sma_address, clock_mode, genesis_time, min_alloc_mhz}; other keys
/// in the object are ignored so the same file can carry service settings.
GenesisConfig genesis_from_json(const nlohmann::json& doc);
nlohmann::json genesis_to_json(const GenesisConfig& config);

}  // namespace spectrum
