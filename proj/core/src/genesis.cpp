#include "spectrum/genesis.hpp"

#include "spectrum/error.hpp"

namespace spectrum {

std::string_view to_string(ClockMode mode) { return mode == ClockMode::Sim ? "sim" : "wall"; }

GenesisConfig genesis_from_json(const nlohmann::json& doc) {
  GenesisConfig config;
  try {
    config.sma = Address::from_string(doc.at("sma_address").get<std::string>());
    auto mode = doc.value("clock_mode", std::string("sim"));
    if (mode == "sim") {
      config.clock_mode = ClockMode::Sim;
    } else if (mode == "wall") {
      config.clock_mode = ClockMode::Wall;
    } else {
      fail(ErrorCode::InvalidArgument, "clock_mode must be 'sim' or 'wall'");
    }
    config.genesis_time = doc.value("genesis_time", Timestamp{0});
    config.min_alloc_mhz = doc.value("min_alloc_mhz", std::uint64_t{20});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad genesis config: ") + e.what());
  }
  if (config.sma.is_zero()) fail(ErrorCode::InvalidArgument, "sma_address must not be the zero address");
  if (config.min_alloc_mhz == 0) fail(ErrorCode::InvalidArgument, "min_alloc_mhz must be positive");
  return config;
}

nlohmann::json genesis_to_json(const GenesisConfig& config) {
  return {
      {"sma_address", config.sma.to_string()},
      {"clock_mode", std::string(to_string(config.clock_mode))},
      {"genesis_time", config.genesis_time},
      {"min_alloc_mhz", config.min_alloc_mhz},
  };
}

}  // namespace spectrum
