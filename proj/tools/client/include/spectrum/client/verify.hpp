#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "spectrum/genesis.hpp"

namespace spectrum::client {

struct JournalVerification {
  bool valid = false;
  std::string final_hash;  // set when valid
  std::size_t event_count = 0;
  std::string error_code;  // CorruptJournal or GenesisMismatch when invalid
  std::string error;
};

/// Offline strict replay: every line must be complete, seqs contiguous from
/// 1, and every event must apply cleanly from `genesis`. A missing or empty
/// file is a valid journal at the genesis hash.
JournalVerification verify_journal(const std::filesystem::path& path, const GenesisConfig& genesis);

}  // namespace spectrum::client
