#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "spectrum/ledger_state.hpp"

namespace spectrum {

/// Canonical JSON form of the state. Object keys are emitted in sorted order
/// (nlohmann::json's default map), maps are keyed by their canonical string
/// form, and wei amounts are integer strings, so the serialization is
/// byte-identical on every platform.
nlohmann::json to_canonical_json(const LedgerState& state);
/// Inverse of to_canonical_json. Throws LedgerError(CorruptJournal) on
/// malformed input.
LedgerState from_canonical_json(const nlohmann::json& doc);

/// Compact dump of to_canonical_json().
std::string canonical_serialization(const LedgerState& state);

/// Lowercase hex SHA-256 of canonical_serialization().
std::string state_hash(const LedgerState& state);

std::string sha256_hex(std::string_view data);

}  // namespace spectrum
