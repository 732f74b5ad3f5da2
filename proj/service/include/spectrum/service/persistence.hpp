#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "spectrum/event.hpp"
#include "spectrum/genesis.hpp"
#include "spectrum/ledger_state.hpp"

namespace spectrum::service {

/// Snapshot file: {"seq": N, "state_hash": "<hex>", "state": <canonical state>}.
/// Written to "<path>.tmp", fsynced, then renamed over `path`.
/// Throws LedgerError(PersistenceFailure).
void write_snapshot(const std::filesystem::path& path, const LedgerState& state);

/// Returns nullopt when the file does not exist. A file whose stored hash
/// does not match its state throws LedgerError(CorruptJournal).
std::optional<LedgerState> read_snapshot(const std::filesystem::path& path);

/// Decides when to snapshot: at the first commit whose seq reaches the next
/// multiple of `every`. After any attempt, successful or not, the next one
/// waits for the following multiple.
class SnapshotPolicy {
 public:
  explicit SnapshotPolicy(std::uint64_t every, std::uint64_t current_seq = 0);

  bool due(std::uint64_t seq) const { return seq >= next_due_; }
  void attempted(std::uint64_t seq);
  std::uint64_t next_due() const { return next_due_; }

 private:
  std::uint64_t every_;
  std::uint64_t next_due_;
};

struct Recovered {
  LedgerState state;
  std::vector<EventRecord> history;
  std::optional<std::uint64_t> snapshot_seq;
  std::size_t dropped_bytes = 0;  // torn journal tail that was cut off
};

/// Startup recovery. Reads the journal (cutting off an unacknowledged torn
/// tail), loads the snapshot if there is one, checks it against the genesis,
/// and replays the journal records after the snapshot seq.
/// Throws LedgerError(CorruptJournal | GenesisMismatch).
Recovered recover(const GenesisConfig& genesis, const std::filesystem::path& journal_path,
                  const std::filesystem::path& snapshot_path);

}  // namespace spectrum::service
