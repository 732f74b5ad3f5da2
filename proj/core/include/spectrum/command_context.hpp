#pragma once

#include <string>
#include <vector>

#include "spectrum/event.hpp"
#include "spectrum/ledger_state.hpp"

namespace spectrum {

/// Scratch space for one command. Emitted events are stamped and applied to a
/// private working copy right away, so later checks in the same command see
/// their effect. Nothing reaches the ledger unless the command completes.
class CommandContext {
 public:
  CommandContext(LedgerState working, Timestamp sampled_now)
      : working_(std::move(working)), sampled_now_(sampled_now) {}

  const LedgerState& state() const { return working_; }
  Timestamp now() const { return working_.clock > sampled_now_ ? working_.clock : sampled_now_; }

  void emit(std::string_view event, EventArgs args) { emit_at(now(), event, std::move(args)); }
  void emit_at(Timestamp timestamp, std::string_view event, EventArgs args);

  const std::vector<EventRecord>& events() const { return events_; }
  LedgerState take_state() && { return std::move(working_); }

 private:
  LedgerState working_;
  Timestamp sampled_now_;
  std::vector<EventRecord> events_;
};

/// Applies one journal record to the state. Validates the record against the
/// state (seq continuity, clock, business consistency) and throws
/// LedgerError(CorruptJournal or GenesisMismatch) on any contradiction.
void apply_event(LedgerState& state, const EventRecord& record);

}  // namespace spectrum
