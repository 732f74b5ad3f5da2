#include "spectrum/client/verify.hpp"

#include "spectrum/canonical.hpp"
#include "spectrum/error.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger.hpp"

namespace spectrum::client {

JournalVerification verify_journal(const std::filesystem::path& path, const GenesisConfig& genesis) {
  JournalVerification out;
  try {
    auto contents = read_journal(path, TornTail::Reject);
    out.event_count = contents.records.size();
    out.final_hash = state_hash(replay(genesis, contents.records));
    out.valid = true;
  } catch (const LedgerError& e) {
    out.error_code = error_name(e.code());
    out.error = e.what();
    out.final_hash.clear();
  }
  return out;
}

}  // namespace spectrum::client
