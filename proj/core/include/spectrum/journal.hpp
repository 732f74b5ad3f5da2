#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spectrum/event.hpp"

namespace spectrum {

/// Durable destination for committed events. append() must not return until
/// the records are persisted; throwing aborts the command.
class JournalSink {
 public:
  virtual ~JournalSink() = default;
  virtual void append(std::span<const EventRecord> records) = 0;
};

/// One JSON object per line: {"seq":..,"timestamp":..,"event":..,"args":{..}}.
/// Args values are strings and keep their insertion order.
std::string encode_event_line(const EventRecord& record);
/// Throws LedgerError(CorruptJournal).
EventRecord decode_event_line(std::string_view line);

enum class TornTail {
  Reject,  // a final line without '\n' is corruption
  Drop,    // a final line without '\n' was never acknowledged; discard it
};

struct JournalContents {
  std::vector<EventRecord> records;
  std::size_t dropped_bytes = 0;  // length of a dropped torn tail
};

/// Parses a whole journal and checks seq continuity (1..N, no gaps).
/// A missing file reads as empty. Throws LedgerError(CorruptJournal).
JournalContents read_journal(const std::filesystem::path& path, TornTail torn = TornTail::Reject);
JournalContents parse_journal(std::string_view text, TornTail torn = TornTail::Reject);

/// Appending file journal. Each append() is a single write() followed by
/// fsync(). Failures throw LedgerError(PersistenceFailure).
class FileJournal : public JournalSink {
 public:
  explicit FileJournal(const std::filesystem::path& path);
  ~FileJournal() override;
  FileJournal(const FileJournal&) = delete;
  FileJournal& operator=(const FileJournal&) = delete;

  void append(std::span<const EventRecord> records) override;

  /// Cuts the file back to `size` bytes (used to discard a torn tail).
  static void truncate(const std::filesystem::path& path, std::uintmax_t size);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

/// Keeps records in memory; handy for tests and tools.
class MemoryJournal : public JournalSink {
 public:
  void append(std::span<const EventRecord> records) override {
    records_.insert(records_.end(), records.begin(), records.end());
  }
  const std::vector<EventRecord>& records() const { return records_; }

 private:
  std::vector<EventRecord> records_;
};

}  // namespace spectrum
