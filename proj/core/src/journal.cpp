#include "spectrum/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectrum/error.hpp"

namespace spectrum {

using nlohmann::ordered_json;

std::string encode_event_line(const EventRecord& record) {
  ordered_json args = ordered_json::object();
  for (const auto& [key, value] : record.args) args[key] = value;
  ordered_json line;
  line["seq"] = record.seq;
  line["timestamp"] = record.timestamp;
  line["event"] = record.event;
  line["args"] = std::move(args);
  return line.dump();
}

EventRecord decode_event_line(std::string_view line) {
  auto bad = [&](const std::string& why) -> EventRecord {
    fail(ErrorCode::CorruptJournal, "bad journal line: " + why);
  };
  ordered_json doc = ordered_json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return bad("not a JSON object");
  if (doc.size() != 4) return bad("expected exactly seq, timestamp, event, args");
  auto seq = doc.find("seq");
  auto timestamp = doc.find("timestamp");
  auto event = doc.find("event");
  auto args = doc.find("args");
  if (seq == doc.end() || !seq->is_number_unsigned()) return bad("seq must be an unsigned integer");
  if (timestamp == doc.end() || !timestamp->is_number_unsigned()) return bad("timestamp must be unsigned");
  if (event == doc.end() || !event->is_string()) return bad("event must be a string");
  if (args == doc.end() || !args->is_object()) return bad("args must be an object");

  EventRecord record;
  record.seq = seq->get<std::uint64_t>();
  record.timestamp = timestamp->get<std::uint64_t>();
  record.event = event->get<std::string>();
  for (const auto& [key, value] : args->items()) {
    if (!value.is_string()) return bad("arg '" + key + "' is not a string");
    record.args.emplace_back(key, value.get<std::string>());
  }
  return record;
}

JournalContents parse_journal(std::string_view text, TornTail torn) {
  JournalContents out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (torn == TornTail::Drop) {
        out.dropped_bytes = text.size() - pos;
        break;
      }
      fail(ErrorCode::CorruptJournal, "line " + std::to_string(line_no) + " is truncated (no trailing newline)");
    }
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    EventRecord record;
    try {
      record = decode_event_line(line);
    } catch (const LedgerError& e) {
      fail(ErrorCode::CorruptJournal, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (record.seq != out.records.size() + 1) {
      fail(ErrorCode::CorruptJournal, "line " + std::to_string(line_no) + ": seq " + std::to_string(record.seq) +
                                          " where " + std::to_string(out.records.size() + 1) + " was expected");
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

JournalContents read_journal(const std::filesystem::path& path, TornTail torn) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::CorruptJournal, "cannot read journal " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_journal(buffer.str(), torn);
}

FileJournal::FileJournal(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    fail(ErrorCode::PersistenceFailure, "cannot open journal " + path.string() + ": " + std::strerror(errno));
  }
}

FileJournal::~FileJournal() {
  if (fd_ >= 0) ::close(fd_);
}

void FileJournal::append(std::span<const EventRecord> records) {
  std::string buffer;
  for (const auto& record : records) {
    try {
      buffer += encode_event_line(record);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::PersistenceFailure, std::string("cannot encode event: ") + e.what());
    }
    buffer += '\n';
  }
  // A failed command must leave no partial line behind.
  const off_t rollback = ::lseek(fd_, 0, SEEK_END);
  auto abort_write = [&](const char* what) {
    std::string reason = std::string(what) + ": " + std::strerror(errno);
    if (rollback >= 0 && ::ftruncate(fd_, rollback) != 0) reason += " (rollback failed)";
    fail(ErrorCode::PersistenceFailure, reason);
  };
  const char* data = buffer.data();
  std::size_t left = buffer.size();
  while (left > 0) {
    ssize_t n = ::write(fd_, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      abort_write("journal write failed");
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) abort_write("journal fsync failed");
}

void FileJournal::truncate(const std::filesystem::path& path, std::uintmax_t size) {
  std::error_code ec;
  std::filesystem::resize_file(path, size, ec);
  if (ec) fail(ErrorCode::PersistenceFailure, "cannot truncate journal: " + ec.message());
}

}  // namespace spectrum
