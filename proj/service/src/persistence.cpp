#include "spectrum/service/persistence.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectrum/canonical.hpp"
#include "spectrum/error.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger.hpp"

namespace spectrum::service {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_fail(const std::string& what) {
  fail(ErrorCode::PersistenceFailure, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& data) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail("snapshot write failed");
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

void fsync_dir(const fs::path& dir) {
  int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

void write_snapshot(const fs::path& path, const LedgerState& state) {
  nlohmann::json doc = {
      {"seq", state.last_seq},
      {"state_hash", state_hash(state)},
      {"state", to_canonical_json(state)},
  };
  std::string text = doc.dump() + "\n";

  fs::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_fail("cannot create " + tmp.string());
  try {
    write_all(fd, text);
    if (::fsync(fd) != 0) io_fail("snapshot fsync failed");
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    int saved = errno;
    ::unlink(tmp.c_str());
    errno = saved;
    io_fail("cannot rename snapshot into place");
  }
  fsync_dir(path.parent_path());
}

std::optional<LedgerState> read_snapshot(const fs::path& path) {
  std::error_code ec;
  if (path.empty() || !fs::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) fail(ErrorCode::CorruptJournal, "snapshot is not valid JSON");
  auto state_it = doc.find("state");
  auto hash_it = doc.find("state_hash");
  auto seq_it = doc.find("seq");
  if (state_it == doc.end() || hash_it == doc.end() || !hash_it->is_string() || seq_it == doc.end() ||
      !seq_it->is_number_unsigned()) {
    fail(ErrorCode::CorruptJournal, "snapshot is missing seq, state_hash or state");
  }
  LedgerState state = from_canonical_json(*state_it);
  if (state_hash(state) != hash_it->get<std::string>()) {
    fail(ErrorCode::CorruptJournal, "snapshot state does not match its stored state_hash");
  }
  if (state.last_seq != seq_it->get<std::uint64_t>()) {
    fail(ErrorCode::CorruptJournal, "snapshot seq does not match its state");
  }
  return state;
}

SnapshotPolicy::SnapshotPolicy(std::uint64_t every, std::uint64_t current_seq) : every_(every ? every : 1) {
  next_due_ = (current_seq / every_ + 1) * every_;
}

void SnapshotPolicy::attempted(std::uint64_t seq) { next_due_ = (seq / every_ + 1) * every_; }

Recovered recover(const GenesisConfig& genesis, const fs::path& journal_path, const fs::path& snapshot_path) {
  Recovered out;
  if (!journal_path.empty()) {
    auto contents = read_journal(journal_path, TornTail::Drop);
    if (contents.dropped_bytes > 0) {
      FileJournal::truncate(journal_path, fs::file_size(journal_path) - contents.dropped_bytes);
    }
    out.history = std::move(contents.records);
    out.dropped_bytes = contents.dropped_bytes;
  }

  auto snapshot = read_snapshot(snapshot_path);
  if (snapshot) {
    if (snapshot->genesis != genesis) {
      fail(ErrorCode::GenesisMismatch, "snapshot was taken under a different genesis config");
    }
    if (snapshot->last_seq > out.history.size()) {
      fail(ErrorCode::CorruptJournal, "snapshot is at seq " + std::to_string(snapshot->last_seq) +
                                          " but the journal only holds " + std::to_string(out.history.size()));
    }
    out.snapshot_seq = snapshot->last_seq;
    std::span<const EventRecord> tail(out.history);
    out.state = replay_onto(std::move(*snapshot), tail.subspan(*out.snapshot_seq));
  } else {
    out.state = replay(genesis, out.history);
  }
  return out;
}

}  // namespace spectrum::service
