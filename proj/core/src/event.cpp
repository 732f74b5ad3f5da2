#include "spectrum/event.hpp"

#include "spectrum/error.hpp"

namespace spectrum {

const std::string* EventRecord::find(std::string_view key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& EventRecord::at(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  fail(ErrorCode::CorruptJournal,
       "event seq " + std::to_string(seq) + " (" + event + ") lacks arg '" + std::string(key) + "'");
}

}  // namespace spectrum
