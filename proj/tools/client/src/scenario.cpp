#include "spectrum/client/scenario.hpp"

#include <fstream>
#include <sstream>

#include "spectrum/address.hpp"
#include "spectrum/client/operations.hpp"
#include "spectrum/error.hpp"
#include "spectrum/wei.hpp"

namespace spectrum::client {

using nlohmann::ordered_json;

namespace {

std::string resolve_alias(const Scenario& s, const std::string& text) {
  if (text.empty() || text[0] != '@') return text;
  auto it = s.accounts.find(text.substr(1));
  if (it == s.accounts.end()) throw ScenarioParseError("unknown account alias '" + text + "'");
  return it->second;
}

void resolve_all(const Scenario& s, ordered_json& value) {
  if (value.is_string()) {
    value = resolve_alias(s, value.get<std::string>());
  } else if (value.is_structured()) {
    for (auto& child : value) resolve_all(s, child);
  }
}

bool is_decimal(const std::string& text) {
  bool dot = false, digit = false;  // digits with at most one '.'
  for (char c : text) {
    if (c == '.' && !dot) {
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digit = true;
    } else {
      return false;
    }
  }
  return digit;
}

}  // namespace

Scenario parse_scenario(const ordered_json& doc) {
  if (!doc.is_object()) throw ScenarioParseError("scenario must be a JSON object");
  Scenario s;
  s.name = doc.value("name", std::string("scenario"));
  try {
    if (auto it = doc.find("genesis"); it != doc.end()) s.genesis = genesis_from_json(nlohmann::json(*it));
  } catch (const LedgerError& e) {
    throw ScenarioParseError(std::string("genesis: ") + e.what());
  }
  if (auto it = doc.find("accounts"); it != doc.end()) {
    if (!it->is_object()) throw ScenarioParseError("accounts must be an object of alias -> address");
    for (const auto& [alias, value] : it->items()) {
      if (!value.is_string() || !Address::parse(value.get<std::string>())) {
        throw ScenarioParseError("account '" + alias + "' is not a valid address");
      }
      s.accounts[alias] = value.get<std::string>();
    }
  }
  auto steps = doc.find("steps");
  if (steps == doc.end() || !steps->is_array()) throw ScenarioParseError("scenario needs a 'steps' array");

  for (std::size_t i = 0; i < steps->size(); ++i) {
    const auto& raw = (*steps)[i];
    const std::string where = "step " + std::to_string(i + 1);
    if (!raw.is_object()) throw ScenarioParseError(where + " is not an object");
    Step step;
    if (!raw.contains("op") || !raw["op"].is_string()) throw ScenarioParseError(where + ": missing 'op'");
    step.op = raw["op"].get<std::string>();
    step.note = raw.value("note", std::string());
    if (auto it = raw.find("caller"); it != raw.end() && !it->is_null()) {
      if (!it->is_string()) throw ScenarioParseError(where + ": caller must be a string");
      std::string caller = it->get<std::string>();
      if (!caller.empty() && caller[0] != '@' && !Address::parse(caller)) caller = "@" + caller;
      step.caller = resolve_alias(s, caller);
    }
    if (auto it = raw.find("params"); it != raw.end()) step.params = *it;
    if (auto it = raw.find("expect"); it != raw.end()) {
      if (!it->is_object()) throw ScenarioParseError(where + ": expect must be an object");
      for (const auto& [key, value] : it->items()) {
        if (key == "error" && value.is_string()) {
          step.expect_error = value.get<std::string>();
        } else if (key == "fields" && value.is_object()) {
          step.expect_fields = value;
        } else {
          throw ScenarioParseError(where + ": expect supports 'error' (string) and 'fields' (object)");
        }
      }
    }
    resolve_all(s, step.params);
    resolve_all(s, step.expect_fields);
    try {
      make_call(step.op, step.params);
    } catch (const UnknownOperation& e) {
      throw ScenarioParseError(where + ": " + e.what());
    }
    s.steps.push_back(std::move(step));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("cannot open scenario " + path.string());
  auto doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ScenarioParseError(path.string() + " is not valid JSON");
  return parse_scenario(doc);
}

const ordered_json* find_path(const ordered_json& data, const std::string& path) {
  const ordered_json* node = &data;
  std::stringstream parts(path);
  std::string key;
  while (std::getline(parts, key, '.')) {
    if (node->is_object()) {
      auto it = node->find(key);
      if (it == node->end()) return nullptr;
      node = &*it;
    } else if (node->is_array()) {
      std::size_t index = 0;
      try {
        std::size_t used = 0;
        index = std::stoul(key, &used);
        if (used != key.size()) return nullptr;
      } catch (const std::exception&) {
        return nullptr;
      }
      if (index >= node->size()) return nullptr;
      node = &(*node)[index];
    } else {
      return nullptr;
    }
  }
  return node;
}

bool values_match(const ordered_json& expected, const ordered_json& actual) {
  if (expected.is_string() && actual.is_string()) {
    const auto e = expected.get<std::string>();
    const auto a = actual.get<std::string>();
    if (e == a) return true;
    auto ea = Address::parse(e);
    auto aa = Address::parse(a);
    if (ea && aa) return *ea == *aa;
    if (is_decimal(e) && is_decimal(a)) {
      try {
        return Wei::from_ether(e) == Wei::from_ether(a);
      } catch (const LedgerError&) {
        return false;
      }
    }
    return false;
  }
  if (expected.is_array() && actual.is_array()) {
    if (expected.size() != actual.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!values_match(expected[i], actual[i])) return false;
    return true;
  }
  return expected == actual;
}

ScenarioReport run_scenario(const Scenario& scenario, Transport& transport) {
  ScenarioReport report;
  report.name = scenario.name;
  std::size_t i = 0;
  try {
    for (; i < scenario.steps.size(); ++i) {
      const Step& step = scenario.steps[i];
      StepResult result{i + 1, step.op, true, {}};
      Reply reply = transport.send(make_call(step.op, step.params), step.caller);

      if (step.expect_error) {
        if (reply.ok()) {
          result.passed = false;
          result.detail = "expected error " + *step.expect_error + " but the call succeeded";
        } else if (reply.error_code() != *step.expect_error) {
          result.passed = false;
          result.detail = "expected error " + *step.expect_error + ", got " + reply.error_code() + ": " +
                          reply.error_message();
        }
      } else if (!reply.ok()) {
        result.passed = false;
        result.detail = "unexpected error " + reply.error_code() + ": " + reply.error_message();
      }
      if (result.passed && reply.ok()) {
        for (const auto& [path, expected] : step.expect_fields.items()) {
          const ordered_json* actual = find_path(reply.data(), path);
          if (!actual) {
            result.passed = false;
            result.detail = "field '" + path + "' missing from response";
            break;
          }
          if (!values_match(expected, *actual)) {
            result.passed = false;
            result.detail = "field '" + path + "': expected " + expected.dump() + ", got " + actual->dump();
            break;
          }
        }
      }
      if (result.passed && result.detail.empty()) {
        result.detail = reply.ok() ? "ok" : reply.error_code();
      }
      report.steps.push_back(result);
      if (!result.passed) {
        ++report.failed;
        ++i;
        break;
      }
      ++report.passed;
    }
    report.skipped = scenario.steps.size() - i;
    Reply hash = transport.send(make_call("state-hash", {}), std::nullopt);
    if (hash.ok()) report.final_hash = hash.data().value("stateHash", std::string());
  } catch (const TransportError& e) {
    report.transport_error = e.what();
    report.skipped = scenario.steps.size() - std::min(scenario.steps.size(), report.passed + report.failed);
  }
  return report;
}

ordered_json ScenarioReport::to_json() const {
  ordered_json out;
  out["name"] = name;
  out["passed"] = passed;
  out["failed"] = failed;
  out["skipped"] = skipped;
  out["finalStateHash"] = final_hash;
  if (transport_error) out["transportError"] = *transport_error;
  ordered_json list = ordered_json::array();
  for (const auto& s : steps) {
    ordered_json r;
    r["step"] = s.index;
    r["op"] = s.op;
    r["passed"] = s.passed;
    r["detail"] = s.detail;
    list.push_back(std::move(r));
  }
  out["steps"] = std::move(list);
  return out;
}

std::string ScenarioReport::summary() const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << (s.passed ? "  ok   " : "  FAIL ") << "#" << s.index << " " << s.op << ": " << s.detail << "\n";
  }
  out << name << ": " << passed << " passed, " << failed << " failed";
  if (skipped) out << ", " << skipped << " not run";
  out << "\n";
  if (transport_error) out << "transport error: " << *transport_error << "\n";
  if (!final_hash.empty()) out << "final state hash: " << final_hash << "\n";
  return out.str();
}

}  // namespace spectrum::client
