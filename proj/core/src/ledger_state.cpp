#include "spectrum/ledger_state.hpp"

#include <array>

namespace spectrum {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 4> kRoles{{
    {Role::Sma, "SMA"},
    {Role::Pu, "PU"},
    {Role::Su, "SU"},
    {Role::Plain, "PLAIN"},
}};

}  // namespace

std::string_view to_string(Role role) {
  for (const auto& [r, name] : kRoles) {
    if (r == role) return name;
  }
  return "PLAIN";
}

std::optional<Role> role_from_string(std::string_view text) {
  for (const auto& [r, name] : kRoles) {
    if (name == text) return r;
  }
  return std::nullopt;
}

LedgerState LedgerState::genesis_state(const GenesisConfig& genesis) {
  LedgerState state;
  state.genesis = genesis;
  state.clock = genesis.genesis_time;
  state.accounts.emplace(genesis.sma, Account{genesis.sma, Wei{}, Role::Sma});
  return state;
}

Wei LedgerState::balance_of(const Address& address) const {
  auto it = accounts.find(address);
  return it == accounts.end() ? Wei{} : it->second.balance;
}

Wei LedgerState::total_balances() const {
  Wei sum;
  for (const auto& [_, account] : accounts) sum += account.balance;
  return sum;
}

Wei LedgerState::total_escrow() const {
  Wei sum;
  for (const auto& [_, a] : auctions) sum += a.held();
  return sum;
}

}  // namespace spectrum
