#include "engage/policy.hpp"

namespace engage {

namespace {

constexpr const char* kStrategyNames[kStrategyCount] = {
    "engage", "attract", "avoid", "ignore",
};

}  // namespace

const char* to_string(EngagementStrategy s) {
  return kStrategyNames[static_cast<int>(s)];
}

std::optional<EngagementStrategy> strategy_from_string(std::string_view name) {
  for (int i = 0; i < kStrategyCount; ++i) {
    if (name == kStrategyNames[i]) return static_cast<EngagementStrategy>(i);
  }
  return std::nullopt;
}

EngagementStrategy select_strategy(const SentimentState& state,
                                   const StrategyTable& table) {
  return table.at(state);
}

}  // namespace engage
