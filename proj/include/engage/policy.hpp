// policy.hpp — the (polarity x attention) -> strategy lookup table.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "engage/core.hpp"

namespace engage {

enum class EngagementStrategy : int {
  Engage = 0,
  Attract,
  Avoid,
  Ignore,
};

inline constexpr int kStrategyCount = 4;

const char* to_string(EngagementStrategy s);
std::optional<EngagementStrategy> strategy_from_string(std::string_view name);

// Total mapping from all 8 sentiment states to a strategy. Defaults:
//   (Positive, attentive)       -> Engage
//   (Positive, inattentive)     -> Attract
//   (NegativeStrong, attentive) -> Avoid
//   (NegativeStrong, inatt.)    -> Ignore
//   (NegativeSoft, attentive)   -> Attract
//   (NegativeSoft, inatt.)      -> Ignore
//   (Neutral, attentive)        -> Attract
//   (Neutral, inattentive)      -> Ignore
class StrategyTable {
 public:
  StrategyTable();  // defaults above

  EngagementStrategy at(const SentimentState& s) const {
    return cells_[s.index()];
  }
  void set(const SentimentState& s, EngagementStrategy strategy) {
    cells_[s.index()] = strategy;
  }

  bool operator==(const StrategyTable&) const = default;

 private:
  std::array<EngagementStrategy, kSentimentStateCount> cells_;
};

EngagementStrategy select_strategy(const SentimentState& s,
                                   const StrategyTable& table);

}  // namespace engage
