#pragma once

#include "mev/scenario/scenario.hpp"

namespace mev::scenario {

// Built-in scenarios: the analysis fixtures (uni-agent auction, censoring
// dictator, spam under random ordering, gas-price war, sealed full bids,
// quantity competition) plus chain-style mechanism/privacy combinations.
std::vector<std::string> preset_names();
Scenario make_preset(const std::string& name);

// Spam game at a given player count (the "spam-random" preset is size 2).
Scenario make_spam_preset(int players);

// Quantity-competition game at a given player count ("cournot-pool" is
// size 2) and its per-count symmetric equilibrium profile on the preset's
// two-point grid: duopoly sells 330, triopoly and larger sell 200.
Scenario make_cournot_preset(int players);
std::vector<engine::Strategy> cournot_symmetric_profile(int players);

} // namespace mev::scenario
