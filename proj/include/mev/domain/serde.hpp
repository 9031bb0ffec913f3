#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mev/domain/types.hpp"

namespace mev::domain {

using json = nlohmann::json;

// Integers with magnitude below 2^53 serialize as JSON numbers; anything
// larger, and every non-integral rational, serializes as a canonical string
// ("n" or "p/q") so round-trips are exact.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);

json to_json(const Instruction& ix);
Instruction instruction_from_json(const json& j);

json to_json(const Transaction& tx);
Transaction transaction_from_json(const json& j);

// Mempool-sourced txs are stored as indices into the bundle's tx list.
json to_json(const Bundle& b);
Bundle bundle_from_json(const json& j);

json to_json(const State& st);
State state_from_json(const json& j); // validates invariants

json to_json(const Block& blk);

// Sorted keys, 2-space indent, trailing newline.
std::string canonical_dump(const json& j);

} // namespace mev::domain
