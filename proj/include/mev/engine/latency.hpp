#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mev/domain/types.hpp"
#include "mev/util/rng.hpp"

namespace mev::engine {

using namespace mev::domain;

// Directed weighted message-delay graph. Players may own several nodes; the
// effective delay between two parties is the minimum shortest-path weight
// over their owned node pairs (so delays need not be symmetric).
struct LatencyGraph {
    struct Edge {
        std::string from;
        std::string to;
        Rat ms;
    };
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::string sequencer_node;
    std::map<std::string, PlayerId> node_owner;

    void validate(const std::vector<PlayerId>& players) const;
};

// All-pairs shortest paths over a LatencyGraph, queried by node or player.
// Unreachable pairs yield nullopt (messages never arrive).
class LatencyMap {
public:
    explicit LatencyMap(const LatencyGraph& g);

    std::optional<Rat> between_nodes(const std::string& from, const std::string& to) const;
    std::optional<Rat> player_to_sequencer(PlayerId p) const;
    std::optional<Rat> player_to_player(PlayerId from, PlayerId to) const;

    // Symmetric placement: every player has the same delay to the sequencer
    // and the same sorted multiset of delays to the other players.
    bool players_symmetric(const std::vector<PlayerId>& players) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::map<PlayerId, std::vector<std::size_t>> owned_;
    std::size_t sequencer_ = 0;
    std::vector<std::vector<std::optional<Rat>>> dist_;

    std::optional<Rat> set_to_set(const std::vector<std::size_t>& from,
                                  const std::vector<std::size_t>& to) const;
};

// Block seal time distribution with strictly positive support.
struct BlockTimer {
    enum class Kind { fixed, exponential, uniform };
    Kind kind = Kind::fixed;
    Rat a; // fixed: the interval; exponential: the mean; uniform: lower bound
    Rat b; // uniform: upper bound

    void validate() const;
    Rat mean() const;
    Rat draw(DetRng& rng) const;
};

// Non-decreasing step function of time (opportunity value as seen by a
// player). Value is 0 before the first step.
struct StepPath {
    std::vector<std::pair<Rat, std::int64_t>> steps;

    void validate() const;
    std::int64_t value_at(const Rat& t) const;
};

// Per-action external costs (all ≥ 0). Recognized kinds: latency_upgrade,
// extra_node, per_spam_tx, mempool_view.
struct ExternalCostTable {
    std::map<std::string, Rat> costs;

    void validate() const;
    Rat cost_of(const std::string& kind) const;
};

} // namespace mev::engine
