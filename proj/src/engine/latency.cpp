#include "mev/engine/latency.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "mev/util/error.hpp"

namespace mev::engine {

void LatencyGraph::validate(const std::vector<PlayerId>& players) const
{
    std::set<std::string> known(nodes.begin(), nodes.end());
    if (known.size() != nodes.size()) throw validation_error("duplicate latency node name");
    if (!known.count(sequencer_node))
        throw validation_error("sequencer node '" + sequencer_node + "' is not in the node list");
    for (const auto& e : edges) {
        if (!known.count(e.from))
            throw validation_error("latency edge references unknown node '" + e.from + "'");
        if (!known.count(e.to))
            throw validation_error("latency edge references unknown node '" + e.to + "'");
        if (e.ms < 0) throw validation_error("latency edge weight must be non-negative");
    }
    for (const auto& [name, owner] : node_owner)
        if (!known.count(name))
            throw validation_error("node owner entry references unknown node '" + name + "'");
    for (PlayerId p : players) {
        bool owns = false;
        for (const auto& [name, owner] : node_owner)
            if (owner == p) owns = true;
        if (!owns)
            throw validation_error("player " + std::to_string(p) + " owns no latency node");
    }
}

LatencyMap::LatencyMap(const LatencyGraph& g)
{
    names_ = g.nodes;
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    auto seq_it = index_.find(g.sequencer_node);
    if (seq_it == index_.end()) throw validation_error("sequencer node missing from graph");
    sequencer_ = seq_it->second;
    for (const auto& [name, owner] : g.node_owner) owned_[owner].push_back(index_.at(name));
    for (auto& [p, v] : owned_) std::sort(v.begin(), v.end());

    const std::size_t n = names_.size();
    std::vector<std::vector<std::pair<std::size_t, Rat>>> adj(n);
    for (const auto& e : g.edges) adj[index_.at(e.from)].emplace_back(index_.at(e.to), e.ms);

    dist_.assign(n, std::vector<std::optional<Rat>>(n));
    for (std::size_t src = 0; src < n; ++src) {
        // Dijkstra with exact rational weights
        auto& d = dist_[src];
        d[src] = Rat(0);
        using Entry = std::pair<Rat, std::size_t>;
        auto cmp = [](const Entry& a, const Entry& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second > b.second;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
        pq.push({Rat(0), src});
        std::vector<bool> done(n, false);
        while (!pq.empty()) {
            auto [w, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = true;
            for (const auto& [v, ew] : adj[u]) {
                Rat cand = w + ew;
                if (!d[v] || cand < *d[v]) {
                    d[v] = cand;
                    pq.push({cand, v});
                }
            }
        }
    }
}

std::optional<Rat> LatencyMap::between_nodes(const std::string& from, const std::string& to) const
{
    auto f = index_.find(from);
    auto t = index_.find(to);
    if (f == index_.end() || t == index_.end())
        throw validation_error("unknown latency node in distance query");
    return dist_[f->second][t->second];
}

std::optional<Rat> LatencyMap::set_to_set(const std::vector<std::size_t>& from,
                                          const std::vector<std::size_t>& to) const
{
    std::optional<Rat> best;
    for (std::size_t f : from)
        for (std::size_t t : to) {
            const auto& d = dist_[f][t];
            if (d && (!best || *d < *best)) best = d;
        }
    return best;
}

std::optional<Rat> LatencyMap::player_to_sequencer(PlayerId p) const
{
    auto it = owned_.find(p);
    if (it == owned_.end()) return std::nullopt;
    return set_to_set(it->second, {sequencer_});
}

std::optional<Rat> LatencyMap::player_to_player(PlayerId from, PlayerId to) const
{
    auto f = owned_.find(from);
    auto t = owned_.find(to);
    if (f == owned_.end() || t == owned_.end()) return std::nullopt;
    return set_to_set(f->second, t->second);
}

bool LatencyMap::players_symmetric(const std::vector<PlayerId>& players) const
{
    if (players.size() < 2) return true;
    std::optional<Rat> to_seq;
    std::vector<Rat> reference;
    for (std::size_t i = 0; i < players.size(); ++i) {
        auto d = player_to_sequencer(players[i]);
        if (!d) return false;
        if (i == 0)
            to_seq = d;
        else if (*d != *to_seq)
            return false;
        std::vector<Rat> peers;
        for (std::size_t j = 0; j < players.size(); ++j) {
            if (i == j) continue;
            auto pd = player_to_player(players[i], players[j]);
            if (!pd) return false;
            peers.push_back(*pd);
        }
        std::sort(peers.begin(), peers.end());
        if (i == 0)
            reference = peers;
        else if (peers != reference)
            return false;
    }
    return true;
}

void BlockTimer::validate() const
{
    switch (kind) {
    case Kind::fixed:
        if (a <= 0) throw validation_error("fixed seal interval must be positive");
        break;
    case Kind::exponential:
        if (a <= 0) throw validation_error("exponential seal mean must be positive");
        break;
    case Kind::uniform:
        if (a <= 0 || b < a) throw validation_error("uniform seal bounds need 0 < a <= b");
        break;
    }
}

Rat BlockTimer::mean() const
{
    switch (kind) {
    case Kind::fixed:
    case Kind::exponential:
        return a;
    case Kind::uniform:
        return (a + b) / 2;
    }
    throw error("unreachable timer kind");
}

Rat BlockTimer::draw(DetRng& rng) const
{
    switch (kind) {
    case Kind::fixed:
        return a;
    case Kind::exponential:
        return rng.exponential(a);
    case Kind::uniform:
        return rng.uniform(a, b);
    }
    throw error("unreachable timer kind");
}

void StepPath::validate() const
{
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].second < 0) throw validation_error("value path must be non-negative");
        if (i > 0) {
            if (steps[i].first < steps[i - 1].first)
                throw validation_error("value path times must be ascending");
            if (steps[i].second < steps[i - 1].second)
                throw validation_error("value path must be non-decreasing");
        }
    }
}

std::int64_t StepPath::value_at(const Rat& t) const
{
    std::int64_t v = 0;
    for (const auto& [time, value] : steps) {
        if (time > t) break;
        v = value;
    }
    return v;
}

void ExternalCostTable::validate() const
{
    for (const auto& [kind, c] : costs)
        if (c < 0) throw validation_error("external cost '" + kind + "' must be non-negative");
}

Rat ExternalCostTable::cost_of(const std::string& kind) const
{
    auto it = costs.find(kind);
    return it == costs.end() ? Rat(0) : it->second;
}

} // namespace mev::engine
