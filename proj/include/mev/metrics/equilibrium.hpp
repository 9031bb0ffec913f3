#pragma once

#include <functional>
#include <optional>

#include "mev/engine/stage.hpp"

namespace mev::metrics {

using namespace mev::domain;
using engine::StageGameSpec;
using engine::Strategy;

// Finite strategy menu per player. `shared` applies to every player unless an
// override is present for that player id.
struct StrategyGrid {
    std::vector<Strategy> shared;
    std::map<PlayerId, std::vector<Strategy>> overrides;

    const std::vector<Strategy>& for_player(PlayerId p) const;
    void validate(const std::vector<PlayerId>& players) const;
};

// Expected block gas use under a fixed profile (the block-space cost C).
Rat block_space_cost(const StageGameSpec& spec, const std::vector<Strategy>& profile, int runs,
                     std::uint64_t seed);

// One grid profile with its Monte Carlo evaluation and equilibrium flags.
struct ProfileEval {
    std::vector<std::size_t> choice; // per-player index into that player's menu
    std::vector<Strategy> strategies;
    std::vector<Rat> utilities;  // per player, in spec.players order
    Rat expected_gas;            // block-space cost under this profile
    bool symmetric = false;      // every player picked the same strategy
    bool epsilon_ne = false;
    bool sybil_resistant = false; // filled by price_of_mev
    std::string note;             // diagnostics (why a flag was denied)
};

// Evaluates every profile in the grid product (common random numbers across
// profiles) and flags the ε-Nash ones: no single-player grid deviation gains
// more than ε. Errors when the product exceeds `profile_cap`.
std::vector<ProfileEval> evaluate_profiles(const StageGameSpec& spec, const StrategyGrid& grid,
                                           const Rat& epsilon, int runs, std::uint64_t seed,
                                           std::size_t profile_cap = 100000);

// The ε-Nash profiles only (same enumeration order).
std::vector<ProfileEval> find_epsilon_ne(const StageGameSpec& spec, const StrategyGrid& grid,
                                         const Rat& epsilon, int runs, std::uint64_t seed,
                                         std::size_t profile_cap = 100000);

// Extends a spec with one additional player cloning `parent`: duplicated
// accounts (same balances and nonces), duplicated capabilities, and latency
// nodes co-located with the parent's (zero-delay links between the copies).
StageGameSpec add_clone(const StageGameSpec& base, PlayerId parent);

// n ↦ spec with n players; player counts below the base size are rejected.
using SpecFamily = std::function<StageGameSpec(int)>;
// n ↦ strategy profile for the n-player spec.
using ProfileFamily = std::function<std::vector<Strategy>(int)>;

// family(base.players.size()) = base; larger n clone player `parent` (clones
// of clones stack at the same latency position).
SpecFamily symmetric_family(const StageGameSpec& base, PlayerId parent);

// Checks the identity-split inequality at player count n: for every player i
// of the n-player game and every j ≠ i of the (n+1)-player game,
//   u_i(φ(n)) ≥ u_i(φ(n+1)) + u_j(φ(n+1)) − ε,
// i.e. no player could gain by operating as two of the n+1 identities.
// Preconditions (verified first, error otherwise): φ(n) and φ(n+1) are ε-Nash
// under the per-player menus the grid assigns to the corresponding specs.
bool check_sybil_resistance(const SpecFamily& specs, const ProfileFamily& profiles,
                            const StrategyGrid& grid, int n, const Rat& epsilon, int runs,
                            std::uint64_t seed);

// Cheapest single valid bundle (by total gas) that leaves no player any
// strictly profitable bundle afterwards. Errors if the state is already null
// or no candidate nulls it.
struct NullCost {
    Gas gas = 0;
    Bundle witness;
};
NullCost min_null_state_cost(const State& st, const std::vector<search::PlayerCapabilities>& caps);

struct EquilibriumReport {
    std::vector<ProfileEval> profiles; // every grid profile of the base game
    Rat epsilon;
    int runs = 0;
    std::uint64_t seed = 0;
    int base_players = 0;
    int sybil_n_max = 0; // clone checks cover player counts up to this

    Gas null_cost_gas = 0; // denominator: cheapest nulling bundle
    Bundle null_witness;

    std::optional<Rat> pomev; // max sybil-resistant-equilibrium cost / null cost
    std::optional<Rat> poa;   // max ε-Nash cost / min profile cost
    bool poa_degenerate = false; // some profile uses zero block space
    std::string notes;
};

// Full pipeline: evaluate the grid, flag ε-Nash profiles, run clone checks on
// the symmetric ones up to `sybil_n_max` players, price the denominator, and
// form the two ratios. `pomev` is absent when no profile passes the clone
// checks; `poa` is absent when the cheapest profile uses zero gas.
EquilibriumReport price_of_mev(const StageGameSpec& spec, const StrategyGrid& grid,
                               const Rat& epsilon, int runs, std::uint64_t seed, int sybil_n_max,
                               std::size_t profile_cap = 100000);

} // namespace mev::metrics
