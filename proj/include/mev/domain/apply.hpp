#pragma once

#include <cstddef>
#include <vector>

#include "mev/domain/types.hpp"

namespace mev::domain {

struct AppliedTx {
    State state;
    TxStatus status = TxStatus::rejected;
    Rat fee; // paid to the proposer, zero when rejected
};

// State transition semantics:
//   rejected  — malformed (negative amount, declared gas below base cost) or
//               fee unpayable; state unchanged, no fee.
//   reverted  — fee paid and nonce consumed, instruction effects rolled back.
//               A nonce mismatch also reverts with fee but does not consume
//               the account nonce (the tx cannot consume a nonce that is not
//               current), which is what makes replayed duplicates burn gas.
//   executed  — all instructions applied, fee paid, nonce consumed.
AppliedTx apply_tx(const State& st, const Transaction& tx);

struct AppliedBundle {
    State state;
    bool valid = false;
};

// Atomic: valid iff every tx executes; a valid bundle additionally pays
// coinbase_payment from the first tx's sender to the proposer. Invalid
// bundles leave the state untouched.
AppliedBundle apply_bundle(const State& st, const Bundle& b);

// Priced balance change of all accounts owned by `player` between two states
// sharing a pricing vector.
Rat delta_balance(PlayerId player, const State& before, const State& after);

// True iff neither sequential application order is a valid transition.
bool bundles_compete(const State& st, const Bundle& a, const Bundle& b);

// Every permutation yields a valid transition with the same final state.
// Factorial enumeration; refuses lists longer than max_len.
bool order_invariant_valid(const State& st, const std::vector<Bundle>& bundles,
                           std::size_t max_len = 6);

// b competes with b_ref and extracts less for its sender than b_ref does.
bool is_partial_extraction(const State& st, const Bundle& b, const Bundle& b_ref);

// Gas boundaries of the instruction set. Claims of unknown opportunities
// contribute zero here and revert at execution.
Gas instruction_base_gas(const Instruction& ix, const State& st);
Gas tx_base_gas(const Transaction& tx, const State& st);

// Constant-product output with floor rounding; exact integer arithmetic.
std::int64_t swap_output(std::int64_t reserve_in, std::int64_t reserve_out, std::int64_t amount_in);

} // namespace mev::domain
