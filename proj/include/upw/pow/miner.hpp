// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_POW_MINER_HPP
#define UPW_POW_MINER_HPP

#include <functional>

#include <upw/pow/chain.hpp>

namespace upw::pow {

struct MineResult {
    enum class Status { Found, Interrupted, BudgetExhausted, UnknownParent };
    Status status;
    BlockHeader header;       // valid when Found
    uint64_t hashes_used = 0; // exact hash invocations consumed
};

/// Interrupt source, polled once per nonce before hashing. Empty = never.
using InterruptFn = std::function<bool()>;

/// Nonce scan from nonce_start upward against store.expected_bits(parent).
/// Workers can split the search space with disjoint nonce_start ranges.
MineResult mine_block(const ChainStore& store, const Hash256& parent,
                      const Hash256& body_root, uint64_t timestamp, uint64_t budget,
                      const InterruptFn& interrupted = {}, HashMeter* meter = nullptr,
                      uint64_t nonce_start = 0);

/// Algorithm-shaped convenience: frames (identity, payload) into a body,
/// mines on it, and hands back the body to broadcast with the header.
struct MinedBlock {
    MineResult result;
    Bytes body;
};
MinedBlock mine_block_with_identity(const ChainStore& store, const Hash256& parent,
                                    std::span<const uint8_t> identity,
                                    std::span<const uint8_t> payload, uint64_t timestamp,
                                    uint64_t budget, const InterruptFn& interrupted = {},
                                    HashMeter* meter = nullptr);

} // namespace upw::pow

#endif // UPW_POW_MINER_HPP
