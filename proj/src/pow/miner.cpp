// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/pow/miner.hpp>

namespace upw::pow {

MineResult mine_block(const ChainStore& store, const Hash256& parent,
                      const Hash256& body_root, uint64_t timestamp, uint64_t budget,
                      const InterruptFn& interrupted, HashMeter* meter, uint64_t nonce_start)
{
    if (!store.contains(parent))
        return {MineResult::Status::UnknownParent, {}, 0};
    if (budget == 0) throw std::invalid_argument("mine_block: budget must be > 0");

    BlockHeader header;
    header.prev_hash = parent;
    header.merkle_root = body_root;
    header.timestamp = timestamp;
    header.bits = store.expected_bits(parent);
    const U256 target = header.target();

    Bytes preimage = header.serialize();
    uint64_t used = 0;
    uint64_t nonce = nonce_start;
    while (used < budget) {
        if (interrupted && interrupted()) {
            meter_update(meter, used);
            return {MineResult::Status::Interrupted, {}, used};
        }
        for (int i = 0; i < 8; ++i)
            preimage[80 + i] = static_cast<uint8_t>(nonce >> (8 * i));
        Hash256 h = sha256(preimage);
        ++used;
        if (U256::from_be_bytes(h) < target) {
            header.nonce = nonce;
            meter_update(meter, used);
            return {MineResult::Status::Found, header, used};
        }
        ++nonce;
    }
    meter_update(meter, used);
    return {MineResult::Status::BudgetExhausted, {}, used};
}

MinedBlock mine_block_with_identity(const ChainStore& store, const Hash256& parent,
                                    std::span<const uint8_t> identity,
                                    std::span<const uint8_t> payload, uint64_t timestamp,
                                    uint64_t budget, const InterruptFn& interrupted,
                                    HashMeter* meter)
{
    Bytes body = frame_body(identity, payload);
    MineResult res =
        mine_block(store, parent, body_merkle_root(body), timestamp, budget, interrupted, meter);
    return {std::move(res), std::move(body)};
}

} // namespace upw::pow
