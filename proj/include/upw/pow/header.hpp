// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_POW_HEADER_HPP
#define UPW_POW_HEADER_HPP

#include <cstdint>

#include <upw/util/serialize.hpp>
#include <upw/util/sha256.hpp>
#include <upw/util/u256.hpp>

namespace upw::pow {

/// Canonical byte layout (88 bytes, little-endian fields):
/// version(4) | prev_hash(32) | merkle_root(32) | timestamp(8) | bits(4) | nonce(8)
struct BlockHeader {
    uint32_t version = 1;
    Hash256 prev_hash{};
    Hash256 merkle_root{};
    uint64_t timestamp = 0;
    uint32_t bits = 0; // compact target
    uint64_t nonce = 0;

    static constexpr size_t serialized_size = 88;

    Bytes serialize() const;
    static BlockHeader deserialize(ByteReader& r);

    Hash256 hash() const { return sha256(serialize()); }
    U256 target() const { return U256::from_compact(bits); }

    /// Header hash, read as a 256-bit big-endian integer, strictly below target.
    bool pow_ok() const { return U256::from_be_bytes(hash()) < target(); }

    bool operator==(const BlockHeader&) const = default;
};

/// The miner identity travels in the block body and is bound to the header
/// through merkle_root: id_len(2 BE) | identity | payload.
Bytes frame_body(std::span<const uint8_t> identity, std::span<const uint8_t> payload);

struct FramedBody {
    Bytes identity;
    Bytes payload;
};
FramedBody unframe_body(std::span<const uint8_t> body);

inline Hash256 body_merkle_root(std::span<const uint8_t> framed_body) { return sha256(framed_body); }

} // namespace upw::pow

#endif // UPW_POW_HEADER_HPP
