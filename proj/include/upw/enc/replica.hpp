// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_ENC_REPLICA_HPP
#define UPW_ENC_REPLICA_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <upw/util/serialize.hpp>
#include <upw/util/sha256.hpp>

namespace upw::enc {

struct CorruptReplica : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Segment {
    Hash256 block_hash;
    uint64_t first_index = 0;

    bool operator==(const Segment&) const = default;
};

/// Sealed replica of one source chunk. On-disk layout (big-endian integers):
///   "UPW1" | version(1) | hash_alg(1) | difficulty_L(1) | pad_bits(1)
///   | node_id_len(2) | node_id | segment_count(4)
///   | segments{block_hash(32), first_index(8)} | symbol_count(8)
///   | nonces(8 each) | trailer(32) = sha256 of all preceding bytes
struct ReplicaFile {
    static constexpr uint8_t kFormatVersion = 1;
    static constexpr uint8_t kHashAlgSha256 = 1;

    uint8_t format_version = kFormatVersion;
    uint8_t hash_alg = kHashAlgSha256;
    uint8_t difficulty_L = 0;
    uint8_t pad_bits = 0;
    Bytes node_id;
    std::vector<Segment> segments;
    std::vector<uint64_t> nonces;

    Bytes serialize() const;
    static ReplicaFile parse(std::span<const uint8_t> data);

    uint64_t symbol_count() const { return nonces.size(); }

    /// Block hash active at a symbol index: the last segment starting at or
    /// before it.
    const Hash256& active_block(uint64_t index) const;

    bool operator==(const ReplicaFile&) const = default;
};

} // namespace upw::enc

#endif // UPW_ENC_REPLICA_HPP
