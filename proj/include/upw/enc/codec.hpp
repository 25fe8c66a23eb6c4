// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_ENC_CODEC_HPP
#define UPW_ENC_CODEC_HPP

#include <upw/enc/replica.hpp>
#include <upw/util/rng.hpp>

namespace upw::enc {

struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BindingMode {
    StaticBlock, // seal the whole stream against the first block hash
    FollowChain, // each chain_feed entry opens a new segment
};

struct EncodingParams {
    unsigned difficulty_L = 8; // bits sealed per symbol, 1..16
    Bytes node_id;
    BindingMode binding_mode = BindingMode::FollowChain;

    void validate() const
    {
        if (difficulty_L < 1 || difficulty_L > 16)
            throw EncodingError("difficulty_L must be in 1..16");
        if (node_id.empty()) throw EncodingError("node_id must be non-empty");
    }
};

/// Source bytes as a stream of L-bit symbols, MSB-first, zero-padded at the
/// tail. Returns the symbols and the pad bit count.
std::pair<std::vector<uint16_t>, unsigned> symbolize(std::span<const uint8_t> source, unsigned L);
Bytes desymbolize(std::span<const uint16_t> symbols, unsigned L, unsigned pad_bits);

/// Last L bits of Hash(node_id | block_hash | index(8 LE) | nonce(8 LE)).
uint16_t sealed_value(std::span<const uint8_t> node_id, const Hash256& block_hash,
                      uint64_t index, uint64_t nonce, unsigned L, HashMeter* meter = nullptr);

/// Smallest nonce (from 0 upward) whose sealed value equals symbol.
uint64_t seal_symbol(std::span<const uint8_t> node_id, const Hash256& block_hash,
                     uint64_t index, uint16_t symbol, unsigned L, HashMeter* meter = nullptr);

struct EncodeResult {
    ReplicaFile replica;
    uint64_t hash_count = 0;
};

/// chain_feed entries are (block_hash, available-from symbol index), strictly
/// increasing, first at 0. StaticBlock mode uses only the first entry.
EncodeResult encode(std::span<const uint8_t> source, const EncodingParams& params,
                    std::span<const Segment> chain_feed, HashMeter* meter = nullptr);

struct DecodeResult {
    Bytes data;
    uint64_t hash_count = 0; // exactly one per symbol
};

DecodeResult decode(const ReplicaFile& replica, HashMeter* meter = nullptr);

/// Expected sealing cost: symbols * 2^L hash operations.
uint64_t encode_cost_model(unsigned L, uint64_t symbols);

struct AsymmetryRow {
    unsigned L;
    double encode_seconds;
    double decode_seconds;
    uint64_t encode_hashes;
    uint64_t decode_hashes;
};

std::vector<AsymmetryRow> bench_asymmetry(unsigned L_min, unsigned L_max, size_t source_size,
                                          uint64_t seed);

} // namespace upw::enc

#endif // UPW_ENC_CODEC_HPP
