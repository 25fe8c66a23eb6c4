// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/enc/codec.hpp>

#include <chrono>

namespace upw::enc {

std::pair<std::vector<uint16_t>, unsigned> symbolize(std::span<const uint8_t> source, unsigned L)
{
    uint64_t total_bits = uint64_t(source.size()) * 8;
    uint64_t symbols = (total_bits + L - 1) / L;
    unsigned pad = static_cast<unsigned>(symbols * L - total_bits);

    std::vector<uint16_t> out(symbols, 0);
    uint64_t bit = 0;
    for (uint8_t byte : source) {
        for (int i = 7; i >= 0; --i, ++bit)
            out[bit / L] = static_cast<uint16_t>(out[bit / L] << 1 | ((byte >> i) & 1));
    }
    if (symbols > 0) out[symbols - 1] = static_cast<uint16_t>(out[symbols - 1] << pad);
    return {std::move(out), pad};
}

Bytes desymbolize(std::span<const uint16_t> symbols, unsigned L, unsigned pad_bits)
{
    uint64_t total_bits = uint64_t(symbols.size()) * L - pad_bits;
    Bytes out(total_bits / 8, 0);
    uint64_t bit = 0;
    for (uint16_t sym : symbols) {
        for (int i = int(L) - 1; i >= 0 && bit < total_bits; --i, ++bit)
            out[bit / 8] = static_cast<uint8_t>(out[bit / 8] << 1 | ((sym >> i) & 1));
    }
    return out;
}

namespace {

/// Reusable preimage buffer: node_id | block_hash | index(8 LE) | nonce(8 LE).
struct SealPreimage {
    Bytes buf;
    size_t nonce_off;

    SealPreimage(std::span<const uint8_t> node_id, const Hash256& block_hash, uint64_t index)
    {
        buf.resize(node_id.size() + 32 + 16);
        std::memcpy(buf.data(), node_id.data(), node_id.size());
        std::memcpy(buf.data() + node_id.size(), block_hash.data(), 32);
        for (int i = 0; i < 8; ++i)
            buf[node_id.size() + 32 + i] = static_cast<uint8_t>(index >> (8 * i));
        nonce_off = node_id.size() + 40;
    }

    void set_nonce(uint64_t nonce)
    {
        for (int i = 0; i < 8; ++i)
            buf[nonce_off + i] = static_cast<uint8_t>(nonce >> (8 * i));
    }
};

inline uint16_t last_bits(const Hash256& d, unsigned L)
{
    return static_cast<uint16_t>((uint16_t(d[30]) << 8 | d[31]) & ((1u << L) - 1));
}

} // namespace

uint16_t sealed_value(std::span<const uint8_t> node_id, const Hash256& block_hash,
                      uint64_t index, uint64_t nonce, unsigned L, HashMeter* meter)
{
    SealPreimage p(node_id, block_hash, index);
    p.set_nonce(nonce);
    meter_update(meter);
    return last_bits(sha256(p.buf), L);
}

uint64_t seal_symbol(std::span<const uint8_t> node_id, const Hash256& block_hash,
                     uint64_t index, uint16_t symbol, unsigned L, HashMeter* meter)
{
    SealPreimage p(node_id, block_hash, index);
    uint64_t nonce = 0;
    for (;;) {
        p.set_nonce(nonce);
        meter_update(meter);
        if (last_bits(sha256(p.buf), L) == symbol) return nonce;
        if (++nonce == 0) throw EncodingError("nonce space exhausted");
    }
}

EncodeResult encode(std::span<const uint8_t> source, const EncodingParams& params,
                    std::span<const Segment> chain_feed, HashMeter* meter)
{
    params.validate();
    if (source.empty()) throw EncodingError("empty source");
    if (chain_feed.empty()) throw EncodingError("empty chain feed");
    if (chain_feed.front().first_index != 0)
        throw EncodingError("chain feed must provide a block before symbol 0");
    for (size_t i = 1; i < chain_feed.size(); ++i)
        if (chain_feed[i].first_index <= chain_feed[i - 1].first_index)
            throw EncodingError("chain feed indices not strictly increasing");

    auto [symbols, pad] = symbolize(source, params.difficulty_L);

    ReplicaFile replica;
    replica.difficulty_L = static_cast<uint8_t>(params.difficulty_L);
    replica.pad_bits = static_cast<uint8_t>(pad);
    replica.node_id = params.node_id;
    if (params.binding_mode == BindingMode::StaticBlock) {
        replica.segments = {Segment{chain_feed.front().block_hash, 0}};
    } else {
        for (const Segment& s : chain_feed) {
            if (s.first_index >= symbols.size()) break;
            replica.segments.push_back(s);
        }
    }

    HashMeter local;
    replica.nonces.resize(symbols.size());
    size_t seg = 0;
    for (uint64_t i = 0; i < symbols.size(); ++i) {
        while (seg + 1 < replica.segments.size() && replica.segments[seg + 1].first_index <= i)
            ++seg;
        replica.nonces[i] = seal_symbol(replica.node_id, replica.segments[seg].block_hash, i,
                                        symbols[i], params.difficulty_L, &local);
    }
    meter_update(meter, local.count);
    return {std::move(replica), local.count};
}

DecodeResult decode(const ReplicaFile& replica, HashMeter* meter)
{
    HashMeter local;
    std::vector<uint16_t> symbols(replica.nonces.size());
    for (uint64_t i = 0; i < replica.nonces.size(); ++i)
        symbols[i] = sealed_value(replica.node_id, replica.active_block(i), i, replica.nonces[i],
                                  replica.difficulty_L, &local);
    Bytes data = desymbolize(symbols, replica.difficulty_L, replica.pad_bits);
    meter_update(meter, local.count);
    return {std::move(data), local.count};
}

uint64_t encode_cost_model(unsigned L, uint64_t symbols)
{
    if (L < 1) throw EncodingError("difficulty must be >= 1");
    return symbols << L;
}

std::vector<AsymmetryRow> bench_asymmetry(unsigned L_min, unsigned L_max, size_t source_size,
                                          uint64_t seed)
{
    using Clock = std::chrono::steady_clock;
    DetRng rng(seed);
    Bytes source = rng.bytes(source_size);
    Hash256 block = sha256(rng.bytes(32));

    std::vector<AsymmetryRow> rows;
    for (unsigned L = L_min; L <= L_max; ++L) {
        EncodingParams params{L, to_bytes("bench"), BindingMode::StaticBlock};
        Segment feed{block, 0};

        auto t0 = Clock::now();
        EncodeResult enc = encode(source, params, {&feed, 1});
        auto t1 = Clock::now();
        DecodeResult dec = decode(enc.replica);
        auto t2 = Clock::now();
        if (dec.data != source) throw EncodingError("bench roundtrip mismatch");

        rows.push_back({L, std::chrono::duration<double>(t1 - t0).count(),
                        std::chrono::duration<double>(t2 - t1).count(), enc.hash_count,
                        dec.hash_count});
    }
    return rows;
}

} // namespace upw::enc
