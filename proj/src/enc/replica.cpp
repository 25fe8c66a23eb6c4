// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/enc/replica.hpp>

namespace upw::enc {

namespace {
constexpr char kMagic[4] = {'U', 'P', 'W', '1'};
}

Bytes ReplicaFile::serialize() const
{
    ByteWriter w;
    w.raw(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kMagic), 4));
    w.u8(format_version);
    w.u8(hash_alg);
    w.u8(difficulty_L);
    w.u8(pad_bits);
    w.u16_be(static_cast<uint16_t>(node_id.size()));
    w.raw(node_id);
    w.u32_be(static_cast<uint32_t>(segments.size()));
    for (const Segment& s : segments) {
        w.raw(s.block_hash);
        w.u64_be(s.first_index);
    }
    w.u64_be(nonces.size());
    for (uint64_t n : nonces) w.u64_be(n);
    Hash256 trailer = sha256(w.bytes());
    w.raw(trailer);
    return w.take();
}

ReplicaFile ReplicaFile::parse(std::span<const uint8_t> data)
{
    try {
        if (data.size() < 32) throw CorruptReplica("replica too short");
        Hash256 trailer = sha256(data.subspan(0, data.size() - 32));
        ByteReader r(data);

        ReplicaFile f;
        Bytes magic = r.raw(4);
        if (std::memcmp(magic.data(), kMagic, 4) != 0) throw CorruptReplica("bad magic");
        f.format_version = r.u8();
        if (f.format_version != kFormatVersion) throw CorruptReplica("unsupported version");
        f.hash_alg = r.u8();
        if (f.hash_alg != kHashAlgSha256) throw CorruptReplica("unsupported hash algorithm");
        f.difficulty_L = r.u8();
        if (f.difficulty_L < 1 || f.difficulty_L > 16) throw CorruptReplica("difficulty out of range");
        f.pad_bits = r.u8();
        if (f.pad_bits >= f.difficulty_L) throw CorruptReplica("pad_bits out of range");
        f.node_id = r.raw(r.u16_be());
        if (f.node_id.empty()) throw CorruptReplica("empty node id");

        uint32_t seg_count = r.u32_be();
        if (seg_count == 0) throw CorruptReplica("empty segment table");
        f.segments.reserve(seg_count);
        for (uint32_t i = 0; i < seg_count; ++i) {
            Segment s;
            s.block_hash = r.hash();
            s.first_index = r.u64_be();
            if (i == 0 && s.first_index != 0) throw CorruptReplica("first segment must start at 0");
            if (i > 0 && s.first_index <= f.segments.back().first_index)
                throw CorruptReplica("segment indices not strictly increasing");
            f.segments.push_back(s);
        }

        uint64_t symbol_count = r.u64_be();
        if (symbol_count == 0) throw CorruptReplica("no symbols");
        if (f.segments.back().first_index >= symbol_count)
            throw CorruptReplica("segment start beyond symbol stream");
        f.nonces.reserve(symbol_count);
        for (uint64_t i = 0; i < symbol_count; ++i) f.nonces.push_back(r.u64_be());

        Hash256 stored = r.hash();
        if (!r.done()) throw CorruptReplica("trailing bytes");
        if (stored != trailer) throw CorruptReplica("trailer digest mismatch");
        return f;
    } catch (const std::out_of_range&) {
        throw CorruptReplica("truncated replica");
    }
}

const Hash256& ReplicaFile::active_block(uint64_t index) const
{
    // segments are strictly increasing and start at 0
    size_t lo = 0;
    for (size_t i = 1; i < segments.size() && segments[i].first_index <= index; ++i) lo = i;
    return segments[lo].block_hash;
}

} // namespace upw::enc
