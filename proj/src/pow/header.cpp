// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/pow/header.hpp>

namespace upw::pow {

Bytes BlockHeader::serialize() const
{
    ByteWriter w;
    w.u32_le(version);
    w.raw(prev_hash);
    w.raw(merkle_root);
    w.u64_le(timestamp);
    w.u32_le(bits);
    w.u64_le(nonce);
    return w.take();
}

BlockHeader BlockHeader::deserialize(ByteReader& r)
{
    BlockHeader h;
    h.version = r.u32_le();
    h.prev_hash = r.hash();
    h.merkle_root = r.hash();
    h.timestamp = r.u64_le();
    h.bits = r.u32_le();
    h.nonce = r.u64_le();
    return h;
}

Bytes frame_body(std::span<const uint8_t> identity, std::span<const uint8_t> payload)
{
    if (identity.size() > 0xffff) throw std::invalid_argument("identity too long");
    ByteWriter w;
    w.u16_be(static_cast<uint16_t>(identity.size()));
    w.raw(identity);
    w.raw(payload);
    return w.take();
}

FramedBody unframe_body(std::span<const uint8_t> body)
{
    ByteReader r(body);
    FramedBody out;
    uint16_t id_len = r.u16_be();
    out.identity = r.raw(id_len);
    out.payload = r.raw(r.remaining());
    return out;
}

} // namespace upw::pow
