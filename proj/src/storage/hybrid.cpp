// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/storage/hybrid.hpp>

namespace upw::storage {

Bytes stream_xor(const pre::MessageBlock& key, std::span<const uint8_t> data)
{
    Bytes out(data.begin(), data.end());
    uint64_t counter = 0;
    for (size_t off = 0; off < out.size(); off += 32, ++counter) {
        Sha256 h;
        h.update(std::string("upw.stream"));
        h.update(std::span<const uint8_t>(key));
        ByteWriter w;
        w.u64_be(counter);
        h.update(w.bytes());
        Hash256 pad = h.finalize();
        size_t n = std::min<size_t>(32, out.size() - off);
        for (size_t i = 0; i < n; ++i) out[off + i] ^= pad[i];
    }
    return out;
}

pre::MessageBlock random_file_key(DetRng& rng)
{
    pre::MessageBlock key;
    rng.fill(key.data(), key.size());
    return key;
}

} // namespace upw::storage
