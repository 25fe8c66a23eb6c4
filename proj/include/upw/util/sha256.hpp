// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_UTIL_SHA256_HPP
#define UPW_UTIL_SHA256_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include <upw/util/hex.hpp>

namespace upw {

using Hash256 = std::array<uint8_t, 32>;

inline std::string to_hex(const Hash256& h) { return to_hex(std::span<const uint8_t>(h)); }

inline Hash256 hash_from_hex(const std::string& s)
{
    auto v = from_hex(s);
    if (v.size() != 32) throw std::invalid_argument("expected 32-byte hex digest");
    Hash256 h;
    std::memcpy(h.data(), v.data(), 32);
    return h;
}

/// Streaming SHA-256. Uses the SHA-NI instruction set when the CPU has it.
class Sha256 {
public:
    Sha256() { reset(); }

    Sha256& reset();
    Sha256& update(std::span<const uint8_t> data);
    Sha256& update(const std::string& s)
    {
        return update(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
    }
    void finalize(Hash256& out);
    Hash256 finalize()
    {
        Hash256 h;
        finalize(h);
        return h;
    }

private:
    uint32_t state_[8];
    uint8_t buf_[64];
    uint64_t total_bytes_;
};

inline Hash256 sha256(std::span<const uint8_t> data)
{
    Sha256 h;
    h.update(data);
    return h.finalize();
}

inline Hash256 sha256(const std::string& s)
{
    Sha256 h;
    h.update(s);
    return h.finalize();
}

/// Exact hash-invocation counter. The encoding, PoRep and mining paths report
/// costs in hash operations, so every metered digest goes through one of these.
struct HashMeter {
    uint64_t count = 0;
    void merge(const HashMeter& other) { count += other.count; }
};

inline void meter_update(HashMeter* m, uint64_t n = 1)
{
    if (m) m->count += n;
}

} // namespace upw

#endif // UPW_UTIL_SHA256_HPP
