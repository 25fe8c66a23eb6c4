// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_UTIL_RNG_HPP
#define UPW_UTIL_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace upw {

/// Seeded RNG with uniform draws implemented by rejection, so streams are
/// identical across standard libraries. All randomness in the workspace
/// flows from one of these; nothing reads the wall clock or /dev/urandom.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). bound must be > 0.
    uint64_t uniform(uint64_t bound)
    {
        if (bound == 0) throw std::invalid_argument("uniform: bound must be > 0");
        uint64_t threshold = (~bound + 1) % bound; // 2^64 mod bound
        for (;;) {
            uint64_t v = engine_();
            if (v >= threshold) return v % bound;
        }
    }

    /// Uniform in [lo, hi] inclusive.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + uniform(hi - lo + 1); }

    std::vector<uint8_t> bytes(size_t n)
    {
        std::vector<uint8_t> out(n);
        fill(out.data(), n);
        return out;
    }

    void fill(uint8_t* p, size_t n)
    {
        size_t i = 0;
        while (i + 8 <= n) {
            uint64_t v = engine_();
            for (int b = 0; b < 8; ++b) p[i++] = static_cast<uint8_t>(v >> (8 * b));
        }
        if (i < n) {
            uint64_t v = engine_();
            while (i < n) {
                p[i++] = static_cast<uint8_t>(v);
                v >>= 8;
            }
        }
    }

    /// Split off an independent child stream, deterministic in (parent seed, label).
    DetRng fork(uint64_t label)
    {
        uint64_t s = engine_();
        return DetRng(s ^ (label * 0x9e3779b97f4a7c15ULL));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace upw

#endif // UPW_UTIL_RNG_HPP
