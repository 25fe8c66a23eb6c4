// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_UTIL_U256_HPP
#define UPW_UTIL_U256_HPP

#include <array>
#include <compare>
#include <cstdint>

#include <upw/util/sha256.hpp>

namespace upw {

/// Unsigned 256-bit integer, little-endian limbs. Covers what difficulty
/// targets need: compare against a hash, compact (nBits) coding, and the
/// retarget product old_target * span / expected_span.
class U256 {
public:
    constexpr U256() : limbs_{0, 0, 0, 0} {}
    constexpr explicit U256(uint64_t v) : limbs_{v, 0, 0, 0} {}

    static U256 from_be_bytes(const Hash256& h)
    {
        U256 r;
        for (int limb = 0; limb < 4; ++limb)
            for (int b = 0; b < 8; ++b)
                r.limbs_[limb] |= uint64_t(h[31 - (limb * 8 + b)]) << (8 * b);
        return r;
    }

    Hash256 to_be_bytes() const
    {
        Hash256 h{};
        for (int limb = 0; limb < 4; ++limb)
            for (int b = 0; b < 8; ++b)
                h[31 - (limb * 8 + b)] = static_cast<uint8_t>(limbs_[limb] >> (8 * b));
        return h;
    }

    static U256 max_value()
    {
        U256 r;
        r.limbs_ = {~0ULL, ~0ULL, ~0ULL, ~0ULL};
        return r;
    }

    bool is_zero() const { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }

    friend std::strong_ordering operator<=>(const U256& a, const U256& b)
    {
        for (int i = 3; i >= 0; --i)
            if (a.limbs_[i] != b.limbs_[i])
                return a.limbs_[i] <=> b.limbs_[i];
        return std::strong_ordering::equal;
    }
    friend bool operator==(const U256& a, const U256& b) = default;

    U256& operator<<=(unsigned shift)
    {
        U256 out;
        unsigned limb_shift = shift / 64, bit_shift = shift % 64;
        for (int i = 3; i >= 0; --i) {
            uint64_t v = 0;
            if (i >= int(limb_shift)) {
                v = limbs_[i - limb_shift] << bit_shift;
                if (bit_shift && i > int(limb_shift))
                    v |= limbs_[i - limb_shift - 1] >> (64 - bit_shift);
            }
            out.limbs_[i] = v;
        }
        *this = out;
        return *this;
    }

    U256& operator>>=(unsigned shift)
    {
        U256 out;
        unsigned limb_shift = shift / 64, bit_shift = shift % 64;
        for (int i = 0; i < 4; ++i) {
            uint64_t v = 0;
            if (i + limb_shift < 4) {
                v = limbs_[i + limb_shift] >> bit_shift;
                if (bit_shift && i + limb_shift + 1 < 4)
                    v |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
            }
            out.limbs_[i] = v;
        }
        *this = out;
        return *this;
    }

    friend U256 operator<<(U256 v, unsigned s) { v <<= s; return v; }
    friend U256 operator>>(U256 v, unsigned s) { v >>= s; return v; }

    /// Bit length: position of the highest set bit plus one, 0 for zero.
    unsigned bits() const
    {
        for (int i = 3; i >= 0; --i)
            if (limbs_[i] != 0)
                return 64 * i + (64 - __builtin_clzll(limbs_[i]));
        return 0;
    }

    /// (*this * mul) / div, saturating at 2^256-1 on overflow. div must be > 0.
    U256 mul_div(uint64_t mul, uint64_t div) const
    {
        // widen to 5 limbs for the product
        uint64_t prod[5] = {0, 0, 0, 0, 0};
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * mul + carry;
            prod[i] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        prod[4] = static_cast<uint64_t>(carry);

        // long division by a 64-bit divisor, most-significant limb first
        uint64_t quot[5];
        unsigned __int128 rem = 0;
        for (int i = 4; i >= 0; --i) {
            unsigned __int128 cur = (rem << 64) | prod[i];
            quot[i] = static_cast<uint64_t>(cur / div);
            rem = cur % div;
        }
        if (quot[4] != 0) return max_value();
        U256 r;
        r.limbs_ = {quot[0], quot[1], quot[2], quot[3]};
        return r;
    }

    /// Bitcoin-style compact ("nBits") target encoding.
    static U256 from_compact(uint32_t compact)
    {
        unsigned size = compact >> 24;
        uint64_t word = compact & 0x007fffff;
        U256 r;
        if (size <= 3) {
            r = U256(word >> (8 * (3 - size)));
        } else {
            r = U256(word);
            r <<= 8 * (size - 3);
        }
        return r;
    }

    uint32_t to_compact() const
    {
        unsigned size = (bits() + 7) / 8;
        uint32_t compact;
        if (size <= 3) {
            compact = static_cast<uint32_t>(limbs_[0] << (8 * (3 - size)));
        } else {
            U256 v = *this >> (8 * (size - 3));
            compact = static_cast<uint32_t>(v.limbs_[0]);
        }
        // the mantissa sign bit must stay clear
        if (compact & 0x00800000) {
            compact >>= 8;
            ++size;
        }
        return compact | (size << 24);
    }

private:
    std::array<uint64_t, 4> limbs_;
};

} // namespace upw

#endif // UPW_UTIL_U256_HPP
