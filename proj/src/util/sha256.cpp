// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/util/sha256.hpp>

#if defined(__x86_64__)
#include <cpuid.h>
#include <immintrin.h>
#define UPW_HAVE_SHANI_BUILD 1
#endif

namespace upw {

namespace {

constexpr uint32_t K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

inline uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }
inline uint32_t be32(const uint8_t* p)
{
    return uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 | uint32_t(p[3]);
}

void transform_portable(uint32_t* state, const uint8_t* chunk, size_t nblocks)
{
    uint32_t a, b, c, d, e, f, g, h, w[64];
    while (nblocks--) {
        for (int i = 0; i < 16; ++i) w[i] = be32(chunk + 4 * i);
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        a = state[0]; b = state[1]; c = state[2]; d = state[3];
        e = state[4]; f = state[5]; g = state[6]; h = state[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = h + S1 + ch + K[i] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + maj;
            h = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        state[0] += a; state[1] += b; state[2] += c; state[3] += d;
        state[4] += e; state[5] += f; state[6] += g; state[7] += h;
        chunk += 64;
    }
}

#ifdef UPW_HAVE_SHANI_BUILD
__attribute__((target("sha,sse4.1")))
void transform_shani(uint32_t* state, const uint8_t* chunk, size_t nblocks)
{
    const __m128i shuf = _mm_set_epi64x(0x0c0d0e0f08090a0bULL, 0x0405060700010203ULL);

    __m128i tmp = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&state[0]));
    __m128i st1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&state[4]));
    tmp = _mm_shuffle_epi32(tmp, 0xb1);  // CDAB
    st1 = _mm_shuffle_epi32(st1, 0x1b);  // EFGH
    __m128i st0 = _mm_alignr_epi8(tmp, st1, 8);          // ABEF
    st1 = _mm_blend_epi16(st1, tmp, 0xf0);               // CDGH

    while (nblocks--) {
        const __m128i abef_save = st0;
        const __m128i cdgh_save = st1;
        __m128i msg, msg0, msg1, msg2, msg3;

        msg0 = _mm_shuffle_epi8(_mm_loadu_si128(reinterpret_cast<const __m128i*>(chunk + 0)), shuf);
        msg = _mm_add_epi32(msg0, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[0])));
        st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
        msg = _mm_shuffle_epi32(msg, 0x0e);
        st0 = _mm_sha256rnds2_epu32(st0, st1, msg);

        msg1 = _mm_shuffle_epi8(_mm_loadu_si128(reinterpret_cast<const __m128i*>(chunk + 16)), shuf);
        msg = _mm_add_epi32(msg1, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[4])));
        st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
        msg = _mm_shuffle_epi32(msg, 0x0e);
        st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
        msg0 = _mm_sha256msg1_epu32(msg0, msg1);

        msg2 = _mm_shuffle_epi8(_mm_loadu_si128(reinterpret_cast<const __m128i*>(chunk + 32)), shuf);
        msg = _mm_add_epi32(msg2, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[8])));
        st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
        msg = _mm_shuffle_epi32(msg, 0x0e);
        st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
        msg1 = _mm_sha256msg1_epu32(msg1, msg2);

        msg3 = _mm_shuffle_epi8(_mm_loadu_si128(reinterpret_cast<const __m128i*>(chunk + 48)), shuf);
        msg = _mm_add_epi32(msg3, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[12])));
        st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
        msg0 = _mm_add_epi32(msg0, _mm_alignr_epi8(msg3, msg2, 4));
        msg0 = _mm_sha256msg2_epu32(msg0, msg3);
        msg = _mm_shuffle_epi32(msg, 0x0e);
        st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
        msg2 = _mm_sha256msg1_epu32(msg2, msg3);

        for (int i = 16; i < 64; i += 16) {
            msg = _mm_add_epi32(msg0, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[i])));
            st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
            msg1 = _mm_add_epi32(msg1, _mm_alignr_epi8(msg0, msg3, 4));
            msg1 = _mm_sha256msg2_epu32(msg1, msg0);
            msg = _mm_shuffle_epi32(msg, 0x0e);
            st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
            msg3 = _mm_sha256msg1_epu32(msg3, msg0);

            msg = _mm_add_epi32(msg1, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[i + 4])));
            st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
            msg2 = _mm_add_epi32(msg2, _mm_alignr_epi8(msg1, msg0, 4));
            msg2 = _mm_sha256msg2_epu32(msg2, msg1);
            msg = _mm_shuffle_epi32(msg, 0x0e);
            st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
            msg0 = _mm_sha256msg1_epu32(msg0, msg1);

            msg = _mm_add_epi32(msg2, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[i + 8])));
            st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
            msg3 = _mm_add_epi32(msg3, _mm_alignr_epi8(msg2, msg1, 4));
            msg3 = _mm_sha256msg2_epu32(msg3, msg2);
            msg = _mm_shuffle_epi32(msg, 0x0e);
            st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
            msg1 = _mm_sha256msg1_epu32(msg1, msg2);

            msg = _mm_add_epi32(msg3, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&K[i + 12])));
            st1 = _mm_sha256rnds2_epu32(st1, st0, msg);
            msg0 = _mm_add_epi32(msg0, _mm_alignr_epi8(msg3, msg2, 4));
            msg0 = _mm_sha256msg2_epu32(msg0, msg3);
            msg = _mm_shuffle_epi32(msg, 0x0e);
            st0 = _mm_sha256rnds2_epu32(st0, st1, msg);
            msg2 = _mm_sha256msg1_epu32(msg2, msg3);
        }

        st0 = _mm_add_epi32(st0, abef_save);
        st1 = _mm_add_epi32(st1, cdgh_save);
        chunk += 64;
    }

    tmp = _mm_shuffle_epi32(st0, 0x1b);  // FEBA
    st1 = _mm_shuffle_epi32(st1, 0xb1);  // DCHG
    st0 = _mm_blend_epi16(tmp, st1, 0xf0);               // DCBA
    st1 = _mm_alignr_epi8(st1, tmp, 8);                  // HGFE

    _mm_storeu_si128(reinterpret_cast<__m128i*>(&state[0]), st0);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&state[4]), st1);
}

bool cpu_has_shani()
{
    unsigned int eax, ebx, ecx, edx;
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx & (1u << 29)) != 0;
}
#endif // UPW_HAVE_SHANI_BUILD

using TransformFn = void (*)(uint32_t*, const uint8_t*, size_t);

TransformFn pick_transform()
{
#ifdef UPW_HAVE_SHANI_BUILD
    if (cpu_has_shani()) return transform_shani;
#endif
    return transform_portable;
}

const TransformFn g_transform = pick_transform();

} // namespace

Sha256& Sha256::reset()
{
    state_[0] = 0x6a09e667; state_[1] = 0xbb67ae85; state_[2] = 0x3c6ef372; state_[3] = 0xa54ff53a;
    state_[4] = 0x510e527f; state_[5] = 0x9b05688c; state_[6] = 0x1f83d9ab; state_[7] = 0x5be0cd19;
    total_bytes_ = 0;
    return *this;
}

Sha256& Sha256::update(std::span<const uint8_t> data)
{
    const uint8_t* p = data.data();
    size_t len = data.size();
    size_t fill = total_bytes_ % 64;
    total_bytes_ += len;

    if (fill > 0) {
        size_t take = std::min(len, 64 - fill);
        std::memcpy(buf_ + fill, p, take);
        p += take;
        len -= take;
        if (fill + take < 64) return *this;
        g_transform(state_, buf_, 1);
    }
    if (size_t nblocks = len / 64) {
        g_transform(state_, p, nblocks);
        p += nblocks * 64;
        len -= nblocks * 64;
    }
    if (len > 0) std::memcpy(buf_, p, len);
    return *this;
}

void Sha256::finalize(Hash256& out)
{
    uint64_t bit_len = total_bytes_ * 8;
    size_t fill = total_bytes_ % 64;
    buf_[fill++] = 0x80;
    if (fill > 56) {
        std::memset(buf_ + fill, 0, 64 - fill);
        g_transform(state_, buf_, 1);
        fill = 0;
    }
    std::memset(buf_ + fill, 0, 56 - fill);
    for (int i = 0; i < 8; ++i) buf_[56 + i] = static_cast<uint8_t>(bit_len >> (56 - 8 * i));
    g_transform(state_, buf_, 1);
    for (int i = 0; i < 8; ++i) {
        out[4 * i + 0] = static_cast<uint8_t>(state_[i] >> 24);
        out[4 * i + 1] = static_cast<uint8_t>(state_[i] >> 16);
        out[4 * i + 2] = static_cast<uint8_t>(state_[i] >> 8);
        out[4 * i + 3] = static_cast<uint8_t>(state_[i]);
    }
}

} // namespace upw
