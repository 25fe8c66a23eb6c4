// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_CRYPTO_GROUP_HPP
#define UPW_CRYPTO_GROUP_HPP

#include <gmpxx.h>

#include <upw/util/rng.hpp>
#include <upw/util/serialize.hpp>
#include <upw/util/sha256.hpp>

namespace upw::crypto {

using Element = mpz_class; // group element in [1, q)
using Scalar = mpz_class;  // exponent in [0, p)

/// Multiplicative subgroup of Z_q* with prime order p and generator g.
/// q = 2p+1 (safe prime) for both parameter sets, so the quadratic residues
/// form the order-p subgroup and g = 4 generates it.
class Group {
public:
    Group(const char* q_hex, const char* p_hex, unsigned generator, size_t element_bytes);

    /// 256-bit safe prime q = 2^256 - 36113; p = (q-1)/2 is 255 bits.
    static const Group& production();
    /// p = 32633, q = 65267: small enough for exhaustive discrete logs.
    static const Group& tiny();

    const mpz_class& modulus() const { return q_; }
    const mpz_class& order() const { return p_; }
    const Element& generator() const { return g_; }
    size_t element_bytes() const { return element_bytes_; }

    Element pow_g(const Scalar& e) const { return pow(g_, e); }
    Element pow(const Element& base, const Scalar& e) const;
    Element mul(const Element& a, const Element& b) const { return Element((a * b) % q_); }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    Element inv(const Element& a) const;

    Scalar scalar_add(const Scalar& a, const Scalar& b) const { return Scalar((a + b) % p_); }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const
    {
        return Scalar(((a - b) % p_ + p_) % p_);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const { return Scalar((a * b) % p_); }
    Scalar scalar_inv(const Scalar& s) const;
    Scalar scalar_neg(const Scalar& s) const { return Scalar((p_ - (s % p_)) % p_); }

    bool is_element(const Element& a) const;
    bool is_scalar(const Scalar& s) const { return s >= 0 && s < p_; }

    /// Uniform in [1, p-1], by rejection on the seeded stream.
    Scalar random_scalar(DetRng& rng) const;

    /// Fixed-length big-endian encodings.
    Bytes encode_element(const Element& a) const;
    Element decode_element(std::span<const uint8_t> b) const;
    Bytes encode_scalar(const Scalar& s) const;
    Scalar decode_scalar(std::span<const uint8_t> b) const;

    /// Uniform scalar from a domain-separated hash, rejection-sampled so the
    /// reduction is unbiased.
    Scalar hash_to_scalar(const std::string& tag, std::span<const uint8_t> data) const;

private:
    mpz_class q_, p_;
    Element g_;
    size_t element_bytes_;
};

mpz_class mpz_from_bytes(std::span<const uint8_t> b);
Bytes mpz_to_bytes(const mpz_class& v, size_t width);

} // namespace upw::crypto

#endif // UPW_CRYPTO_GROUP_HPP
