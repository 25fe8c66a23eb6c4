// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_CRYPTO_SCHNORR_HPP
#define UPW_CRYPTO_SCHNORR_HPP

#include <upw/crypto/group.hpp>

namespace upw::crypto {

struct KeyPair {
    Scalar sk;
    Element pk; // g^sk
};

KeyPair keygen(const Group& group, DetRng& rng);

/// Schnorr signature with a derived (deterministic) nonce.
struct Signature {
    Element commitment; // R = g^k
    Scalar response;    // s = k + e*sk mod p

    Bytes serialize(const Group& group) const;
    static Signature deserialize(const Group& group, std::span<const uint8_t> data);
};

Signature sign(const Group& group, const Scalar& sk, std::span<const uint8_t> message);
bool verify_sig(const Group& group, const Element& pk, std::span<const uint8_t> message,
                const Signature& sig);

} // namespace upw::crypto

#endif // UPW_CRYPTO_SCHNORR_HPP
