// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/crypto/schnorr.hpp>

namespace upw::crypto {

KeyPair keygen(const Group& group, DetRng& rng)
{
    Scalar sk = group.random_scalar(rng);
    return {sk, group.pow_g(sk)};
}

namespace {

Scalar challenge_scalar(const Group& group, const Element& commitment, const Element& pk,
                        std::span<const uint8_t> message)
{
    ByteWriter w;
    w.raw(group.encode_element(commitment));
    w.raw(group.encode_element(pk));
    w.raw(message);
    return group.hash_to_scalar("upw.schnorr.e", w.bytes());
}

} // namespace

Signature sign(const Group& group, const Scalar& sk, std::span<const uint8_t> message)
{
    // nonce derived from (sk, message): no randomness to misuse
    ByteWriter kw;
    kw.raw(group.encode_scalar(sk));
    kw.raw(message);
    Scalar k = group.hash_to_scalar("upw.schnorr.k", kw.bytes());

    Element commitment = group.pow_g(k);
    Scalar e = challenge_scalar(group, commitment, group.pow_g(sk), message);
    Scalar s = group.scalar_add(k, group.scalar_mul(e, sk));
    return {commitment, s};
}

bool verify_sig(const Group& group, const Element& pk, std::span<const uint8_t> message,
                const Signature& sig)
{
    if (!group.is_element(pk) || !group.is_element(sig.commitment) ||
        !group.is_scalar(sig.response))
        return false;
    Scalar e = challenge_scalar(group, sig.commitment, pk, message);
    return group.pow_g(sig.response) == group.mul(sig.commitment, group.pow(pk, e));
}

Bytes Signature::serialize(const Group& group) const
{
    ByteWriter w;
    w.raw(group.encode_element(commitment));
    w.raw(group.encode_scalar(response));
    return w.take();
}

Signature Signature::deserialize(const Group& group, std::span<const uint8_t> data)
{
    size_t n = group.element_bytes();
    if (data.size() != 2 * n) throw std::invalid_argument("bad signature length");
    Signature sig;
    sig.commitment = group.decode_element(data.subspan(0, n));
    sig.response = group.decode_scalar(data.subspan(n, n));
    return sig;
}

} // namespace upw::crypto
