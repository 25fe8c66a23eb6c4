// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/pre/scheme.hpp>

namespace upw::pre {

MessageBlock pad_block(std::span<const uint8_t> data)
{
    if (data.size() >= kMessageBytes)
        throw PreError("payload too long for a padded block (max 15 bytes)");
    MessageBlock block{};
    std::copy(data.begin(), data.end(), block.begin());
    block[kMessageBytes - 1] = static_cast<uint8_t>(data.size());
    return block;
}

Bytes unpad_block(const MessageBlock& block)
{
    uint8_t len = block[kMessageBytes - 1];
    if (len >= kMessageBytes) throw PreError("corrupt padded block");
    return Bytes(block.begin(), block.begin() + len);
}

Scalar HashSuite::h1(const Scalar& a, const Scalar& b) const
{
    ByteWriter w;
    w.raw(group.encode_scalar(a));
    w.raw(group.encode_scalar(b));
    return group.hash_to_scalar("upw.pre.h1", w.bytes());
}

Scalar HashSuite::h2(const MessageBlock& m, const MessageBlock& w) const
{
    ByteWriter bw;
    bw.raw(std::span<const uint8_t>(m));
    bw.raw(std::span<const uint8_t>(w));
    return group.hash_to_scalar("upw.pre.h2", bw.bytes());
}

Hash256 HashSuite::h3(const Element& a, const Element& b) const
{
    Sha256 h;
    h.update(std::string("upw.pre.h3"));
    h.update(group.encode_element(a));
    h.update(group.encode_element(b));
    return h.finalize();
}

Scalar HashSuite::h4(const Element& a, std::span<const uint8_t> bits) const
{
    ByteWriter w;
    w.raw(group.encode_element(a));
    w.raw(bits);
    return group.hash_to_scalar("upw.pre.h4", w.bytes());
}

namespace {

Hash256 xor_pad(const Hash256& pad, const MessageBlock& m, const MessageBlock& w)
{
    Hash256 out;
    for (size_t i = 0; i < kMessageBytes; ++i) out[i] = pad[i] ^ m[i];
    for (size_t i = 0; i < kMessageBytes; ++i)
        out[kMessageBytes + i] = pad[kMessageBytes + i] ^ w[i];
    return out;
}

} // namespace

PreCiphertext PreScheme::encrypt(const Scalar& sk, const MessageBlock& m, DetRng& rng) const
{
    const Element pk = group_.pow_g(sk);

    PreCiphertext c;
    c.level = CipherLevel::Original;
    c.r = group_.random_scalar(rng);

    // d = H1(sk, r); D = pk^d = g^(sk*d). d is derived and dropped.
    Scalar d = hashes_.h1(sk, c.r);
    c.D = group_.pow(pk, d);

    // E = g^e, e = H2(m, w)
    MessageBlock w;
    rng.fill(w.data(), w.size());
    Scalar e = hashes_.h2(m, w);
    c.E = group_.pow_g(e);

    // F = H3(g^d, E) xor (m || w)
    c.F = xor_pad(hashes_.h3(group_.pow_g(d), c.E), m, w);

    // V = g^v, S = g^(v + sk*r): the origin proof
    Scalar v = group_.random_scalar(rng);
    c.V = group_.pow_g(v);
    c.S = group_.pow_g(group_.scalar_add(v, group_.scalar_mul(sk, c.r)));
    return c;
}

ReKey PreScheme::rekeygen(const Scalar& sk_delegator, const Element& pk_delegatee,
                          const Scalar& ciphertext_r) const
{
    Scalar d = hashes_.h1(sk_delegator, ciphertext_r);
    Element pk_delegator = group_.pow_g(sk_delegator);
    ReKey rk;
    rk.rk = group_.pow(group_.div(pk_delegatee, pk_delegator), d);
    rk.bound_r = ciphertext_r;
    rk.delegator_pk = pk_delegator;
    rk.inverse = false;
    return rk;
}

namespace {

bool origin_check(const Group& group, const PreCiphertext& c, const Element& origin_pk)
{
    // S ?= V * pk^r
    return c.S == group.mul(c.V, group.pow(origin_pk, c.r));
}

} // namespace

PreCiphertext PreScheme::reencrypt(const ReKey& rk, const PreCiphertext& c) const
{
    const CipherLevel expected = rk.inverse ? CipherLevel::ReEncrypted : CipherLevel::Original;
    if (c.level != expected) throw InvalidCiphertext();
    if (rk.bound_r != c.r) throw RandomnessMismatch();
    if (!origin_check(group_, c, rk.delegator_pk)) throw InvalidCiphertext();

    PreCiphertext out = c;
    out.D = group_.mul(c.D, rk.rk);
    out.level = rk.inverse ? CipherLevel::Original : CipherLevel::ReEncrypted;
    return out;
}

std::optional<MessageBlock> PreScheme::decrypt(const Scalar& sk, const PreCiphertext& c,
                                               std::optional<Element> origin_pk,
                                               DecryptReject* reject) const
{
    if (reject) *reject = DecryptReject::None;

    // an original ciphertext authenticates against the holder's own key
    std::optional<Element> origin = origin_pk;
    if (c.level == CipherLevel::Original && !origin) origin = group_.pow_g(sk);
    if (origin && !origin_check(group_, c, *origin)) {
        if (reject) *reject = DecryptReject::SGuard;
        return std::nullopt;
    }

    // g^d = D^(1/sk); (m || w) = F xor H3(g^d, E)
    Element g_d = group_.pow(c.D, group_.scalar_inv(sk));
    Hash256 pad = hashes_.h3(g_d, c.E);
    MessageBlock m, w;
    for (size_t i = 0; i < kMessageBytes; ++i) {
        m[i] = static_cast<uint8_t>(pad[i] ^ c.F[i]);
        w[i] = static_cast<uint8_t>(pad[kMessageBytes + i] ^ c.F[kMessageBytes + i]);
    }

    // E ?= g^H2(m, w)
    if (c.E != group_.pow_g(hashes_.h2(m, w))) {
        if (reject) *reject = DecryptReject::ECheck;
        return std::nullopt;
    }
    return m;
}

ReKey PreScheme::invert_rekey(const ReKey& rk) const
{
    ReKey out = rk;
    out.rk = group_.inv(rk.rk);
    out.inverse = !rk.inverse;
    return out;
}

Bytes ReKey::serialize(const Group& group) const
{
    ByteWriter w;
    w.raw(group.encode_element(rk));
    w.raw(group.encode_scalar(bound_r));
    w.raw(group.encode_element(delegator_pk));
    w.u8(inverse ? 1 : 0);
    return w.take();
}

ReKey ReKey::deserialize(const Group& group, std::span<const uint8_t> data)
{
    const size_t n = group.element_bytes();
    if (data.size() != 3 * n + 1) throw PreError("bad re-key length");
    ByteReader r(data);
    ReKey rk;
    rk.rk = group.decode_element(r.raw(n));
    rk.bound_r = group.decode_scalar(r.raw(n));
    rk.delegator_pk = group.decode_element(r.raw(n));
    rk.inverse = r.u8() != 0;
    return rk;
}

Bytes PreCiphertext::serialize(const Group& group) const
{
    ByteWriter w;
    w.u8(static_cast<uint8_t>(level));
    w.raw(group.encode_element(D));
    w.raw(group.encode_scalar(r));
    w.raw(group.encode_element(E));
    w.raw(F);
    w.raw(group.encode_element(V));
    w.raw(group.encode_element(S));
    return w.take();
}

PreCiphertext PreCiphertext::deserialize(const Group& group, std::span<const uint8_t> data)
{
    const size_t n = group.element_bytes();
    if (data.size() != 1 + 5 * n + 32) throw PreError("bad ciphertext length");
    ByteReader r(data);
    PreCiphertext c;
    uint8_t lvl = r.u8();
    if (lvl > 1) throw PreError("bad ciphertext level");
    c.level = static_cast<CipherLevel>(lvl);
    c.D = group.decode_element(r.raw(n));
    c.r = group.decode_scalar(r.raw(n));
    c.E = group.decode_element(r.raw(n));
    c.F = r.hash();
    c.V = group.decode_element(r.raw(n));
    c.S = group.decode_element(r.raw(n));
    return c;
}

} // namespace upw::pre
