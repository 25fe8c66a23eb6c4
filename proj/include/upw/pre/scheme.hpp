// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_PRE_SCHEME_HPP
#define UPW_PRE_SCHEME_HPP

#include <optional>

#include <upw/crypto/group.hpp>
#include <upw/crypto/schnorr.hpp>

namespace upw::pre {

using crypto::Element;
using crypto::Group;
using crypto::KeyPair;
using crypto::Scalar;

struct PreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidCiphertext : PreError {
    InvalidCiphertext() : PreError("invalid ciphertext: origin check failed") {}
};
struct RandomnessMismatch : PreError {
    RandomnessMismatch() : PreError("re-key bound to a different ciphertext") {}
};

/// l0 = l1 = 128 bits: message and randomizer pack into one 256-bit pad.
constexpr size_t kMessageBytes = 16;
using MessageBlock = std::array<uint8_t, kMessageBytes>;

/// Arbitrary short payloads (< 16 bytes) into a block: data | zeros | length.
MessageBlock pad_block(std::span<const uint8_t> data);
Bytes unpad_block(const MessageBlock& block);

/// Domain-separated hashes over the workspace digest, reduced into Z_p by
/// rejection. H4 is part of the suite but no operation consumes it.
struct HashSuite {
    const Group& group;

    Scalar h1(const Scalar& a, const Scalar& b) const;
    Scalar h2(const MessageBlock& m, const MessageBlock& w) const;
    Hash256 h3(const Element& a, const Element& b) const;
    Scalar h4(const Element& a, std::span<const uint8_t> bits) const;
};

enum class CipherLevel : uint8_t { Original = 0, ReEncrypted = 1 };

/// The 6-tuple <D, r, E, F, V, S>.
struct PreCiphertext {
    CipherLevel level = CipherLevel::Original;
    Element D;
    Scalar r;
    Element E;
    Hash256 F{};
    Element V;
    Element S;

    bool operator==(const PreCiphertext&) const = default;

    /// level(1) | D | r | E | F(32) | V | S, fixed group encodings.
    Bytes serialize(const Group& group) const;
    static PreCiphertext deserialize(const Group& group, std::span<const uint8_t> data);
};

struct ReKey {
    Element rk;           // (pk_B / pk_A)^d
    Scalar bound_r;       // the ciphertext randomness this key applies to
    Element delegator_pk; // origin key for the S-guard
    bool inverse = false; // true: maps re-encrypted back to original

    Bytes serialize(const Group& group) const;
    static ReKey deserialize(const Group& group, std::span<const uint8_t> data);
};

/// Why decrypt said no; for the tamper matrix tests.
enum class DecryptReject { None, SGuard, ECheck };

class PreScheme {
public:
    explicit PreScheme(const Group& group) : group_(group), hashes_{group} {}

    const Group& group() const { return group_; }

    KeyPair keygen(DetRng& rng) const { return crypto::keygen(group_, rng); }

    PreCiphertext encrypt(const Scalar& sk, const MessageBlock& m, DetRng& rng) const;

    /// Per-ciphertext re-key: d = H1(sk_A, r) makes rk useless for any other r.
    ReKey rekeygen(const Scalar& sk_delegator, const Element& pk_delegatee,
                   const Scalar& ciphertext_r) const;

    /// Checks the S-guard and the (bound_r, level) binding, then multiplies
    /// the re-key into D. Throws InvalidCiphertext / RandomnessMismatch.
    PreCiphertext reencrypt(const ReKey& rk, const PreCiphertext& c) const;

    /// Returns the message or nothing. origin_pk enables the S-guard on
    /// re-encrypted ciphertexts (an original's origin is g^sk).
    std::optional<MessageBlock> decrypt(const Scalar& sk, const PreCiphertext& c,
                                        std::optional<Element> origin_pk = std::nullopt,
                                        DecryptReject* reject = nullptr) const;

    ReKey invert_rekey(const ReKey& rk) const;

    const HashSuite& hashes() const { return hashes_; }

private:
    const Group& group_;
    HashSuite hashes_;
};

} // namespace upw::pre

#endif // UPW_PRE_SCHEME_HPP
