// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_WIDER_TX_HPP
#define UPW_WIDER_TX_HPP

#include <upw/crypto/schnorr.hpp>

namespace upw::wider {

using crypto::Group;

/// One account per shard: the account id doubles as the shard label space.
struct Account {
    crypto::KeyPair keys;
    Hash256 id; // sha256 of the encoded public key
};

Account make_account(const Group& group, DetRng& rng);
Hash256 account_id_of(const Group& group, const crypto::Element& pk);

enum class TxKind : uint8_t { Transfer = 0, Claim = 1 };

/// A subchain entry. seq runs from 1 and each tx links its predecessor, so a
/// (head hash, seq) pair pins the whole prefix.
struct SubTx {
    Hash256 sender;
    uint64_t seq = 0;
    Hash256 prev_tx_hash{};
    TxKind kind = TxKind::Transfer;

    // transfer
    Hash256 to{};
    uint64_t amount = 0;

    // claim
    Hash256 ref_tx{};
    uint64_t ref_main_height = 0;

    uint64_t fee_tip = 0;
    crypto::Signature signature;

    Bytes signing_payload() const;
    Bytes serialize(const Group& group) const;
    static SubTx deserialize(const Group& group, ByteReader& r);
    Hash256 txid(const Group& group) const { return sha256(serialize(group)); }
};

SubTx make_transfer(const Group& group, const Account& from, uint64_t seq,
                    const Hash256& prev_tx, const Hash256& to, uint64_t amount,
                    uint64_t fee_tip);
SubTx make_claim(const Group& group, const Account& from, uint64_t seq, const Hash256& prev_tx,
                 const Hash256& ref_tx, uint64_t ref_main_height, uint64_t fee_tip);

bool check_tx_signature(const Group& group, const crypto::Element& sender_pk, const SubTx& tx);

/// Per-account ordered transaction log: the shard.
struct Subchain {
    Hash256 account;
    crypto::Element owner_pk;
    std::vector<SubTx> txs;

    uint64_t seq() const { return txs.size(); }
    Hash256 head_hash(const Group& group) const
    {
        return txs.empty() ? Hash256{} : txs.back().txid(group);
    }
    Hash256 hash_at(const Group& group, uint64_t seq_1based) const
    {
        return txs.at(seq_1based - 1).txid(group);
    }
};

} // namespace upw::wider

#endif // UPW_WIDER_TX_HPP
