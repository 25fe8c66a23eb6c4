// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/wider/tx.hpp>

namespace upw::wider {

Hash256 account_id_of(const Group& group, const crypto::Element& pk)
{
    return sha256(group.encode_element(pk));
}

Account make_account(const Group& group, DetRng& rng)
{
    Account a;
    a.keys = crypto::keygen(group, rng);
    a.id = account_id_of(group, a.keys.pk);
    return a;
}

Bytes SubTx::signing_payload() const
{
    ByteWriter w;
    w.raw(sender);
    w.u64_be(seq);
    w.raw(prev_tx_hash);
    w.u8(static_cast<uint8_t>(kind));
    if (kind == TxKind::Transfer) {
        w.raw(to);
        w.u64_be(amount);
    } else {
        w.raw(ref_tx);
        w.u64_be(ref_main_height);
    }
    w.u64_be(fee_tip);
    return w.take();
}

Bytes SubTx::serialize(const Group& group) const
{
    ByteWriter w;
    Bytes payload = signing_payload();
    w.raw(payload);
    w.raw(signature.serialize(group));
    return w.take();
}

SubTx SubTx::deserialize(const Group& group, ByteReader& r)
{
    SubTx tx;
    tx.sender = r.hash();
    tx.seq = r.u64_be();
    tx.prev_tx_hash = r.hash();
    uint8_t kind = r.u8();
    if (kind > 1) throw std::invalid_argument("bad tx kind");
    tx.kind = static_cast<TxKind>(kind);
    if (tx.kind == TxKind::Transfer) {
        tx.to = r.hash();
        tx.amount = r.u64_be();
    } else {
        tx.ref_tx = r.hash();
        tx.ref_main_height = r.u64_be();
    }
    tx.fee_tip = r.u64_be();
    tx.signature = crypto::Signature::deserialize(group, r.raw(2 * group.element_bytes()));
    return tx;
}

namespace {

SubTx finish(const Group& group, const Account& from, SubTx tx)
{
    tx.signature = crypto::sign(group, from.keys.sk, tx.signing_payload());
    return tx;
}

} // namespace

SubTx make_transfer(const Group& group, const Account& from, uint64_t seq,
                    const Hash256& prev_tx, const Hash256& to, uint64_t amount, uint64_t fee_tip)
{
    SubTx tx;
    tx.sender = from.id;
    tx.seq = seq;
    tx.prev_tx_hash = prev_tx;
    tx.kind = TxKind::Transfer;
    tx.to = to;
    tx.amount = amount;
    tx.fee_tip = fee_tip;
    return finish(group, from, tx);
}

SubTx make_claim(const Group& group, const Account& from, uint64_t seq, const Hash256& prev_tx,
                 const Hash256& ref_tx, uint64_t ref_main_height, uint64_t fee_tip)
{
    SubTx tx;
    tx.sender = from.id;
    tx.seq = seq;
    tx.prev_tx_hash = prev_tx;
    tx.kind = TxKind::Claim;
    tx.ref_tx = ref_tx;
    tx.ref_main_height = ref_main_height;
    tx.fee_tip = fee_tip;
    return finish(group, from, tx);
}

bool check_tx_signature(const Group& group, const crypto::Element& sender_pk, const SubTx& tx)
{
    if (account_id_of(group, sender_pk) != tx.sender) return false;
    return crypto::verify_sig(group, sender_pk, tx.signing_payload(), tx.signature);
}

} // namespace upw::wider
