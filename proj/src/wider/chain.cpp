// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/wider/chain.hpp>

#include <algorithm>
#include <set>

namespace upw::wider {

Bytes ConfirmationRecord::frame() const
{
    ByteWriter w;
    w.raw(account_id);
    w.raw(subchain_head);
    w.u64_be(subchain_seq);
    Bytes out = w.take();
    out.resize(kFrameSize, 0);
    return out;
}

ConfirmationRecord ConfirmationRecord::unframe(std::span<const uint8_t> data)
{
    if (data.size() != kFrameSize) throw ChainError("bad confirmation frame size");
    ByteReader r(data);
    ConfirmationRecord rec;
    rec.account_id = r.hash();
    rec.subchain_head = r.hash();
    rec.subchain_seq = r.u64_be();
    return rec;
}

Bytes BlockBodies::serialize() const
{
    ByteWriter w;
    w.u32_be(static_cast<uint32_t>(confirmations.size()));
    for (const auto& rec : confirmations) w.raw(rec.frame());
    w.u32_be(static_cast<uint32_t>(state_diff.size()));
    for (const auto& [key, value] : state_diff) {
        w.u32_be(static_cast<uint32_t>(key.size()));
        w.str(key);
        w.u32_be(static_cast<uint32_t>(value.size()));
        w.str(value);
    }
    return w.take();
}

BlockBodies BlockBodies::parse(std::span<const uint8_t> data)
{
    ByteReader r(data);
    BlockBodies b;
    uint32_t n = r.u32_be();
    b.confirmations.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
        b.confirmations.push_back(ConfirmationRecord::unframe(r.raw(ConfirmationRecord::kFrameSize)));
    uint32_t d = r.u32_be();
    for (uint32_t i = 0; i < d; ++i) {
        std::string key = bytes_to_string(r.raw(r.u32_be()));
        std::string value = bytes_to_string(r.raw(r.u32_be()));
        b.state_diff.emplace_back(std::move(key), std::move(value));
    }
    if (!r.done()) throw ChainError("trailing bytes in block body");
    return b;
}

ApplyMode choose_apply_mode(double validate_ratio, DetRng& rng)
{
    if (validate_ratio >= 1.0) return ApplyMode::ReExecute;
    if (validate_ratio <= 0.0) return ApplyMode::ApplyDiff;
    constexpr uint64_t kScale = 1ull << 32;
    return rng.uniform(kScale) < uint64_t(validate_ratio * double(kScale))
               ? ApplyMode::ReExecute
               : ApplyMode::ApplyDiff;
}

const char* submit_result_name(SubmitResult r)
{
    switch (r) {
    case SubmitResult::Accepted: return "accepted";
    case SubmitResult::BadSig: return "rejected(BadSig)";
    case SubmitResult::BadSeq: return "rejected(BadSeq)";
    case SubmitResult::Overspend: return "rejected(Overspend)";
    case SubmitResult::DuplicateClaim: return "rejected(DuplicateClaim)";
    case SubmitResult::BadClaim: return "rejected(BadClaim)";
    case SubmitResult::UnknownAccount: return "rejected(UnknownAccount)";
    }
    return "?";
}

namespace {

/// Sequential interpreter shared by the block builder and the validators:
/// both sides must agree on which transactions a record may confirm.
class Executor {
public:
    Executor(const Group& group, const GlobalState& pre, const SubchainRegistry& subchains,
             const std::map<Hash256, uint64_t>& confirmed_seq, uint64_t height,
             const Hash256& parent_hash, const Hash256& miner, bool verify_sigs)
        : group_(group), pre_(pre), subchains_(subchains), confirmed_(confirmed_seq),
          height_(height), parent_(parent_hash), miner_(miner), verify_sigs_(verify_sigs)
    {
    }

    uint64_t confirmed_of(const Hash256& account) const
    {
        auto it = confirmed_.find(account);
        return it == confirmed_.end() ? 0 : it->second;
    }

    /// Longest valid prefix end (absolute seq) confirmable for the account
    /// in the current working state; dry-run, nothing committed.
    uint64_t max_valid_prefix(const Hash256& account)
    {
        auto balances = balances_;
        auto claimed = claimed_;
        auto confirmed = confirmed_;
        uint64_t txs = confirmed_txs_;

        const Subchain& sub = subchains_.at(account);
        uint64_t best = confirmed_of(account);
        for (uint64_t k = best + 1; k <= sub.seq(); ++k) {
            std::string err;
            if (!step(sub.txs[k - 1], account, k, &err)) break;
            best = k;
        }
        balances_ = std::move(balances);
        claimed_ = std::move(claimed);
        confirmed_ = std::move(confirmed);
        confirmed_txs_ = txs;
        return best;
    }

    bool apply_record(const ConfirmationRecord& rec, std::string* err)
    {
        auto it = subchains_.find(rec.account_id);
        if (it == subchains_.end()) return fail(err, "unknown account in record");
        const Subchain& sub = it->second;
        uint64_t from = confirmed_of(rec.account_id);
        if (rec.subchain_seq <= from) return fail(err, "record does not advance the subchain");
        if (rec.subchain_seq > sub.seq()) return fail(err, "record beyond the subchain head");
        if (sub.hash_at(group_, rec.subchain_seq) != rec.subchain_head)
            return fail(err, "record head hash mismatch");

        for (uint64_t k = from + 1; k <= rec.subchain_seq; ++k)
            if (!step(sub.txs[k - 1], rec.account_id, k, err)) return false;
        confirmed_[rec.account_id] = rec.subchain_seq;
        return true;
    }

    StateDiff diff() const
    {
        StateDiff out;
        for (const auto& [account, value] : balances_)
            out.emplace_back(GlobalState::balance_key(account, height_, parent_),
                             std::to_string(value));
        for (const auto& [ref, claimant] : claimed_)
            out.emplace_back(GlobalState::claim_key(ref, height_, parent_), to_hex(claimant));
        std::sort(out.begin(), out.end());
        return out;
    }

    uint64_t confirmed_txs() const { return confirmed_txs_; }
    const std::map<Hash256, uint64_t>& confirmed_map() const { return confirmed_; }

private:
    static bool fail(std::string* err, const char* msg)
    {
        if (err) *err = msg;
        return false;
    }

    uint64_t balance_of(const Hash256& account) const
    {
        auto it = balances_.find(account);
        return it != balances_.end() ? it->second : pre_.balance_of(account);
    }

    bool is_claimed(const Hash256& ref) const
    {
        return claimed_.count(ref) != 0 || pre_.claimed(ref);
    }

    bool step(const SubTx& tx, const Hash256& account, uint64_t k, std::string* err)
    {
        const Subchain& sub = subchains_.at(account);
        if (tx.sender != account || tx.seq != k) return fail(err, "tx sequence mismatch");
        Hash256 expect_prev = (k == 1) ? Hash256{} : sub.hash_at(group_, k - 1);
        if (tx.prev_tx_hash != expect_prev) return fail(err, "tx chain link mismatch");
        if (verify_sigs_ && !check_tx_signature(group_, sub.owner_pk, tx))
            return fail(err, "bad signature");

        uint64_t need = tx.fee_tip;
        uint64_t credit = 0;
        if (tx.kind == TxKind::Transfer) {
            if (tx.amount == 0) return fail(err, "zero-amount transfer");
            need += tx.amount;
        } else {
            // claims credit a confirmed, unclaimed transfer to this account
            auto ref_pos = find_ref(tx.ref_tx);
            if (!ref_pos) return fail(err, "claim references an unknown tx");
            const SubTx& ref = subchains_.at(ref_pos->first).txs[ref_pos->second - 1];
            if (ref.kind != TxKind::Transfer) return fail(err, "claim references a non-transfer");
            if (ref.to != account) return fail(err, "claim by a non-recipient");
            if (confirmed_of(ref_pos->first) < ref_pos->second)
                return fail(err, "claim references an unconfirmed transfer");
            if (tx.ref_main_height > height_) return fail(err, "claim cites a future height");
            if (is_claimed(tx.ref_tx)) return fail(err, "transfer already claimed");
            credit = ref.amount;
        }

        uint64_t have = balance_of(account) + credit;
        if (have < need) return fail(err, "overspend at confirmation");

        balances_[account] = have - need;
        if (tx.kind == TxKind::Claim) claimed_.emplace(tx.ref_tx, account);
        if (tx.fee_tip > 0) balances_[miner_] = balance_of(miner_) + tx.fee_tip;
        ++confirmed_txs_;
        return true;
    }

    /// (account, seq) of a txid, by scanning the registry index built lazily.
    std::optional<std::pair<Hash256, uint64_t>> find_ref(const Hash256& txid)
    {
        if (ref_index_.empty()) {
            for (const auto& [account, sub] : subchains_)
                for (uint64_t k = 1; k <= sub.seq(); ++k)
                    ref_index_.emplace(sub.hash_at(group_, k), std::make_pair(account, k));
        }
        auto it = ref_index_.find(txid);
        if (it == ref_index_.end()) return std::nullopt;
        return it->second;
    }

    const Group& group_;
    const GlobalState& pre_;
    const SubchainRegistry& subchains_;
    std::map<Hash256, uint64_t> confirmed_;
    std::map<Hash256, uint64_t> balances_;           // working balances, touched only
    std::map<Hash256, Hash256> claimed_;             // ref txid -> claimant
    std::map<Hash256, std::pair<Hash256, uint64_t>> ref_index_;
    uint64_t height_;
    Hash256 parent_;
    Hash256 miner_;
    bool verify_sigs_;
    uint64_t confirmed_txs_ = 0;
};

} // namespace

ExecResult execute_confirmations(const Group& group, const GlobalState& pre,
                                 const SubchainRegistry& subchains,
                                 const std::map<Hash256, uint64_t>& confirmed_seq_in,
                                 const std::vector<ConfirmationRecord>& records,
                                 uint64_t height, const Hash256& parent_hash,
                                 const Hash256& miner, bool verify_sigs)
{
    Executor exec(group, pre, subchains, confirmed_seq_in, height, parent_hash, miner,
                  verify_sigs);
    std::set<Hash256> seen;
    for (const auto& rec : records) {
        if (!seen.insert(rec.account_id).second)
            throw ChainError("duplicate account in block confirmations");
        std::string err;
        if (!exec.apply_record(rec, &err)) throw ChainError("invalid confirmation: " + err);
    }
    return {exec.diff(), exec.confirmed_txs()};
}

WiderNode::WiderNode(const Group& group, ChainConfig cfg,
                     const std::vector<std::pair<crypto::Element, uint64_t>>& genesis_alloc)
    : group_(group), cfg_(cfg),
      store_(cfg.pow_params, cfg.genesis_timestamp,
             pow::frame_body(to_bytes("genesis"), BlockBodies{}.serialize())),
      state_(cfg.state_key_cap)
{
    for (const auto& [pk, amount] : genesis_alloc) {
        register_account(pk);
        genesis_alloc_.emplace_back(account_id_of(group_, pk), amount);
    }
    write_genesis_state();
}

void WiderNode::write_genesis_state()
{
    for (const auto& [account, amount] : genesis_alloc_)
        state_.put(GlobalState::balance_key(account, 0, Hash256{}), std::to_string(amount));
}

void WiderNode::register_account(const crypto::Element& pk)
{
    Hash256 id = account_id_of(group_, pk);
    if (subchains_.count(id)) return;
    Subchain sub;
    sub.account = id;
    sub.owner_pk = pk;
    subchains_.emplace(id, std::move(sub));
}

uint64_t WiderNode::confirmed_seq(const Hash256& account) const
{
    auto it = confirmed_seq_.find(account);
    return it == confirmed_seq_.end() ? 0 : it->second;
}

std::optional<uint64_t> WiderNode::confirm_height_of(const Hash256& txid) const
{
    auto it = confirm_height_.find(txid);
    if (it == confirm_height_.end()) return std::nullopt;
    return it->second;
}

const SubTx* WiderNode::find_tx(const Hash256& txid) const
{
    auto it = tx_index_.find(txid);
    if (it == tx_index_.end()) return nullptr;
    return &subchains_.at(it->second.first).txs[it->second.second - 1];
}

uint64_t WiderNode::spendable(const Hash256& account) const
{
    // confirmed incoming claims + initial allocation - all outgoing,
    // confirmed or pending ("the balance is deduced once the subchain is
    // confirmed"; pending spends are reserved up front)
    uint64_t credit = 0;
    for (const auto& [acct, amount] : genesis_alloc_)
        if (acct == account) credit += amount;

    const Subchain& sub = subchains_.at(account);
    uint64_t confirmed = confirmed_seq(account);
    uint64_t debit = 0;
    for (uint64_t k = 1; k <= sub.seq(); ++k) {
        const SubTx& tx = sub.txs[k - 1];
        debit += tx.fee_tip;
        if (tx.kind == TxKind::Transfer) {
            debit += tx.amount;
        } else if (k <= confirmed) {
            if (const SubTx* ref = find_tx(tx.ref_tx)) credit += ref->amount;
        }
    }
    return credit >= debit ? credit - debit : 0;
}

SubmitResult WiderNode::submit_tx(const SubTx& tx)
{
    auto it = subchains_.find(tx.sender);
    if (it == subchains_.end()) return SubmitResult::UnknownAccount;
    Subchain& sub = it->second;

    if (tx.seq != sub.seq() + 1) return SubmitResult::BadSeq;
    if (tx.prev_tx_hash != sub.head_hash(group_)) return SubmitResult::BadSeq;
    if (!check_tx_signature(group_, sub.owner_pk, tx)) return SubmitResult::BadSig;

    uint64_t need = tx.fee_tip;
    if (tx.kind == TxKind::Transfer) {
        if (tx.amount == 0) return SubmitResult::Overspend;
        need += tx.amount;
    } else {
        auto ref_it = tx_index_.find(tx.ref_tx);
        if (ref_it == tx_index_.end()) return SubmitResult::BadClaim;
        const SubTx& ref = subchains_.at(ref_it->second.first).txs[ref_it->second.second - 1];
        if (ref.kind != TxKind::Transfer || ref.to != tx.sender) return SubmitResult::BadClaim;
        if (confirmed_seq(ref_it->second.first) < ref_it->second.second)
            return SubmitResult::BadClaim; // claim requires main-chain confirmation
        if (tx.ref_main_height > store_.canonical_height()) return SubmitResult::BadClaim;
        if (state_.claimed(tx.ref_tx)) return SubmitResult::DuplicateClaim;
        for (uint64_t k = confirmed_seq(tx.sender) + 1; k <= sub.seq(); ++k) {
            const SubTx& pending = sub.txs[k - 1];
            if (pending.kind == TxKind::Claim && pending.ref_tx == tx.ref_tx)
                return SubmitResult::DuplicateClaim;
        }
    }
    if (spendable(tx.sender) < need) return SubmitResult::Overspend;

    Hash256 txid = tx.txid(group_);
    sub.txs.push_back(tx);
    tx_index_.emplace(txid, std::make_pair(tx.sender, sub.seq()));
    return SubmitResult::Accepted;
}

BlockBodies WiderNode::build_main_block(const Hash256& parent, const Hash256& miner) const
{
    const pow::BlockRecord* parent_rec = store_.find(parent);
    if (!parent_rec) throw ChainError("unknown parent");
    uint64_t height = parent_rec->height + 1;

    ChainView view;
    const std::map<Hash256, uint64_t>* confirmed = nullptr;
    const GlobalState* pre = nullptr;
    if (parent == store_.canonical_tip()) {
        confirmed = &confirmed_seq_;
        pre = &state_;
    } else {
        view = replay_to(parent);
        confirmed = &view.confirmed_seq;
        pre = &view.state;
    }

    // candidates ordered by pending fee total descending, then account id
    struct Candidate {
        uint64_t fee_total;
        Hash256 account;
    };
    std::vector<Candidate> candidates;
    for (const auto& [account, sub] : subchains_) {
        auto it = confirmed->find(account);
        uint64_t from = it == confirmed->end() ? 0 : it->second;
        if (sub.seq() <= from) continue;
        uint64_t fees = 0;
        for (uint64_t k = from + 1; k <= sub.seq(); ++k) fees += sub.txs[k - 1].fee_tip;
        candidates.push_back({fees, account});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.fee_total != b.fee_total) return a.fee_total > b.fee_total;
        return a.account < b.account;
    });

    const uint64_t capacity = cfg_.block_size_limit / ConfirmationRecord::kFrameSize;
    // the builder does not re-check its own mempool signatures
    Executor exec(group_, *pre, subchains_, *confirmed, height, parent, miner, false);

    // passes repeat until a fixpoint: a claim becomes confirmable once the
    // transfer it references lands earlier in the same block. An account
    // gets at most one record per block; its prefix freezes at placement, so
    // records always execute after everything they depend on.
    BlockBodies bodies;
    std::set<Hash256> placed;
    bool progress = true;
    while (progress && bodies.confirmations.size() < capacity) {
        progress = false;
        for (const Candidate& cand : candidates) {
            if (bodies.confirmations.size() >= capacity) break;
            if (placed.count(cand.account)) continue;
            uint64_t prefix = exec.max_valid_prefix(cand.account);
            if (prefix <= exec.confirmed_of(cand.account)) continue;
            ConfirmationRecord rec{cand.account,
                                   subchains_.at(cand.account).hash_at(group_, prefix), prefix};
            std::string err;
            if (!exec.apply_record(rec, &err)) throw ChainError("builder inconsistency: " + err);
            placed.insert(cand.account);
            bodies.confirmations.push_back(rec);
            progress = true;
        }
    }
    bodies.state_diff = exec.diff();
    return bodies;
}

WiderNode::BuiltBlock WiderNode::build_and_mine(const Hash256& parent,
                                                const Hash256& miner_account, uint64_t timestamp,
                                                uint64_t budget) const
{
    BlockBodies bodies = build_main_block(parent, miner_account);
    Bytes body = pow::frame_body(miner_account, bodies.serialize());
    pow::MineResult mined =
        pow::mine_block(store_, parent, pow::body_merkle_root(body), timestamp, budget);
    if (mined.status != pow::MineResult::Status::Found)
        throw ChainError("mining did not find a block within budget");
    return {mined.header, std::move(body)};
}

WiderNode::MineOutcome WiderNode::mine_and_submit(const Hash256& miner_account,
                                                  uint64_t timestamp, uint64_t budget)
{
    Hash256 parent = store_.canonical_tip();
    BlockBodies bodies = build_main_block(parent, miner_account);
    ExecResult exec = execute_confirmations(group_, state_, subchains_, confirmed_seq_,
                                            bodies.confirmations,
                                            store_.find(parent)->height + 1, parent,
                                            miner_account, false);

    Bytes body = pow::frame_body(miner_account, bodies.serialize());
    pow::MineResult mined =
        pow::mine_block(store_, parent, pow::body_merkle_root(body), timestamp, budget);
    if (mined.status != pow::MineResult::Status::Found)
        throw ChainError("mining did not find a block within budget");

    pow::AcceptResult res = accept_block(mined.header, body);
    return {res, mined.header.hash(), exec.confirmed_txs};
}

pow::AcceptResult WiderNode::accept_block(const pow::BlockHeader& header, const Bytes& body)
{
    pow::AcceptResult res = store_.accept(header, body);
    if (!res.accepted()) return res;

    if (res.kind == pow::AcceptResult::Kind::ExtendedCanonical) {
        pow::FramedBody framed = pow::unframe_body(body);
        if (framed.identity.size() != 32) throw ChainError("miner identity must be 32 bytes");
        Hash256 miner;
        std::copy(framed.identity.begin(), framed.identity.end(), miner.begin());
        BlockBodies bodies = BlockBodies::parse(framed.payload);
        if (bodies.body1_bytes() > cfg_.block_size_limit)
            throw ChainError("body1 exceeds the block size limit");
        uint64_t height = store_.find(header.hash())->height;
        apply_bodies(group_, state_, confirmed_seq_, confirm_height_, subchains_, height,
                     header.prev_hash, header.hash(), miner, bodies, ApplyMode::ReExecute);
    } else if (res.kind == pow::AcceptResult::Kind::Reorg) {
        adopt_canonical();
    }
    return res;
}

void WiderNode::apply_bodies(const Group& group, GlobalState& state,
                             std::map<Hash256, uint64_t>& confirmed_seq,
                             std::map<Hash256, uint64_t>& confirm_height,
                             const SubchainRegistry& subchains, uint64_t height,
                             const Hash256& parent_hash, const Hash256& block_hash,
                             const Hash256& miner, const BlockBodies& bodies, ApplyMode mode,
                             bool verify_sigs)
{
    (void)block_hash;
    if (bodies.body1_bytes() == 0 && !bodies.state_diff.empty())
        throw ChainError("state diff without confirmations");

    if (mode == ApplyMode::ReExecute) {
        ExecResult exec = execute_confirmations(group, state, subchains, confirmed_seq,
                                                bodies.confirmations, height, parent_hash, miner,
                                                verify_sigs);
        if (exec.diff != bodies.state_diff) throw DiffMismatch();
    }
    for (const auto& [key, value] : bodies.state_diff) state.put(key, value);
    for (const auto& rec : bodies.confirmations) {
        uint64_t& cur = confirmed_seq[rec.account_id];
        const Subchain& sub = subchains.at(rec.account_id);
        for (uint64_t k = cur + 1; k <= rec.subchain_seq; ++k)
            confirm_height[sub.hash_at(group, k)] = height;
        cur = rec.subchain_seq;
    }
}

WiderNode::ChainView WiderNode::replay_to(const Hash256& tip) const
{
    ChainView view{GlobalState(cfg_.state_key_cap), {}, {}};
    for (const auto& [account, amount] : genesis_alloc_)
        view.state.put(GlobalState::balance_key(account, 0, Hash256{}), std::to_string(amount));

    std::vector<Hash256> chain = store_.chain_to(tip);
    for (size_t i = 1; i < chain.size(); ++i) {
        const pow::BlockRecord* rec = store_.find(chain[i]);
        pow::FramedBody framed = pow::unframe_body(rec->body);
        if (framed.identity.size() != 32) throw ChainError("miner identity must be 32 bytes");
        Hash256 miner;
        std::copy(framed.identity.begin(), framed.identity.end(), miner.begin());
        BlockBodies bodies = BlockBodies::parse(framed.payload);
        apply_bodies(group_, view.state, view.confirmed_seq, view.confirm_height, subchains_,
                     rec->height, rec->header.prev_hash, chain[i], miner, bodies,
                     ApplyMode::ReExecute);
    }
    return view;
}

void WiderNode::adopt_canonical()
{
    ChainView view = replay_to(store_.canonical_tip());
    state_ = std::move(view.state);
    confirmed_seq_ = std::move(view.confirmed_seq);
    confirm_height_ = std::move(view.confirm_height);
}

GlobalState WiderNode::replay_state() const { return replay_to(store_.canonical_tip()).state; }

} // namespace upw::wider
