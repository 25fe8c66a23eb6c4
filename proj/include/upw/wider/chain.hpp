// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_WIDER_CHAIN_HPP
#define UPW_WIDER_CHAIN_HPP

#include <upw/pow/chain.hpp>
#include <upw/pow/miner.hpp>
#include <upw/wider/state.hpp>
#include <upw/wider/tx.hpp>

namespace upw::wider {

struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DiffMismatch : ChainError {
    DiffMismatch() : ChainError("re-execution disagrees with the state diff body") {}
};

/// Main-chain entry fixing a subchain's latest head. 72 content bytes,
/// framed to 512 on the wire.
struct ConfirmationRecord {
    Hash256 account_id;
    Hash256 subchain_head;
    uint64_t subchain_seq = 0;

    static constexpr size_t kContentSize = 72;
    static constexpr size_t kFrameSize = 512;

    Bytes frame() const;
    static ConfirmationRecord unframe(std::span<const uint8_t> data);

    bool operator==(const ConfirmationRecord&) const = default;
};

using StateDiff = std::vector<std::pair<std::string, std::string>>;

/// The two bodies: confirmation records and the state diff they produce.
struct BlockBodies {
    std::vector<ConfirmationRecord> confirmations; // body1
    StateDiff state_diff;                          // body2

    Bytes serialize() const;
    static BlockBodies parse(std::span<const uint8_t> data);

    size_t body1_bytes() const { return confirmations.size() * ConfirmationRecord::kFrameSize; }
};

enum class SubmitResult {
    Accepted,
    BadSig,
    BadSeq,
    Overspend,
    DuplicateClaim,
    BadClaim,      // claim references a missing or unconfirmed transfer
    UnknownAccount,
};

const char* submit_result_name(SubmitResult r);

enum class ApplyMode { ReExecute, ApplyDiff };

/// Bernoulli(validate_ratio) draw from the node's seeded stream.
ApplyMode choose_apply_mode(double validate_ratio, DetRng& rng);

struct ChainConfig {
    pow::DifficultyParams pow_params;
    uint64_t block_size_limit = 1 << 20;
    uint64_t state_key_cap = 10'000'000;
    uint64_t genesis_timestamp = 1'000'000;
};

using SubchainRegistry = std::map<Hash256, Subchain>;

/// Executes confirmation records on top of `pre`, producing the state diff.
/// State keys bind to (height, parent block hash): the diff is committed in
/// the header, so it cannot contain the block's own hash.
struct ExecResult {
    StateDiff diff;
    uint64_t confirmed_txs = 0;
};
ExecResult execute_confirmations(const Group& group, const GlobalState& pre,
                                 const SubchainRegistry& subchains,
                                 const std::map<Hash256, uint64_t>& confirmed_seq_in,
                                 const std::vector<ConfirmationRecord>& records,
                                 uint64_t height, const Hash256& parent_hash,
                                 const Hash256& miner, bool verify_sigs);

/// One Wider node: PoW main chain, the full subchain registry, and the
/// latest global state at the canonical tip.
class WiderNode {
public:
    WiderNode(const Group& group, ChainConfig cfg,
              const std::vector<std::pair<crypto::Element, uint64_t>>& genesis_alloc);

    void register_account(const crypto::Element& pk);
    bool known_account(const Hash256& id) const { return subchains_.count(id) != 0; }

    SubmitResult submit_tx(const SubTx& tx);

    /// Fee-ordered confirmable records for a child of `parent`, sized to the
    /// block limit, with the state diff they produce. Fees credit `miner`.
    BlockBodies build_main_block(const Hash256& parent, const Hash256& miner = Hash256{}) const;

    struct BuiltBlock {
        pow::BlockHeader header;
        Bytes body;
    };
    /// Build on any known parent and mine; does not touch the store.
    BuiltBlock build_and_mine(const Hash256& parent, const Hash256& miner_account,
                              uint64_t timestamp, uint64_t budget = 1ull << 32) const;

    struct MineOutcome {
        pow::AcceptResult accept;
        Hash256 block_hash{};
        uint64_t confirmed_txs = 0;
    };
    /// build + mine + accept + apply on the canonical tip.
    MineOutcome mine_and_submit(const Hash256& miner_account, uint64_t timestamp,
                                uint64_t budget = 1ull << 32);

    /// Accept an externally mined block. Extending the canonical tip applies
    /// incrementally; an overtaking fork rebuilds the state from genesis.
    pow::AcceptResult accept_block(const pow::BlockHeader& header, const Bytes& body);

    const Group& group() const { return group_; }
    const ChainConfig& config() const { return cfg_; }
    const pow::ChainStore& store() const { return store_; }
    const GlobalState& state() const { return state_; }
    const SubchainRegistry& subchains() const { return subchains_; }
    const Subchain& subchain(const Hash256& account) const { return subchains_.at(account); }

    uint64_t confirmed_seq(const Hash256& account) const;
    std::optional<uint64_t> confirm_height_of(const Hash256& txid) const;
    uint64_t balance(const Hash256& account) const { return state_.balance_of(account); }
    uint64_t spendable(const Hash256& account) const;
    const SubTx* find_tx(const Hash256& txid) const;

    /// Independent from-genesis replay of the canonical chain.
    GlobalState replay_state() const;

    /// Functional two-body application for multi-node experiments. Throws
    /// DiffMismatch when re-execution disagrees with body2.
    static void apply_bodies(const Group& group, GlobalState& state,
                             std::map<Hash256, uint64_t>& confirmed_seq,
                             std::map<Hash256, uint64_t>& confirm_height,
                             const SubchainRegistry& subchains, uint64_t height,
                             const Hash256& parent_hash, const Hash256& block_hash,
                             const Hash256& miner, const BlockBodies& bodies, ApplyMode mode,
                             bool verify_sigs = false);

private:
    struct ChainView {
        GlobalState state;
        std::map<Hash256, uint64_t> confirmed_seq;
        std::map<Hash256, uint64_t> confirm_height;
    };
    ChainView replay_to(const Hash256& tip) const;
    void adopt_canonical();
    void write_genesis_state();

    const Group& group_;
    ChainConfig cfg_;
    pow::ChainStore store_;
    SubchainRegistry subchains_;
    std::map<Hash256, std::pair<Hash256, uint64_t>> tx_index_; // txid -> (account, seq)
    GlobalState state_;
    std::map<Hash256, uint64_t> confirmed_seq_;
    std::map<Hash256, uint64_t> confirm_height_;
    std::vector<std::pair<Hash256, uint64_t>> genesis_alloc_; // (account, amount)
};

} // namespace upw::wider

#endif // UPW_WIDER_CHAIN_HPP
