// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_POW_CHAIN_HPP
#define UPW_POW_CHAIN_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <upw/pow/header.hpp>

namespace upw::pow {

struct DifficultyParams {
    uint32_t retarget_interval = 16;
    uint64_t target_spacing = 600;
    U256 initial_target = U256::from_compact(0x207fffff);

    void validate() const
    {
        if (retarget_interval < 1) throw std::invalid_argument("retarget_interval must be >= 1");
        if (target_spacing == 0) throw std::invalid_argument("target_spacing must be > 0");
    }
};

/// new_target = old_target * clamp(actual_span / expected_span, 1/4, 4),
/// capped at initial_target. history must hold exactly retarget_interval
/// headers with monotone non-decreasing timestamps.
U256 retarget(std::span<const BlockHeader> history, const DifficultyParams& params);

enum class RejectReason { BadPow, UnknownParent, DuplicateBlock, BadBody, BadTarget };

const char* reject_reason_name(RejectReason r);

struct AcceptResult {
    enum class Kind { ExtendedCanonical, NewFork, Reorg, Rejected };
    Kind kind;
    uint64_t reorg_depth = 0;            // canonical blocks abandoned, Reorg only
    RejectReason reason = RejectReason::BadPow; // Rejected only

    bool accepted() const { return kind != Kind::Rejected; }
};

struct BlockRecord {
    BlockHeader header;
    Bytes body;
    uint64_t height = 0;
};

/// Forest of headers with bodies, longest-chain fork choice, first-seen
/// tie-break. Single-writer: accept() mutates, everything else is const.
class ChainStore {
public:
    ChainStore(DifficultyParams params, uint64_t genesis_timestamp, Bytes genesis_body);

    AcceptResult accept(const BlockHeader& header, Bytes body);

    const BlockRecord* find(const Hash256& hash) const;
    bool contains(const Hash256& hash) const { return blocks_.count(hash) != 0; }

    const Hash256& genesis_hash() const { return genesis_; }
    const Hash256& canonical_tip() const { return canonical_; }
    uint64_t canonical_height() const { return blocks_.at(canonical_).height; }
    const std::set<Hash256>& tips() const { return tips_; }
    size_t size() const { return blocks_.size(); }
    const DifficultyParams& params() const { return params_; }

    /// Target the next child of `parent` must meet.
    uint32_t expected_bits(const Hash256& parent) const;

    /// Hashes from genesis to `tip`, genesis first.
    std::vector<Hash256> chain_to(const Hash256& tip) const;
    std::vector<Hash256> canonical_chain() const { return chain_to(canonical_); }

    /// Append-only block file plus a JSON manifest of tips.
    void save(const std::filesystem::path& dir) const;
    static ChainStore load(const std::filesystem::path& dir, DifficultyParams params);

private:
    Hash256 fork_ancestor(Hash256 a, Hash256 b) const;

    DifficultyParams params_;
    std::map<Hash256, BlockRecord> blocks_;
    std::vector<Hash256> insertion_order_;
    std::set<Hash256> tips_;
    Hash256 genesis_{};
    Hash256 canonical_{};
};

} // namespace upw::pow

#endif // UPW_POW_CHAIN_HPP
