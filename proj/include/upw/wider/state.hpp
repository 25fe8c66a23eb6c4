// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_WIDER_STATE_HPP
#define UPW_WIDER_STATE_HPP

#include <map>
#include <optional>
#include <string>

#include <upw/util/sha256.hpp>

namespace upw::wider {

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat ordered key-value store replacing the state MPT. Keys are
///   prefix/contract/variable/owner/reversed_height/block_hash
/// with the height reversed so a prefix scan meets the newest version first:
/// a point lookup is "first key under the prefix".
class GlobalState {
public:
    explicit GlobalState(uint64_t key_cap = 10'000'000) : key_cap_(key_cap) {}

    static constexpr const char* kPrefix = "global_state";
    /// The native balance book lives at contract address 0.
    static std::string native_contract();
    /// (10^16 - 1) - height, rendered to 16 fixed decimal digits.
    static std::string reversed_height(uint64_t height);

    static std::string balance_key(const Hash256& owner, uint64_t height,
                                   const Hash256& block_hash);
    static std::string balance_prefix(const Hash256& owner);
    static std::string claim_key(const Hash256& ref_tx, uint64_t height,
                                 const Hash256& block_hash);
    static std::string claim_prefix(const Hash256& ref_tx);

    /// Inserts beyond the key cap are rejected (StateError).
    void put(const std::string& key, const std::string& value);

    std::optional<std::pair<std::string, std::string>>
    first_under(const std::string& prefix) const;

    uint64_t balance_of(const Hash256& owner) const;
    bool claimed(const Hash256& ref_tx) const;

    size_t key_count() const { return kv_.size(); }
    uint64_t key_cap() const { return key_cap_; }

    /// Digest over the full ordered content.
    Hash256 head() const;

    /// Sorted "key = value" lines, for golden snapshots.
    std::string snapshot_text() const;

    size_t byte_size() const;

    bool operator==(const GlobalState& other) const { return kv_ == other.kv_; }

private:
    std::map<std::string, std::string> kv_;
    uint64_t key_cap_;
};

} // namespace upw::wider

#endif // UPW_WIDER_STATE_HPP
