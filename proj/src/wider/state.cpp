// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/wider/state.hpp>

#include <upw/util/hex.hpp>

namespace upw::wider {

std::string GlobalState::native_contract() { return "0x" + std::string(64, '0'); }

std::string GlobalState::reversed_height(uint64_t height)
{
    constexpr uint64_t kMax = 9'999'999'999'999'999ULL; // 10^16 - 1
    if (height > kMax) throw StateError("height beyond the reversed-height range");
    uint64_t rev = kMax - height;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llu", static_cast<unsigned long long>(rev));
    return std::string(buf, 16);
}

std::string GlobalState::balance_prefix(const Hash256& owner)
{
    return std::string(kPrefix) + "/" + native_contract() + "/balances/" + to_hex(owner) + "/";
}

std::string GlobalState::balance_key(const Hash256& owner, uint64_t height,
                                     const Hash256& block_hash)
{
    return balance_prefix(owner) + reversed_height(height) + "/" + to_hex(block_hash);
}

std::string GlobalState::claim_prefix(const Hash256& ref_tx)
{
    return std::string(kPrefix) + "/" + native_contract() + "/claimed/" + to_hex(ref_tx) + "/";
}

std::string GlobalState::claim_key(const Hash256& ref_tx, uint64_t height,
                                   const Hash256& block_hash)
{
    return claim_prefix(ref_tx) + reversed_height(height) + "/" + to_hex(block_hash);
}

void GlobalState::put(const std::string& key, const std::string& value)
{
    auto it = kv_.find(key);
    if (it != kv_.end()) {
        it->second = value;
        return;
    }
    if (kv_.size() >= key_cap_) throw StateError("global state key cap reached");
    kv_.emplace(key, value);
}

std::optional<std::pair<std::string, std::string>>
GlobalState::first_under(const std::string& prefix) const
{
    auto it = kv_.lower_bound(prefix);
    if (it == kv_.end() || it->first.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    return std::make_pair(it->first, it->second);
}

uint64_t GlobalState::balance_of(const Hash256& owner) const
{
    auto hit = first_under(balance_prefix(owner));
    if (!hit) return 0;
    return std::stoull(hit->second);
}

bool GlobalState::claimed(const Hash256& ref_tx) const
{
    return first_under(claim_prefix(ref_tx)).has_value();
}

Hash256 GlobalState::head() const
{
    Sha256 h;
    for (const auto& [k, v] : kv_) {
        h.update(k);
        h.update(std::string(1, '\0'));
        h.update(v);
        h.update(std::string(1, '\n'));
    }
    return h.finalize();
}

std::string GlobalState::snapshot_text() const
{
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

size_t GlobalState::byte_size() const
{
    size_t n = 0;
    for (const auto& [k, v] : kv_) n += k.size() + v.size() + 2;
    return n;
}

} // namespace upw::wider
